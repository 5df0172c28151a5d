import pytest

from multifix import (
    LambdaFamily,
    ParseError,
    ProductKind,
    coupled_preset,
)
from multifix.problemfile import load_problem, make_family_operator, parse_problem

FINITE_CHAIN = """\
# three-point chain with the absolute-difference metric
points: 0 1 2
dist:
0 1 2
1 0 1
2 1 0
order:
0 <= 1
1 <= 2
lambda: coupled
F:
0,0 -> 1
0,1 -> 1
0,2 -> 1
1,0 -> 1
1,1 -> 1
1,2 -> 1
2,0 -> 1
2,1 -> 1
2,2 -> 1
L: 1
start: 0 2
tol: 1e-9
"""

CONTINUOUS = """\
space: box -10 10
complete: yes
family: linear-coupled 0.25 1
L: 1
delta linear 1.0
start: 0 0
tol: 1e-9
max_iter: 500
rounds: 50
metric: sum
"""


class TestFiniteParsing:
    def test_full_finite_problem(self):
        pf = parse_problem(FINITE_CHAIN)
        assert pf.space.is_finite and len(pf.space) == 3
        assert pf.space.dist("0", "2") == 2
        assert pf.order.leq("0", "2")  # transitive closure of the listed pairs
        assert pf.family == coupled_preset()
        assert pf.operator("2", "0") == "1"
        assert pf.lset.members == frozenset({1})
        assert pf.start == ("0", "2")
        assert pf.tol == 1e-9

    def test_comments_and_blank_lines_ignored(self):
        noisy = FINITE_CHAIN.replace("order:", "\n# noise\norder:  # trailing\n")
        pf = parse_problem(noisy)
        assert pf.order.leq("0", "1")

    def test_explicit_lambda_rows(self):
        text = FINITE_CHAIN.replace("lambda: coupled", "lambda:\n1 2\n2 1")
        pf = parse_problem(text)
        assert pf.family == LambdaFamily(2, ((1, 2), (2, 1)))

    def test_load_from_disk(self, tmp_path):
        path = tmp_path / "chain.prob"
        path.write_text(FINITE_CHAIN)
        pf = load_problem(str(path))
        assert pf.space is not None and pf.operator is not None


class TestContinuousParsing:
    def test_full_continuous_problem(self):
        pf = parse_problem(CONTINUOUS)
        assert not pf.space.is_finite
        assert pf.space.contains(3.5) and not pf.space.contains(11.0)
        assert pf.order.leq(-1.0, 2.0)
        assert pf.operator(4.0, 0.0) == 0.25 * 4.0 + 1
        assert pf.family == coupled_preset()
        assert pf.delta(2.0) == 2.0
        assert pf.start == (0.0, 0.0)
        assert pf.max_iter == 500 and pf.rounds == 50
        assert pf.metric is ProductKind.SUM

    def test_delta_const(self):
        pf = parse_problem(CONTINUOUS.replace("delta linear 1.0", "delta const 0.5"))
        assert pf.delta(100.0) == 0.5

    def test_tripled_family_defaults_lambda(self):
        pf = parse_problem("space: box 0 1\nfamily: linear-tripled 0.125 1\n")
        assert pf.family.m == 3
        assert pf.operator(1.0, 0.0, 1.0) == 0.125 * 2 + 1


class TestParseErrors:
    def test_bad_distance_row_carries_line_number(self):
        with pytest.raises(ParseError, match="line 4") as err:
            parse_problem("points: a b\ndist:\n0 1\nx 0\n")
        assert err.value.line == 4

    def test_wrong_row_width(self):
        with pytest.raises(ParseError, match="expected 2"):
            parse_problem("points: a b\ndist:\n0 1 2\n1 0 1\n")

    def test_points_without_dist(self):
        with pytest.raises(ParseError, match="dist"):
            parse_problem("points: a b\n")

    def test_dist_before_points(self):
        with pytest.raises(ParseError, match="follow points"):
            parse_problem("dist:\n0 1\n1 0\n")

    def test_unknown_block(self):
        with pytest.raises(ParseError, match="unknown block"):
            parse_problem("bogus: 1\n")

    def test_unknown_lambda_preset(self):
        with pytest.raises(ParseError, match="preset"):
            parse_problem("lambda: quadrupled\n")

    def test_bad_order_line(self):
        with pytest.raises(ParseError, match="a <= b"):
            parse_problem("points: a b\ndist:\n0 1\n1 0\norder:\na < b\n")

    def test_l_without_lambda(self):
        with pytest.raises(ParseError, match="lambda"):
            parse_problem("L: 1\n")

    def test_operator_lambda_arity_mismatch(self):
        text = FINITE_CHAIN.replace("lambda: coupled", "lambda: tripled")
        with pytest.raises(ParseError, match="arity"):
            parse_problem(text)

    def test_bad_metric(self):
        with pytest.raises(ParseError, match="sup or sum"):
            parse_problem("metric: max\n")

    def test_incomplete_operator_table(self):
        text = FINITE_CHAIN.replace("0,1 -> 1\n", "")
        with pytest.raises(ParseError):
            parse_problem(text)

    def test_require_names_missing_block(self):
        pf = parse_problem("space: box 0 1\n")
        with pytest.raises(ParseError, match="operator"):
            pf.require("operator")


class TestFamilyCatalog:
    def test_linear_coupled(self):
        F, m = make_family_operator("linear-coupled", [0.5, 2.0])
        assert m == 2 and F(3.0, 1.0) == 0.5 * 2 + 2.0

    def test_linear_tripled(self):
        F, m = make_family_operator("linear-tripled", [1.0, 0.0])
        assert m == 3 and F(1.0, 2.0, 3.0) == 1.0 - 4.0 + 3.0

    def test_affine_coupled(self):
        F, m = make_family_operator("affine-coupled", [0.0, 0.5, 0.25])
        assert m == 2 and F(9.0, 1.0) == 0.75

    def test_unknown_family(self):
        with pytest.raises(ValueError, match="unknown"):
            make_family_operator("mystery", [])

    def test_wrong_parameter_count(self):
        with pytest.raises(ValueError, match="alpha beta"):
            make_family_operator("linear-coupled", [1.0])

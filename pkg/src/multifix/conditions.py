"""Executable hypothesis checks: the four symmetric-contraction condition
sets, the Meir-Keeler space and operator conditions, and their shared
order-theoretic clauses.

Finite instances are checked exhaustively; continuous instances are checked
on seeded samples and report a clearly labeled "sampled-pass" verdict.
"""

from __future__ import annotations

import bisect
import random
from dataclasses import dataclass, field
from typing import Any, Callable, Optional, Sequence

from .errors import UnsupportedInstanceError
from .operators import LambdaFamily, MultiOperator, apply_lambda_f, surjectivity_report
from .orders import LSet, OrderRelation, compare_L
from .product import ProductKind, product_distance, product_points
from .spaces import DistanceSpace

Point = Any

# Margin for strict inequalities on computed (non-table) reals: rounding must
# not manufacture a pass.
STRICT_MARGIN = 1e-12


def _strictly_less(a: float, b: float, table_backed: bool) -> bool:
    return a < b if table_backed else a < b - STRICT_MARGIN


@dataclass(frozen=True)
class MeirKeelerModulus:
    """Evaluable modulus delta: (0, inf) -> (0, inf)."""

    func: Callable[[float], float]
    label: str = "custom"

    def __call__(self, r: float) -> float:
        if r <= 0:
            raise ValueError("modulus is only defined for positive r")
        value = self.func(r)
        if value <= 0:
            raise ValueError(f"modulus must be positive, got delta({r}) = {value}")
        return value

    @classmethod
    def linear(cls, c: float) -> "MeirKeelerModulus":
        if c <= 0:
            raise ValueError("linear modulus needs a positive coefficient")
        return cls(lambda r: c * r, f"linear {c}")

    @classmethod
    def const(cls, c: float) -> "MeirKeelerModulus":
        if c <= 0:
            raise ValueError("constant modulus needs a positive value")
        return cls(lambda r: c, f"const {c}")


@dataclass
class Clause:
    name: str
    ok: bool
    witness: Optional[tuple] = None
    note: str = ""


@dataclass
class ConditionReport:
    """Clause-by-clause verdict for one named condition set."""

    condition: str
    verdict: str  # "pass" | "fail" | "sampled-pass"
    clauses: list[Clause] = field(default_factory=list)
    counterexample: Optional[tuple] = None
    seed: Optional[int] = None
    samples: Optional[int] = None

    def __post_init__(self):
        if self.verdict == "fail" and self.counterexample is None:
            for cl in self.clauses:
                if not cl.ok:
                    self.counterexample = cl.witness
                    break

    @property
    def passed(self) -> bool:
        return self.verdict in ("pass", "sampled-pass")

    def failing_clause(self) -> Optional[Clause]:
        for cl in self.clauses:
            if not cl.ok:
                return cl
        return None


@dataclass
class LatticeReport:
    is_lattice: bool
    join: dict
    meet: dict
    counterexample: Optional[tuple] = None


def _bound(
    order: OrderRelation, a: Point, b: Point, upper: bool
) -> tuple[Optional[Point], bool]:
    """(least upper / greatest lower) bound of a pair, plus mere existence."""
    points = order.points
    if upper:
        bounds = [c for c in points if order.leq(a, c) and order.leq(b, c)]
    else:
        bounds = [c for c in points if order.leq(c, a) and order.leq(c, b)]
    extremal = None
    for c in bounds:
        if all(
            (order.leq(c, other) if upper else order.leq(other, c))
            for other in bounds
        ):
            extremal = c
            break
    return extremal, bool(bounds)


def check_lattice(order: OrderRelation) -> LatticeReport:
    """Every pair must have a unique join and meet; tables are returned for
    reuse by downstream checks."""
    if not order.is_finite:
        raise UnsupportedInstanceError("lattice check needs a finite carrier")
    join: dict = {}
    meet: dict = {}
    for a in order.points:
        for b in order.points:
            j, _ = _bound(order, a, b, upper=True)
            m, _ = _bound(order, a, b, upper=False)
            if j is None or m is None:
                kind = "join" if j is None else "meet"
                return LatticeReport(False, join, meet, (a, b, kind))
            join[(a, b)] = j
            meet[(a, b)] = m
    return LatticeReport(True, join, meet)


def check_bounds_exist(order: OrderRelation) -> ConditionReport:
    """Every pair has some upper and some lower bound (weaker than lattice)."""
    if not order.is_finite:
        raise UnsupportedInstanceError("bounds check needs a finite carrier")
    for a in order.points:
        for b in order.points:
            _, has_up = _bound(order, a, b, upper=True)
            _, has_lo = _bound(order, a, b, upper=False)
            if not (has_up and has_lo):
                kind = "upper" if not has_up else "lower"
                clause = Clause("pair bounds", False, (a, b, kind))
                return ConditionReport("bounds", "fail", [clause])
    return ConditionReport("bounds", "pass", [Clause("pair bounds", True)])


def check_order_distance_compat(
    space: DistanceSpace, order: OrderRelation
) -> ConditionReport:
    """On every chain x <= y <= z the symmetric sum to the middle point must
    not exceed the symmetric sum across the whole chain."""
    if not space.is_finite:
        raise UnsupportedInstanceError("compatibility check needs a finite carrier")
    for x in space.points:
        for y in space.points:
            if not order.leq(x, y):
                continue
            for z in space.points:
                if not order.leq(y, z):
                    continue
                near = space.dist(x, y) + space.dist(y, x)
                far = space.dist(x, z) + space.dist(z, x)
                if near > far + (0.0 if space.table_backed else STRICT_MARGIN):
                    clause = Clause("order-distance compatibility", False, (x, y, z))
                    return ConditionReport("compat", "fail", [clause])
    return ConditionReport(
        "compat", "pass", [Clause("order-distance compatibility", True)]
    )


def _comparable_product_pairs(
    space: DistanceSpace, order: OrderRelation, lset: LSet, include_equal: bool = False
) -> list[tuple[tuple, tuple]]:
    pts = product_points(space, lset.m)
    pairs = []
    for x in pts:
        for y in pts:
            if x == y and not include_equal:
                continue
            if compare_L(order, lset, x, y):
                pairs.append((x, y))
    return pairs


def check_omega(
    space: DistanceSpace,
    order: OrderRelation,
    F: MultiOperator,
    family: LambdaFamily,
    lset: LSet,
    variant: int,
) -> ConditionReport:
    """Exhaustive check of one of the four symmetric-contraction condition
    sets on a finite instance.

    Variants 1/2 measure the contraction in the sup product distance with an
    isotone/antitone image-order clause; variants 3/4 do the same in the sum
    distance and additionally require the index-family surjectivity clause.
    """
    if variant not in (1, 2, 3, 4):
        raise ValueError("variant must be 1..4")
    name = f"omega{variant}"
    clauses: list[Clause] = []

    lat = check_lattice(order)
    clauses.append(Clause("lattice", lat.is_lattice, lat.counterexample))
    if not lat.is_lattice:
        return ConditionReport(name, "fail", clauses)

    compat = check_order_distance_compat(space, order)
    clauses.append(compat.clauses[0])
    if compat.verdict == "fail":
        return ConditionReport(name, "fail", clauses)

    if variant in (3, 4):
        surj = surjectivity_report(family)
        ok = surj.all_rows_surjective or surj.union_of_images_full
        note = (
            "per-row surjectivity"
            if surj.all_rows_surjective
            else "union of row images covers 1..m"
            if surj.union_of_images_full
            else ""
        )
        clauses.append(
            Clause("lambda surjectivity", ok, None if ok else tuple(surj.rows_surjective), note)
        )
        if not ok:
            return ConditionReport(name, "fail", clauses)

    kind = ProductKind.SUP if variant in (1, 2) else ProductKind.SUM
    rho = product_distance(space, kind)
    isotone = variant in (1, 3)
    table = space.table_backed and kind is ProductKind.SUP

    images = {x: apply_lambda_f(F, family, x) for x in product_points(space, lset.m)}
    for x, y in _comparable_product_pairs(space, order, lset):
        fx, fy = images[x], images[y]
        ordered = (
            compare_L(order, lset, fx, fy)
            if isotone
            else compare_L(order, lset, fy, fx)
        )
        if not ordered:
            clauses.append(Clause("image order", False, (x, y)))
            return ConditionReport(name, "fail", clauses)
        lhs = rho(fx, fy) + rho(fy, fx)
        rhs = rho(x, y) + rho(y, x)
        if not _strictly_less(lhs, rhs, table):
            clauses.append(Clause("strict contraction", False, (x, y)))
            return ConditionReport(name, "fail", clauses)
    clauses.append(Clause("image order", True))
    clauses.append(Clause("strict contraction", True))
    return ConditionReport(name, "pass", clauses)


def _binding_r(r_grid: Sequence[float], delta: MeirKeelerModulus):
    """Return a lookup: rho -> min {r in grid : rho < r + delta(r)} or None.

    The implication "for all r with rho < r + delta(r): image < r" binds only
    at the smallest premise-satisfying r, so one lookup per pair suffices.
    """
    entries = sorted(((r + delta(r), r) for r in r_grid))
    thresholds = [t for t, _ in entries]
    suffix_min = [0.0] * len(entries)
    running = float("inf")
    for i in range(len(entries) - 1, -1, -1):
        running = min(running, entries[i][1])
        suffix_min[i] = running

    def lookup(rho: float) -> Optional[float]:
        i = bisect.bisect_right(thresholds, rho)
        return suffix_min[i] if i < len(entries) else None

    return lookup


def check_mk_space(
    space: DistanceSpace,
    order: OrderRelation,
    delta: MeirKeelerModulus,
    r_grid: Sequence[float],
) -> ConditionReport:
    """Literal form of the Meir-Keeler monotone condition as printed: for
    comparable x <= y and r in the grid, d(x,y) < r + delta(r) forces
    d(x,y) < r.  This constrains the space itself; the operator-image form
    lives in :func:`check_mk_operator`."""
    if not space.is_finite:
        raise UnsupportedInstanceError("literal MK check needs a finite carrier")
    if not r_grid:
        raise ValueError("r_grid must be nonempty")
    lookup = _binding_r(r_grid, delta)
    for x in space.points:
        for y in space.points:
            if not order.leq(x, y):
                continue
            d = space.dist(x, y)
            r = lookup(d)
            if r is not None and not _strictly_less(d, r, space.table_backed):
                clause = Clause("MK space condition", False, (x, y, r))
                return ConditionReport("mk-space", "fail", [clause])
    return ConditionReport("mk-space", "pass", [Clause("MK space condition", True)])


def sample_comparable_pairs(
    lo: float,
    hi: float,
    lset: LSet,
    n: int,
    seed: int,
    max_step: Optional[float] = None,
) -> list[tuple[tuple, tuple]]:
    """Seeded sample of product-point pairs over [lo, hi]^m that are
    comparable under the twisted order (forward on L, backward elsewhere)."""
    rng = random.Random(seed)
    max_step = (hi - lo) / 4 if max_step is None else max_step
    pairs = []
    for _ in range(n):
        x = []
        y = []
        for i in range(1, lset.m + 1):
            a = rng.uniform(lo, hi)
            step = rng.uniform(0, max_step)
            if i in lset.members:
                b = min(a + step, hi)
            else:
                b = max(a - step, lo)
            x.append(a)
            y.append(b)
        pairs.append((tuple(x), tuple(y)))
    return pairs


def check_mk_operator(
    space: DistanceSpace,
    order: OrderRelation,
    F: MultiOperator,
    family: LambdaFamily,
    lset: LSet,
    delta: MeirKeelerModulus,
    kind: ProductKind,
    pairs: Optional[Sequence[tuple]] = None,
    r_grid: Optional[Sequence[float]] = None,
    seed: Optional[int] = None,
) -> ConditionReport:
    """Operator-image Meir-Keeler condition: for comparable pairs and every
    grid r with rho(x, y) < r + delta(r), the images satisfy
    rho(lambdaF(x), lambdaF(y)) < r.

    Finite instances with no explicit sample are exhausted and may report
    "pass"; supplied samples yield at most "sampled-pass".
    """
    exhaustive = pairs is None
    if exhaustive:
        pairs = _comparable_product_pairs(space, order, lset, include_equal=True)
    if not pairs:
        raise ValueError("no comparable pairs to check")

    rho = product_distance(space, kind)
    evaluated = [
        (x, y, rho(x, y), rho(apply_lambda_f(F, family, x), apply_lambda_f(F, family, y)))
        for x, y in pairs
    ]
    if r_grid is None:
        r_grid = sorted({d for _, _, d, _ in evaluated if d > 0})
        if not r_grid:
            r_grid = [1.0]
    lookup = _binding_r(r_grid, delta)
    table = space.table_backed and kind is ProductKind.SUP

    for x, y, d, d_img in evaluated:
        r = lookup(d)
        if r is not None and not _strictly_less(d_img, r, table):
            clause = Clause("MK operator condition", False, (x, y, r))
            return ConditionReport(
                "mk-operator", "fail", [clause], seed=seed, samples=len(pairs)
            )
    verdict = "pass" if exhaustive else "sampled-pass"
    return ConditionReport(
        "mk-operator",
        verdict,
        [Clause("MK operator condition", True)],
        seed=seed,
        samples=len(pairs),
    )


def check_mk(
    space: DistanceSpace,
    order: OrderRelation,
    F: MultiOperator,
    family: LambdaFamily,
    lset: LSet,
    delta: MeirKeelerModulus,
    variant: int,
    r_grid: Optional[Sequence[float]] = None,
) -> ConditionReport:
    """Composite MK condition set: pair bounds, the literal space condition,
    and the isotone (variant 1) or antitone (variant 2) image-order clause."""
    if variant not in (1, 2):
        raise ValueError("variant must be 1 or 2")
    name = f"mk{variant}"
    clauses: list[Clause] = []

    bounds = check_bounds_exist(order)
    clauses.append(bounds.clauses[0])
    if bounds.verdict == "fail":
        return ConditionReport(name, "fail", clauses)

    if r_grid is None:
        r_grid = sorted(
            {
                space.dist(x, y)
                for x in space.points
                for y in space.points
                if space.dist(x, y) > 0
            }
        ) or [1.0]
    mk_space = check_mk_space(space, order, delta, r_grid)
    clauses.append(mk_space.clauses[0])
    if mk_space.verdict == "fail":
        return ConditionReport(name, "fail", clauses)

    isotone = variant == 1
    images = {x: apply_lambda_f(F, family, x) for x in product_points(space, lset.m)}
    for x, y in _comparable_product_pairs(space, order, lset, include_equal=True):
        fx, fy = images[x], images[y]
        ordered = (
            compare_L(order, lset, fx, fy)
            if isotone
            else compare_L(order, lset, fy, fx)
        )
        if not ordered:
            clauses.append(Clause("image order", False, (x, y)))
            return ConditionReport(name, "fail", clauses)
    clauses.append(Clause("image order", True))
    return ConditionReport(name, "pass", clauses)

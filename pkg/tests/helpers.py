"""Shared instance generators for the test suite.

All distances are integer-valued floats so sums and maxima stay exact in
double precision; classification of generated spaces and their products is
then free of rounding artifacts.
"""

from __future__ import annotations

import random

from multifix import DistanceSpace, MultiOperator, OrderRelation, chain_order


def shortest_path_closure(W: list[list[float]]) -> list[list[float]]:
    n = len(W)
    D = [row[:] for row in W]
    for k in range(n):
        for i in range(n):
            for j in range(n):
                if D[i][k] + D[k][j] < D[i][j]:
                    D[i][j] = D[i][k] + D[k][j]
    for i in range(n):
        D[i][i] = 0.0
    return D


def random_metric(rng: random.Random, n: int) -> DistanceSpace:
    W = [[0.0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            W[i][j] = W[j][i] = float(rng.randint(1, 32))
    return DistanceSpace.from_matrix(range(n), shortest_path_closure(W))


def random_quasimetric(rng: random.Random, n: int) -> DistanceSpace:
    W = [[0.0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i != j:
                W[i][j] = float(rng.randint(1, 32))
    return DistanceSpace.from_matrix(range(n), shortest_path_closure(W))


def random_symmetric(rng: random.Random, n: int) -> DistanceSpace:
    # symmetric positive entries; the triangle inequality may well fail
    M = [[0.0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            M[i][j] = M[j][i] = float(rng.randint(1, 64))
    return DistanceSpace.from_matrix(range(n), M)


def random_s_distance(rng: random.Random, n: int) -> DistanceSpace:
    # squared metric: relaxed triangle inequality with witness at most 2
    base = random_metric(rng, n).matrix()
    return DistanceSpace.from_matrix(range(n), (base ** 2).tolist())


GENERATORS = {
    "symmetric": random_symmetric,
    "quasimetric": random_quasimetric,
    "metric": random_metric,
    "s_distance": random_s_distance,
}


def int_chain(n: int, scale: float = 1.0) -> tuple[DistanceSpace, OrderRelation]:
    """Chain 0 < 1 < ... < n-1 with the scaled absolute-value distance."""
    labels = list(range(n))
    matrix = [[abs(i - j) * scale for j in labels] for i in labels]
    return DistanceSpace.from_matrix(labels, matrix), chain_order(labels)


def table_operator(space: DistanceSpace, m: int, func) -> MultiOperator:
    """Materialize a callable into a complete lookup table over the carrier."""
    import itertools

    table = {
        key: func(*key) for key in itertools.product(space.points, repeat=m)
    }
    return MultiOperator.from_table(m, table, space.points)


def random_table_operator(
    rng: random.Random, space: DistanceSpace, m: int
) -> MultiOperator:
    import itertools

    table = {
        key: rng.choice(space.points)
        for key in itertools.product(space.points, repeat=m)
    }
    return MultiOperator.from_table(m, table, space.points)

"""Partial orders on carriers and the L-twisted order on product tuples."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterable, Optional, Sequence

from .errors import UnsupportedInstanceError

Point = Any


class OrderRelation:
    """Decidable partial order: pair table (finite) or numeric <= (continuous).

    Finite relations are built from generating pairs; the reflexive-transitive
    closure is taken and antisymmetry of the closed relation is validated, so
    callers may supply covering pairs only.
    """

    def __init__(self, points: Optional[Sequence[Point]], pairs: Optional[frozenset]):
        self.points = tuple(points) if points is not None else None
        self._pairs = pairs

    @classmethod
    def from_pairs(
        cls, points: Sequence[Point], pairs: Iterable[tuple[Point, Point]]
    ) -> "OrderRelation":
        points = tuple(points)
        point_set = set(points)
        rel = {(p, p) for p in points}
        for a, b in pairs:
            for p in (a, b):
                if p not in point_set:
                    raise ValueError(f"order references unknown point {p!r}")
            rel.add((a, b))
        # transitive closure (Warshall over the pair set)
        changed = True
        while changed:
            changed = False
            for a, b in list(rel):
                for c in points:
                    if (b, c) in rel and (a, c) not in rel:
                        rel.add((a, c))
                        changed = True
        for a, b in rel:
            if a != b and (b, a) in rel:
                raise ValueError(f"relation is not antisymmetric: {a!r} ~ {b!r}")
        return cls(points, frozenset(rel))

    @classmethod
    def numeric(cls) -> "OrderRelation":
        """Componentwise numeric order on reals / real tuples."""
        return cls(None, None)

    @property
    def is_finite(self) -> bool:
        return self._pairs is not None

    def leq(self, x: Point, y: Point) -> bool:
        if self._pairs is not None:
            return (x, y) in self._pairs
        if isinstance(x, (tuple, list)):
            return all(a <= b for a, b in zip(x, y))
        return x <= y

    def comparable(self, x: Point, y: Point) -> bool:
        return self.leq(x, y) or self.leq(y, x)

    def pairs(self) -> frozenset:
        if self._pairs is None:
            raise UnsupportedInstanceError("numeric order has no finite pair table")
        return self._pairs


def chain_order(points: Sequence[Point]) -> OrderRelation:
    """Total order listing points from bottom to top."""
    pairs = [(points[i], points[i + 1]) for i in range(len(points) - 1)]
    return OrderRelation.from_pairs(points, pairs)


@dataclass(frozen=True)
class LSet:
    """Index subset L of {1..m} steering the twisted product order.

    Coordinates with index in L compare forward, the rest backward; the
    complement M yields the dual order.
    """

    m: int
    members: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("arity must be at least 1")
        if not set(self.members) <= set(range(1, self.m + 1)):
            raise ValueError(f"L must be a subset of 1..{self.m}")
        object.__setattr__(self, "members", frozenset(self.members))

    @classmethod
    def of(cls, m: int, *indices: int) -> "LSet":
        return cls(m, frozenset(indices))

    def complement(self) -> "LSet":
        return LSet(self.m, frozenset(range(1, self.m + 1)) - self.members)

    def __str__(self) -> str:
        inner = ",".join(str(i) for i in sorted(self.members))
        return "L={" + inner + "}"


def compare_L(order: OrderRelation, lset: LSet, x: Sequence, y: Sequence) -> bool:
    """Twisted order on tuples: forward on L coordinates, backward elsewhere."""
    if len(x) != lset.m or len(y) != lset.m:
        raise ValueError(f"tuple arity must be {lset.m}")
    for i in range(1, lset.m + 1):
        a, b = x[i - 1], y[i - 1]
        ok = order.leq(a, b) if i in lset.members else order.leq(b, a)
        if not ok:
            return False
    return True

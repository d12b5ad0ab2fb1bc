"""Flats of AG(n, F_q): cosets U + x of linear subspaces.

A :class:`Flat` is stored canonically as its direction (RREF subspace) and the
unique representative point that vanishes on the direction's pivot columns.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from .fieldlinalg import (
    Subspace,
    Vector,
    check_vector,
    decompose,
    enumerate_subspaces,
    full_space,
    span,
    subspace_intersection,
    subspace_sum,
    vadd,
    vscale,
    vsub,
    zero_subspace,
)


@dataclass(frozen=True)
class Flat:
    direction: Subspace
    point: Vector

    @property
    def q(self) -> int:
        return self.direction.q

    @property
    def n(self) -> int:
        return self.direction.n

    @property
    def dim(self) -> int:
        return self.direction.dim

    def __contains__(self, v) -> bool:
        return vsub(tuple(v), self.point, self.q) in self.direction

    def points(self) -> Iterator[Vector]:
        q = self.q
        for u in self.direction.vectors():
            yield vadd(self.point, u, q)

    def translate(self, t: Sequence[int]) -> "Flat":
        return flat_new(self.direction, vadd(self.point, tuple(t), self.q))

    def __repr__(self):
        rows = ",".join("".join(map(str, r)) for r in self.direction.basis)
        pt = "".join(map(str, self.point))
        return f"Flat(dim={self.dim}, [{rows}] + {pt})"


def flat_new(direction: Subspace, point: Sequence[int]) -> Flat:
    """The coset ``direction + point`` with its canonical representative."""
    point = check_vector(point, direction.q, direction.n)
    return Flat(direction, direction.reduce(point))


def point_flat(point: Sequence[int], q: int) -> Flat:
    point = tuple(point)
    return Flat(zero_subspace(len(point), q), check_vector(point, q))


def flat_from_points(points: Sequence[Sequence[int]], q: int) -> Flat:
    """Smallest flat containing the given points (their affine span)."""
    points = [tuple(p) for p in points]
    if not points:
        raise ValueError("need at least one point")
    base = points[0]
    direction = span([vsub(p, base, q) for p in points[1:]], q, len(base))
    return flat_new(direction, base)


def _check_same_space(f1: Flat, f2: Flat):
    if f1.q != f2.q or f1.n != f2.n:
        raise ValueError(f"flats live in different spaces: AG({f1.n},{f1.q}) vs AG({f2.n},{f2.q})")


def flat_intersection(f1: Flat, f2: Flat) -> Optional[Flat]:
    """F1 ∩ F2 as a flat, or None when the point sets are disjoint."""
    _check_same_space(f1, f2)
    q = f1.q
    split = decompose(vsub(f2.point, f1.point, q), f1.direction, f2.direction)
    if split is None:
        return None
    # p2 - p1 = x + y with x in D1, y in D2, so p1 + x = p2 - y is common.
    common = vadd(f1.point, split[0], q)
    return flat_new(subspace_intersection(f1.direction, f2.direction), common)


def flat_join(f1: Flat, f2: Flat) -> Flat:
    """F1 ∪ F2, the smallest flat containing both."""
    _check_same_space(f1, f2)
    q = f1.q
    direction = subspace_sum(f1.direction, f2.direction)
    diff = vsub(f2.point, f1.point, q)
    if any(diff):
        direction = subspace_sum(direction, span([diff], q))
    return flat_new(direction, f1.point)


def flat_contains(big: Flat, small: Flat) -> bool:
    _check_same_space(big, small)
    return big.direction.contains_subspace(small.direction) and small.point in big


def flat_incident(f1: Flat, f2: Flat) -> bool:
    return flat_contains(f1, f2) or flat_contains(f2, f1)


def flats_intersect(f1: Flat, f2: Flat) -> bool:
    """Intersect in the strong sense: the common part has dimension >= 1."""
    meet = flat_intersection(f1, f2)
    return meet is not None and meet.dim >= 1


def join_dimension(f1: Flat, f2: Flat) -> int:
    """dim(F1 ∪ F2) from the dimension formula, without forming the join."""
    meet = flat_intersection(f1, f2)
    if meet is not None:
        return f1.dim + f2.dim - meet.dim
    return f1.dim + f2.dim - subspace_intersection(f1.direction, f2.direction).dim + 1


def _coset_offsets(outer: Subspace, inner: Subspace) -> Iterator[Vector]:
    """One vector of ``outer`` per coset of ``inner`` in ``outer``."""
    q, n = outer.q, outer.n
    inner_coords = [list(outer.coordinates(v)) for v in inner.basis]
    inner_piv = {next(i for i, x in enumerate(r) if x) for r in inner_coords}
    comp = [outer.basis[j] for j in range(outer.dim) if j not in inner_piv]
    zero = (0,) * n
    for coeffs in itertools.product(range(q), repeat=len(comp)):
        v = zero
        for c, row in zip(coeffs, comp):
            if c:
                v = vadd(v, vscale(c, row, q), q)
        yield v


def enumerate_flats(
    n: int,
    k: int,
    q: int,
    within: Optional[Flat] = None,
    containing: Optional[Flat] = None,
) -> Iterator[Flat]:
    """Yield every k-flat of AG(n, F_q), optionally inside ``within`` and/or containing ``containing``.

    Directions come from :func:`enumerate_subspaces`; each direction is paired with
    one representative per coset, so no flat appears twice.
    """
    for f in (within, containing):
        if f is not None and (f.n != n or f.q != q):
            raise ValueError("constraint flat lives in a different affine space")
    if within is not None and containing is not None and not flat_contains(within, containing):
        raise ValueError("containing flat is not inside the within flat")
    outer = within.direction if within is not None else full_space(n, q)
    if containing is not None:
        for d in enumerate_subspaces(n, k, q, within=outer, containing=containing.direction):
            yield Flat(d, d.reduce(containing.point))
        return
    if within is None:
        # canonical representatives: anything on the non-pivot coordinates, zero on pivots
        for d in enumerate_subspaces(n, k, q):
            piv = set(d.pivots)
            free = [j for j in range(n) if j not in piv]
            for values in itertools.product(range(q), repeat=len(free)):
                point = [0] * n
                for j, x in zip(free, values):
                    point[j] = x
                yield Flat(d, tuple(point))
        return
    for d in enumerate_subspaces(n, k, q, within=outer):
        for off in _coset_offsets(outer, d):
            yield Flat(d, d.reduce(vadd(within.point, off, q)))


def enumerate_all_flats(n: int, q: int) -> Iterator[Flat]:
    for k in range(n + 1):
        yield from enumerate_flats(n, k, q)


@dataclass(frozen=True)
class FlatSetOracle:
    """Brute-force flat arithmetic on explicit point sets."""

    q: int
    n: int
    points: frozenset

    @classmethod
    def of(cls, flat: Flat) -> "FlatSetOracle":
        return cls(flat.q, flat.n, frozenset(flat.points()))

    def meet(self, other: "FlatSetOracle") -> "FlatSetOracle":
        return FlatSetOracle(self.q, self.n, self.points & other.points)

    def join(self, other: "FlatSetOracle") -> "FlatSetOracle":
        """Smallest flat containing both point sets.

        Differences from a base point are closed under u + t*v by brute force,
        which yields their linear span; the flat is the base point plus that span.
        """
        q = self.q
        pts = sorted(self.points | other.points)
        base = pts[0]
        diffs = {vsub(p, base, q) for p in pts}
        frontier = set(diffs)
        while frontier:
            new = set()
            for u in frontier:
                for v in list(diffs):
                    for t in range(1, q):
                        for w in (vadd(u, vscale(t, v, q), q), vadd(v, vscale(t, u, q), q)):
                            if w not in diffs:
                                new.add(w)
            diffs |= new
            frontier = new
        return FlatSetOracle(q, self.n, frozenset(vadd(base, d, q) for d in diffs))

    def is_flat(self) -> bool:
        if not self.points:
            return False
        size = len(self.points)
        return self.join(self) == self and size == self.q ** self.to_flat().dim

    def to_flat(self) -> Flat:
        return flat_from_points(sorted(self.points), self.q)

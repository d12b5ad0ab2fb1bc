"""Exact linear algebra over prime fields F_q.

Vectors are tuples of residues in ``[0, q)``.  A :class:`Subspace` always
stores its reduced row-echelon basis, so two subspaces are equal exactly when
their dataclass fields are equal.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Optional, Sequence

Vector = tuple[int, ...]


def is_prime(q: int) -> bool:
    if q < 2:
        return False
    if q < 4:
        return True
    if q % 2 == 0:
        return False
    d = 3
    while d * d <= q:
        if q % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """The prime field F_q.  Extension fields are rejected."""

    q: int

    def __post_init__(self):
        if not isinstance(self.q, int) or not is_prime(self.q):
            raise ValueError(f"q={self.q!r} is not prime; only prime fields are supported")

    def inv(self, a: int) -> int:
        return pow(a, -1, self.q)


def check_vector(v: Sequence[int], q: int, n: Optional[int] = None) -> Vector:
    v = tuple(v)
    if n is not None and len(v) != n:
        raise ValueError(f"vector {v} has length {len(v)}, expected {n}")
    for x in v:
        if not isinstance(x, int) or not 0 <= x < q:
            raise ValueError(f"entry {x!r} of {v} is not a residue mod {q}")
    return v


def vadd(u: Vector, v: Vector, q: int) -> Vector:
    return tuple((a + b) % q for a, b in zip(u, v))


def vsub(u: Vector, v: Vector, q: int) -> Vector:
    return tuple((a - b) % q for a, b in zip(u, v))


def vscale(c: int, v: Vector, q: int) -> Vector:
    return tuple((c * a) % q for a in v)


def unit(n: int, i: int) -> Vector:
    return tuple(1 if j == i else 0 for j in range(n))


def _eliminate(rows: list[list[int]], q: int) -> list[list[int]]:
    """In-place reduced row echelon form; returns the nonzero rows."""
    if not rows:
        return []
    ncols = len(rows[0])
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = pow(rows[r][c], -1, q)
        if inv != 1:
            rows[r] = [(x * inv) % q for x in rows[r]]
        prow = rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(x - f * y) % q for x, y in zip(rows[i], prow)]
        r += 1
        if r == len(rows):
            break
    return rows[:r]


@dataclass(frozen=True)
class Subspace:
    """A linear subspace of F_q^n held by its RREF basis."""

    q: int
    n: int
    basis: tuple[Vector, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    @cached_property
    def pivots(self) -> tuple[int, ...]:
        return tuple(next(i for i, x in enumerate(row) if x) for row in self.basis)

    def reduce(self, v: Sequence[int]) -> Vector:
        """Reduce ``v`` modulo this subspace; the result is zero on every pivot column."""
        w = list(v)
        q = self.q
        for row, p in zip(self.basis, self.pivots):
            c = w[p]
            if c:
                w = [(x - c * y) % q for x, y in zip(w, row)]
        return tuple(w)

    def __contains__(self, v) -> bool:
        return not any(self.reduce(v))

    def contains_subspace(self, other: "Subspace") -> bool:
        _check_compatible(self, other)
        return all(row in self for row in other.basis)

    def vectors(self) -> Iterator[Vector]:
        """All q**dim vectors of the subspace."""
        zero = (0,) * self.n
        for coeffs in itertools.product(range(self.q), repeat=self.dim):
            v = zero
            for c, row in zip(coeffs, self.basis):
                if c:
                    v = vadd(v, vscale(c, row, self.q), self.q)
            yield v

    def coordinates(self, v: Sequence[int]) -> Vector:
        """Coefficients of ``v`` (assumed to lie in the subspace) in the RREF basis."""
        return tuple(v[p] for p in self.pivots)

    def __repr__(self):
        rows = ",".join("".join(map(str, r)) for r in self.basis)
        return f"Subspace(q={self.q}, n={self.n}, [{rows}])"


def rref(rows: Sequence[Sequence[int]], q: int, n: Optional[int] = None) -> Subspace:
    """Canonical subspace spanned by ``rows``.

    ``n`` is needed only when ``rows`` is empty.
    """
    FieldSpec(q)
    rows = [list(r) for r in rows]
    if n is None:
        if not rows:
            raise ValueError("ambient dimension required for an empty generating set")
        n = len(rows[0])
    for r in rows:
        if len(r) != n:
            raise ValueError(f"inconsistent row lengths: expected {n}, got {len(r)}")
        check_vector(r, q)
    return Subspace(q, n, tuple(tuple(r) for r in _eliminate(rows, q)))


def zero_subspace(n: int, q: int) -> Subspace:
    return Subspace(q, n, ())


def full_space(n: int, q: int) -> Subspace:
    return Subspace(q, n, tuple(unit(n, i) for i in range(n)))


def span(vectors: Sequence[Sequence[int]], q: int, n: Optional[int] = None) -> Subspace:
    return rref(vectors, q, n)


def _check_compatible(a: Subspace, b: Subspace):
    if a.q != b.q or a.n != b.n:
        raise ValueError(f"incompatible subspaces: (q={a.q}, n={a.n}) vs (q={b.q}, n={b.n})")


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    _check_compatible(a, b)
    if not b.basis:
        return a
    if not a.basis:
        return b
    rows = [list(r) for r in a.basis + b.basis]
    return Subspace(a.q, a.n, tuple(tuple(r) for r in _eliminate(rows, a.q)))


def _zassenhaus(a: Subspace, b: Subspace) -> list[list[int]]:
    n = a.n
    rows = [list(r) + list(r) for r in a.basis] + [list(r) + [0] * n for r in b.basis]
    return _eliminate(rows, a.q)


def subspace_intersection(a: Subspace, b: Subspace) -> Subspace:
    """A ∩ B by the Zassenhaus block elimination of [[A, A], [B, 0]]."""
    _check_compatible(a, b)
    n = a.n
    if not a.basis or not b.basis:
        return zero_subspace(n, a.q)
    reduced = _zassenhaus(a, b)
    inter = [r[n:] for r in reduced if not any(r[:n])]
    return Subspace(a.q, n, tuple(tuple(r) for r in _eliminate(inter, a.q)))


def decompose(v: Sequence[int], a: Subspace, b: Subspace) -> Optional[tuple[Vector, Vector]]:
    """Write ``v = x + y`` with x in A and y in B, or return None if v is not in A + B."""
    _check_compatible(a, b)
    n, q = a.n, a.q
    reduced = _zassenhaus(a, b)
    w = list(v) + [0] * n
    for row in reduced:
        p = next(i for i, x in enumerate(row) if x)
        if p >= n:
            break
        c = w[p]
        if c:
            w = [(x - c * y) % q for x, y in zip(w, row)]
    if any(w[:n]):
        return None
    # w = (v, 0) - sum c_i (a_i + b_i, a_i) = (0, -x)
    x = tuple((-t) % q for t in w[n:])
    return x, vsub(tuple(v), x, q)


def _rref_cells(m: int, d: int, q: int) -> Iterator[tuple[Vector, ...]]:
    """RREF d x m matrices, ordered by pivot set then by free entries."""
    if d == 0:
        yield ()
        return
    for pivots in itertools.combinations(range(m), d):
        pivset = set(pivots)
        free = [(i, j) for i, p in enumerate(pivots) for j in range(p + 1, m) if j not in pivset]
        base = [[0] * m for _ in range(d)]
        for i, p in enumerate(pivots):
            base[i][p] = 1
        for values in itertools.product(range(q), repeat=len(free)):
            rows = [r[:] for r in base]
            for (i, j), x in zip(free, values):
                rows[i][j] = x
            yield tuple(tuple(r) for r in rows)


def enumerate_subspaces(
    n: int,
    d: int,
    q: int,
    within: Optional[Subspace] = None,
    containing: Optional[Subspace] = None,
) -> Iterator[Subspace]:
    """Yield every d-dimensional subspace of F_q^n, each exactly once.

    Restrict to subspaces inside ``within`` and/or containing ``containing``.
    The count is gauss(dim within - dim containing, d - dim containing, q).
    """
    FieldSpec(q)
    if within is None:
        within = full_space(n, q)
    if containing is None:
        containing = zero_subspace(n, q)
    for s in (within, containing):
        if s.n != n or s.q != q:
            raise ValueError("constraint subspace lives in a different ambient space")
    if not within.contains_subspace(containing):
        raise ValueError("containing subspace is not inside the within subspace")
    if not containing.dim <= d <= within.dim:
        raise ValueError(
            f"need dim(containing)={containing.dim} <= d={d} <= dim(within)={within.dim}"
        )
    unconstrained = within.dim == n and containing.dim == 0
    if unconstrained:
        for basis in _rref_cells(n, d, q):
            yield Subspace(q, n, basis)
        return

    # Work in coordinates of `within`, then in the quotient by `containing`.
    w = within.dim
    c_coords = _eliminate([list(within.coordinates(v)) for v in containing.basis], q)
    c_piv = {next(i for i, x in enumerate(r) if x) for r in c_coords}
    free_cols = [j for j in range(w) if j not in c_piv]

    def to_ambient(coords):
        v = [0] * n
        for c, row in zip(coords, within.basis):
            if c:
                for j in range(n):
                    v[j] = (v[j] + c * row[j]) % q
        return v

    c_ambient = [to_ambient(r) for r in c_coords]
    for ybasis in _rref_cells(len(free_cols), d - containing.dim, q):
        lifted = []
        for y in ybasis:
            coords = [0] * w
            for j, x in zip(free_cols, y):
                coords[j] = x
            lifted.append(to_ambient(coords))
        rows = [r[:] for r in c_ambient] + lifted
        yield Subspace(q, n, tuple(tuple(r) for r in _eliminate(rows, q)))

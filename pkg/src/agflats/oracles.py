"""Brute-force counts by explicit enumeration, independent of the closed forms."""

from __future__ import annotations

import itertools

from .affine import enumerate_flats, flat_contains, flat_new
from .fieldlinalg import _eliminate, enumerate_subspaces, rref, unit


def enum_gauss(n: int, k: int, q: int) -> int:
    if k < 0 or k > n:
        return 0
    return sum(1 for _ in enumerate_subspaces(n, k, q))


def _row_patterns(m: int, d: int, q: int):
    """For each pivot set, the list of possible values of every RREF row.

    The product over rows of these lists is exactly the set of RREF d x m
    matrices with that pivot set.  Rows are ints (bit j from the left) when q == 2.
    """
    for pivots in itertools.combinations(range(m), d):
        pivset = set(pivots)
        per_row = []
        for p in pivots:
            free = [j for j in range(p + 1, m) if j not in pivset]
            vals = []
            for values in itertools.product(range(q), repeat=len(free)):
                row = [0] * m
                row[p] = 1
                for j, x in zip(free, values):
                    row[j] = x
                vals.append(int("".join(map(str, row)), 2) if q == 2 else tuple(row))
            per_row.append(vals)
        yield per_row


def _rank2(rows) -> int:
    basis = []
    for x in rows:
        for y in basis:
            x = min(x, x ^ y)
        if x:
            basis.append(x)
    return len(basis)


def rank(rows, q: int) -> int:
    """Rank of a list of vectors over F_q."""
    return len(_eliminate([list(r) for r in rows], q))


def enum_type_subspaces_histogram(m1: int, k1: int, m: int, n: int, l: int, q: int) -> dict:
    """Histogram of dim(P ∩ W) over all m-subspaces P of F_q^(n+l) containing a fixed G.

    W is spanned by the first l coordinates and G by e_1..e_k1 (inside W) and
    e_(l+1)..e_(l+m1-k1) (outside W), so G has type (m1, k1).  Every such P is
    G plus one RREF cell on the other coordinates, and dim(P ∩ W) is m minus the
    rank of P on the last n coordinates.  G's columns there are disjoint from the
    cell's, so that rank is (m1 - k1) plus the rank of the cell's non-W block.
    """
    N = n + l
    if not (0 <= k1 <= l and 0 <= m1 - k1 <= n and m1 <= m <= N):
        return {}
    width = N - m1  # free coordinates: l - k1 inside W, then c outside
    c = n - (m1 - k1)
    hist: dict = {}
    for per_row in _row_patterns(width, m - m1, q):
        for cell in itertools.product(*per_row):
            if q == 2:
                r = _rank2([y & ((1 << c) - 1) for y in cell])
            else:
                r = rank([y[width - c:] for y in cell], q) if cell else 0
            kk = m - (m1 - k1) - r
            hist[kk] = hist.get(kk, 0) + 1
    return hist


def enum_type_subspaces(m1: int, k1: int, m: int, k: int, n: int, l: int, q: int) -> int:
    return enum_type_subspaces_histogram(m1, k1, m, n, l, q).get(k, 0)


def _fixed_flat(n: int, dim: int, q: int):
    # a non-origin representative exercises the coset handling
    point = tuple(1 if i == n - 1 and dim < n else 0 for i in range(n))
    return flat_new(rref([unit(n, i) for i in range(dim)], q, n), point)


def enum_flats_within(n: int, m: int, k: int, q: int) -> int:
    return sum(1 for _ in enumerate_flats(n, k, q, within=_fixed_flat(n, m, q)))


def enum_flats_containing(n: int, kflat_dim: int, m: int, q: int) -> int:
    return sum(1 for _ in enumerate_flats(n, m, q, containing=_fixed_flat(n, kflat_dim, q)))


def enum_flats_containing_by_filter(n: int, kflat_dim: int, m: int, q: int) -> int:
    """Same count, filtering the full list of m-flats instead of enumerating a pencil."""
    fixed = _fixed_flat(n, kflat_dim, q)
    return sum(1 for f in enumerate_flats(n, m, q) if flat_contains(f, fixed))


def enum_flats_within_by_filter(n: int, m: int, k: int, q: int) -> int:
    fixed = _fixed_flat(n, m, q)
    return sum(1 for f in enumerate_flats(n, k, q) if flat_contains(fixed, f))


def counting_sweep(qs=(2, 3), max_points: int = 2**13, max_stream: int = 2**13):
    """Yield (formula, params, closed_form, enumerated) over every legal parameter choice.

    Ambient spaces have at most ``max_points`` points; a check is included when its
    enumeration streams at most ``max_stream`` objects.
    """
    from .counting import count_flats_containing, count_flats_within, count_type_subspaces, gauss

    for q in qs:
        N = 0
        while q ** N <= max_points:
            for d in range(N + 1):
                if gauss(N, d, q) <= max_stream:
                    yield "gauss", dict(n=N, k=d, q=q), gauss(N, d, q), enum_gauss(N, d, q)
            for m in range(N + 1):
                for k in range(m + 1):
                    if count_flats_within(m, k, q) <= max_stream:
                        yield ("flats-within", dict(n=N, m=m, k=k, q=q),
                               count_flats_within(m, k, q), enum_flats_within(N, m, k, q))
                    if count_flats_containing(N, k, m, q) <= max_stream:
                        yield ("flats-containing", dict(n=N, k=k, m=m, q=q),
                               count_flats_containing(N, k, m, q), enum_flats_containing(N, k, m, q))
            for l in range(N + 1):
                n = N - l
                for m1 in range(N + 1):
                    for k1 in range(min(m1, l) + 1):
                        if m1 - k1 > n:
                            continue
                        for m in range(m1, N + 1):
                            if gauss(N - m1, m - m1, q) > max_stream:
                                continue
                            hist = enum_type_subspaces_histogram(m1, k1, m, n, l, q)
                            for k in range(m + 1):
                                yield ("type-subspaces", dict(m1=m1, k1=k1, m=m, k=k, n=n, l=l, q=q),
                                       count_type_subspaces(m1, k1, m, k, n, l, q), hist.get(k, 0))
            N += 1

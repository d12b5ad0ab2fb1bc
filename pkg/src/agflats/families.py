"""Intersecting families of k-flats: constructions, covering number, closure."""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Iterable, Optional, Sequence

from .affine import (
    Flat,
    enumerate_flats,
    flat_intersection,
    flat_join,
    flat_new,
)
from .counting import count_flats, gauss, hm_size, hm_hypotheses_hold
from .fieldlinalg import Subspace, Vector, check_vector, enumerate_subspaces, rref, unit

Selector = Callable[[int, Subspace], Vector]


class ScaleError(RuntimeError):
    """The requested computation exceeds a configured size cap."""


class NonCanonicalError(ValueError):
    pass


def point_index(v: Sequence[int], q: int) -> int:
    idx = 0
    for x in v:
        idx = idx * q + x
    return idx


def flat_mask(f: Flat) -> int:
    """Bitmask over the q**n points of the ambient space, one bit per point of ``f``."""
    q = f.q
    if q == 2:
        idxs = [point_index(f.point, 2)]
        for row in f.direction.basis:
            r = point_index(row, 2)
            idxs += [i ^ r for i in idxs]
    else:
        idxs = [point_index(p, q) for p in f.points()]
    m = 0
    for i in idxs:
        m |= 1 << i
    return m


def masks_intersect(a: int, b: int, q: int) -> bool:
    # A nonempty intersection of flats has q**d points; d >= 1 iff at least q points.
    return (a & b).bit_count() >= q


@dataclass(frozen=True)
class FlatFamily:
    q: int
    n: int
    k: int
    members: tuple

    def __post_init__(self):
        members = tuple(self.members)
        object.__setattr__(self, "members", members)
        for f in members:
            if f.q != self.q or f.n != self.n or f.dim != self.k:
                raise ValueError(f"{f} is not a {self.k}-flat of AG({self.n},{self.q})")
        if len(set(members)) != len(members):
            raise ValueError("family has duplicate members")

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, f):
        return f in self.member_set

    @cached_property
    def member_set(self) -> frozenset:
        return frozenset(self.members)

    @cached_property
    def masks(self) -> list:
        return [flat_mask(f) for f in self.members]


def make_family(members: Iterable[Flat], q: int, n: int, k: int) -> FlatFamily:
    seen = {}
    for f in members:
        seen.setdefault(f, None)
    return FlatFamily(q, n, k, tuple(seen))


def non_intersecting_pair(fam: FlatFamily) -> Optional[tuple[int, int]]:
    masks, q = fam.masks, fam.q
    for i in range(len(masks)):
        mi = masks[i]
        for j in range(i + 1, len(masks)):
            if (mi & masks[j]).bit_count() < q:
                return i, j
    return None


def is_intersecting(fam: FlatFamily) -> bool:
    return non_intersecting_pair(fam) is None


# -- covering number ------------------------------------------------------------

EXACT, LOWER_BOUND = "exact", "lower-bound-only"


@dataclass(frozen=True)
class TauResult:
    status: str
    value: int
    witness: Optional[Flat] = None
    candidates_checked: int = 0

    @property
    def exact(self) -> bool:
        return self.status == EXACT


def _covers(mask: int, member_masks: list, q: int) -> bool:
    return all((mask & m).bit_count() >= q for m in member_masks)


def covering_number(fam: FlatFamily, budget: int = 500_000) -> TauResult:
    """Minimum dimension of a flat meeting every member in dimension >= 1.

    A flat meeting member F0 in dimension >= 1 contains a line of F0, so the
    s-flat candidates are the s-flats through the lines of F0.  When their
    number exceeds ``budget`` the search stops and reports tau >= s.
    """
    if not fam.members:
        raise ValueError("covering number of the empty family is undefined")
    if fam.k < 1:
        raise ValueError("0-flats meet nothing in dimension >= 1")
    n, q, k = fam.n, fam.q, fam.k
    f0 = fam.members[0]
    masks = fam.masks
    lines = list(enumerate_flats(n, 1, q, within=f0))
    checked = 0
    for line in lines:
        checked += 1
        if _covers(flat_mask(line), masks, q):
            return TauResult(EXACT, 1, line, checked)
    for s in range(2, n + 1):
        cost = len(lines) * gauss(n - 1, s - 1, q)
        if cost > budget:
            return TauResult(LOWER_BOUND, s, None, checked)
        seen = set()
        for line in lines:
            for cand in enumerate_flats(n, s, q, containing=line):
                if cand in seen:
                    continue
                seen.add(cand)
                checked += 1
                if _covers(flat_mask(cand), masks, q):
                    return TauResult(EXACT, s, cand, checked)
    raise AssertionError("the whole space always covers a family of k-flats with k >= 1")


# -- constructions --------------------------------------------------------------


def default_line(n: int, q: int) -> Flat:
    return flat_new(rref([unit(n, 0)], q), (0,) * n)


def default_kflat(n: int, k: int, q: int, offset: int = 1) -> Flat:
    return flat_new(rref([unit(n, offset + i) for i in range(k)], q, n), (0,) * n)


def seeded_selector(region: Flat, seed: int) -> Selector:
    """Pick uniformly random points of ``region``, reproducibly for a given seed."""
    pts = sorted(region.points())
    rng = random.Random(seed)
    return lambda i, direction: rng.choice(pts)


def pencil_family(E: Flat, k: int) -> FlatFamily:
    """All k-flats through the line E."""
    if E.dim != 1:
        raise ValueError(f"pencil needs a 1-flat, got dimension {E.dim}")
    return FlatFamily(E.q, E.n, k, tuple(enumerate_flats(E.n, k, E.q, containing=E)))


def hm_family(E: Flat, U: Flat, selector: Optional[Selector] = None) -> FlatFamily:
    """{F : E in F, dim(F ∩ U) >= 1} together with T_i + t_i.

    The T_i are the k-subspaces of E' + U' not containing E'; t_i comes from
    ``selector(i, T_i)`` and must lie in E ∪ U.  The default is the common point of E and U.
    """
    if E.dim != 1:
        raise ValueError(f"E must be a 1-flat, got dimension {E.dim}")
    n, q, k = U.n, U.q, U.dim
    meet = flat_intersection(E, U)
    if meet is None or meet.dim != 0:
        raise ValueError("E and U must meet in exactly one point")
    x = meet.point
    span_eu = flat_join(E, U)
    u_mask = flat_mask(U)
    pencil = [F for F in enumerate_flats(n, k, q, containing=E) if masks_intersect(flat_mask(F), u_mask, q)]
    ts = [T for T in enumerate_subspaces(n, k, q, within=span_eu.direction) if not T.contains_subspace(E.direction)]
    if len(ts) != q**k:
        raise AssertionError(f"expected {q ** k} hyperplanes of E'+U' missing E', found {len(ts)}")
    extra = []
    for i, T in enumerate(ts):
        t = x if selector is None else check_vector(selector(i, T), q, n)
        if t not in span_eu:
            raise ValueError(f"selector point {t} lies outside E ∪ U")
        extra.append(flat_new(T, t))
    return FlatFamily(q, n, k, tuple(pencil + extra))


def f3_family(U: Flat, selector: Optional[Selector] = None) -> FlatFamily:
    """Union over the 2-subspaces S_i of U' of all 3-flats through S_i + s_i, with s_i in U."""
    if U.dim != 3:
        raise ValueError(f"the F3 construction needs a 3-flat, got dimension {U.dim}")
    n, q = U.n, U.q
    members = []
    for i, S in enumerate(enumerate_subspaces(n, 2, q, within=U.direction)):
        s = U.point if selector is None else check_vector(selector(i, S), q, n)
        if s not in U:
            raise ValueError(f"selector point {s} lies outside U")
        members.extend(enumerate_flats(n, 3, q, containing=flat_new(S, s)))
    return make_family(members, q, n, 3)


def maximal_closure(fam: FlatFamily, budget: int = 500_000) -> FlatFamily:
    """Add k-flats meeting every current member until no more can be added.

    Candidates are scanned in enumeration order; each one is tested against the
    members present at that moment, so the result stays intersecting.
    """
    n, k, q = fam.n, fam.k, fam.q
    total = count_flats(n, k, q)
    if total > budget:
        raise ScaleError(f"{total} {k}-flats in AG({n},{q}) exceed the budget of {budget}")
    if not is_intersecting(fam):
        raise ValueError("closure needs an intersecting family")
    members = list(fam.members)
    present = set(members)
    masks = list(fam.masks)
    changed = True
    while changed:
        changed = False
        last_fail = 0
        for cand in enumerate_flats(n, k, q):
            if cand in present:
                continue
            cm = flat_mask(cand)
            # Start from the member that rejected the previous candidate.
            if masks and (cm & masks[last_fail]).bit_count() < q:
                continue
            for j, m in enumerate(masks):
                if (cm & m).bit_count() < q:
                    last_fail = j
                    break
            else:
                members.append(cand)
                present.add(cand)
                masks.append(cm)
                changed = True
    return FlatFamily(q, n, k, tuple(members))


def family_stats(fam: FlatFamily, tau_budget: int = 500_000) -> dict:
    n, k, q = fam.n, fam.k, fam.q
    out = {"q": q, "n": n, "k": k, "size": len(fam)}
    pair = non_intersecting_pair(fam)
    out["intersecting"] = pair is None
    if pair is not None:
        out["non_intersecting_pair"] = [_flat_dict(fam.members[i]) for i in pair]
    if fam.members and k >= 1:
        tau = covering_number(fam, tau_budget)
        out["tau"] = {"status": tau.status, "value": tau.value,
                      "witness": _flat_dict(tau.witness) if tau.witness else None}
    else:
        out["tau"] = None
    if k >= 1 and n >= k:
        out["pencil_bound"] = gauss(n - 1, k - 1, q)
        out["vs_pencil_bound"] = _cmp(len(fam), out["pencil_bound"])
    if n >= k + 1 >= 2:
        out["hm_bound"] = hm_size(n, k, q)
        out["vs_hm_bound"] = _cmp(len(fam), out["hm_bound"])
    out["in_hm_parameter_range"] = hm_hypotheses_hold(n, k, q)
    return out


def _cmp(a: int, b: int) -> str:
    return "equal" if a == b else ("below" if a < b else "above")


# -- JSON ------------------------------------------------------------------------


def _flat_dict(f: Flat) -> dict:
    return {"basis": [list(r) for r in f.direction.basis], "point": list(f.point)}


def family_to_dict(fam: FlatFamily) -> dict:
    return {"q": fam.q, "n": fam.n, "k": fam.k, "flats": [_flat_dict(f) for f in fam.members]}


def flat_from_dict(d: dict, q: int, n: int) -> Flat:
    """Load one flat, rejecting anything that is not already in canonical form."""
    basis = [tuple(r) for r in d["basis"]]
    point = check_vector(d["point"], q, n)
    direction = rref(basis, q, n)
    if list(direction.basis) != basis:
        raise NonCanonicalError(f"basis {d['basis']} is not in reduced row-echelon form (expected {[list(r) for r in direction.basis]})")
    f = flat_new(direction, point)
    if f.point != point:
        raise NonCanonicalError(f"point {list(point)} is not the canonical representative (expected {list(f.point)})")
    return f


def family_from_dict(d: dict) -> FlatFamily:
    q, n, k = d["q"], d["n"], d["k"]
    return FlatFamily(q, n, k, tuple(flat_from_dict(x, q, n) for x in d["flats"]))

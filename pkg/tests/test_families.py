import json

import pytest
from hypothesis import given, settings, strategies as st

from agflats.affine import enumerate_flats, flat_contains, flat_intersection, flat_new, flats_intersect
from agflats.counting import f3_size, gauss, hm_size
from agflats.families import (
    EXACT,
    LOWER_BOUND,
    FlatFamily,
    NonCanonicalError,
    ScaleError,
    covering_number,
    default_kflat,
    default_line,
    f3_family,
    family_from_dict,
    family_stats,
    family_to_dict,
    flat_mask,
    hm_family,
    is_intersecting,
    make_family,
    masks_intersect,
    maximal_closure,
    non_intersecting_pair,
    pencil_family,
    seeded_selector,
)
from agflats.fieldlinalg import rref, unit
from conftest import flats, spaces

SEEDS = range(5)


def tau_is_witnessed(fam, tau):
    return all(flats_intersect(tau.witness, F) for F in fam)


@pytest.fixture(scope="module")
def hm732():
    return hm_family(default_line(7, 2), default_kflat(7, 3, 2))


@pytest.fixture(scope="module")
def pencil732():
    return pencil_family(default_line(7, 2), 3)


class TestBasics:
    def test_parallel_lines_not_intersecting(self):
        a = flat_new(rref([unit(2, 0)], 2), (0, 0))
        fam = FlatFamily(2, 2, 1, (a, a.translate((0, 1))))
        assert not is_intersecting(fam)
        assert non_intersecting_pair(fam) == (0, 1)

    def test_vacuous(self):
        assert is_intersecting(FlatFamily(2, 3, 1, ()))
        assert is_intersecting(FlatFamily(2, 3, 1, (default_line(3, 2),)))

    def test_validation(self):
        line = default_line(3, 2)
        with pytest.raises(ValueError):
            FlatFamily(2, 3, 1, (line, line))
        with pytest.raises(ValueError):
            FlatFamily(2, 3, 2, (line,))
        assert len(make_family([line, line], 2, 3, 1)) == 1

    @given(st.data())
    def test_mask_predicate_matches_algebra(self, data):
        q, n = data.draw(spaces(qs=(2, 3), max_n=4))
        a, b = data.draw(flats(q, n)), data.draw(flats(q, n))
        assert masks_intersect(flat_mask(a), flat_mask(b), q) == flats_intersect(a, b)
        assert bin(flat_mask(a)).count("1") == q ** a.dim


class TestCoveringNumber:
    def test_singleton(self):
        F = default_kflat(5, 3, 2)
        tau = covering_number(FlatFamily(2, 5, 3, (F,)))
        assert tau.status == EXACT and tau.value == 1 and flat_contains(F, tau.witness)

    def test_pencil(self, pencil732):
        tau = covering_number(pencil732)
        assert tau.value == 1 and tau.witness == default_line(7, 2)

    def test_hm(self, hm732):
        tau = covering_number(hm732)
        assert tau.status == EXACT and tau.value == 2 and tau.witness.dim == 2
        assert tau_is_witnessed(hm732, tau)
        # no line meets every member
        assert not any(all(flats_intersect(L, F) for F in hm732) for L in enumerate_flats(7, 1, 2))

    def test_budget_gives_lower_bound(self, hm732):
        tau = covering_number(hm732, budget=10)
        assert tau.status == LOWER_BOUND and tau.value == 2 and tau.witness is None

    def test_empty(self):
        with pytest.raises(ValueError):
            covering_number(FlatFamily(2, 4, 2, ()))

    @settings(max_examples=25)
    @given(st.data())
    def test_monotone_under_subfamilies(self, data):
        fam = hm_family(default_line(5, 2), default_kflat(5, 2, 2))
        idx = data.draw(st.lists(st.integers(0, len(fam) - 1), min_size=1, unique=True))
        sub = FlatFamily(2, 5, 2, tuple(fam.members[i] for i in sorted(idx)))
        assert covering_number(sub).value <= covering_number(fam).value


class TestConstructions:
    def test_pencil_size(self, pencil732):
        assert len(pencil732) == 651 == gauss(6, 2, 2)
        assert is_intersecting(pencil732)

    def test_hm_structure(self, hm732):
        E = default_line(7, 2)
        assert len(hm732) == 211 == hm_size(7, 3, 2)
        through = [F for F in hm732 if flat_contains(F, E)]
        assert len(through) == 203 and len(hm732) - len(through) == 8 == 2**3
        assert is_intersecting(hm732)

    def test_hm_rejects_e_inside_u(self):
        with pytest.raises(ValueError):
            hm_family(default_line(7, 2), default_kflat(7, 3, 2, offset=0))

    def test_hm_rejects_bad_selector(self):
        far = unit(7, 6)
        with pytest.raises(ValueError):
            hm_family(default_line(7, 2), default_kflat(7, 3, 2), selector=lambda i, T: far)

    def test_f3_structure(self):
        U = default_kflat(7, 3, 2, offset=0)
        fam = f3_family(U)
        assert len(fam) == 211 == f3_size(7, 2)
        assert is_intersecting(fam)
        tau = covering_number(fam)
        assert tau.value == 2 and tau_is_witnessed(fam, tau)

    def test_f3_rejects(self):
        with pytest.raises(ValueError):
            f3_family(default_kflat(7, 2, 2))
        U = default_kflat(7, 3, 2, offset=0)
        with pytest.raises(ValueError):
            f3_family(U, selector=lambda i, S: unit(7, 6))

    @pytest.mark.parametrize("n,k,q", [(7, 3, 2), (8, 3, 2), (7, 3, 3)])
    def test_hm_any_selector(self, n, k, q):
        E, U = default_line(n, q), default_kflat(n, k, q)
        region = flat_new(rref([unit(n, i) for i in range(k + 1)], q, n), (0,) * n)
        for sel in [None] + [seeded_selector(region, s) for s in SEEDS]:
            # region is the join E ∪ U for the default E and U
            fam = hm_family(E, U, sel)
            assert len(fam) == hm_size(n, k, q)
            assert is_intersecting(fam)
            tau = covering_number(fam)
            assert tau.value == 2 and tau.status == EXACT and tau_is_witnessed(fam, tau)

    @pytest.mark.parametrize("n,q", [(7, 2), (8, 2), (6, 3)])
    def test_f3_any_selector(self, n, q):
        U = default_kflat(n, 3, q, offset=0)
        for sel in [None] + [seeded_selector(U, s) for s in SEEDS]:
            fam = f3_family(U, sel)
            assert len(fam) == f3_size(n, q)
            assert is_intersecting(fam)
            assert covering_number(fam).value == 2

    @pytest.mark.parametrize("n,k,q", [(4, 2, 2), (5, 2, 2), (6, 3, 2), (4, 2, 3), (5, 2, 3), (6, 4, 2)])
    def test_sizes_across_parameters(self, n, k, q):
        E, U = default_line(n, q), default_kflat(n, k, q)
        assert len(pencil_family(E, k)) == gauss(n - 1, k - 1, q)
        assert len(hm_family(E, U)) == hm_size(n, k, q)
        if k == 3 and n >= 4:
            assert len(f3_family(default_kflat(n, 3, q, offset=0))) == f3_size(n, q)


class TestClosure:
    def test_hm_is_maximal(self, hm732):
        assert maximal_closure(hm732) == hm732

    def test_single_flat_closure(self):
        n, k, q = 4, 2, 2
        F = default_kflat(n, k, q)
        out = maximal_closure(FlatFamily(q, n, k, (F,)))
        assert out.members[0] == F and is_intersecting(out)
        for G in enumerate_flats(n, k, q):
            if G not in out:
                assert not all(flats_intersect(G, H) for H in out)
        # the naive one-shot answer is not intersecting, so the guard matters
        naive = FlatFamily(q, n, k, tuple(G for G in enumerate_flats(n, k, q) if G == F or flats_intersect(G, F)))
        assert not is_intersecting(naive) and len(out) < len(naive)

    def test_errors(self, hm732):
        with pytest.raises(ScaleError):
            maximal_closure(hm732, budget=100)
        a = flat_new(rref([unit(2, 0)], 2), (0, 0))
        with pytest.raises(ValueError):
            maximal_closure(FlatFamily(2, 2, 1, (a, a.translate((0, 1)))))


class TestStats:
    def test_pencil(self, pencil732):
        st_ = family_stats(pencil732)
        assert st_["size"] == 651 and st_["tau"]["value"] == 1 and st_["vs_pencil_bound"] == "equal"

    def test_hm(self, hm732):
        st_ = family_stats(hm732)
        assert st_["size"] == 211 and st_["intersecting"] and st_["tau"]["value"] == 2
        assert st_["vs_hm_bound"] == "equal" and not st_["in_hm_parameter_range"]

    def test_f3_equality(self):
        st_ = family_stats(f3_family(default_kflat(7, 3, 2, offset=0)))
        assert st_["vs_hm_bound"] == "equal"

    def test_empty(self):
        st_ = family_stats(FlatFamily(2, 7, 3, ()))
        assert st_["size"] == 0 and st_["tau"] is None and st_["intersecting"]

    def test_non_intersecting_reported(self):
        a = flat_new(rref([unit(3, 0)], 2), (0, 0, 0))
        st_ = family_stats(FlatFamily(2, 3, 1, (a, a.translate((0, 1, 0)))))
        assert not st_["intersecting"] and len(st_["non_intersecting_pair"]) == 2


class TestJson:
    def test_round_trip(self, hm732):
        doc = json.loads(json.dumps(family_to_dict(hm732)))
        assert family_from_dict(doc) == hm732

    @given(st.data())
    def test_round_trip_random(self, data):
        q, n = data.draw(spaces())
        fs = data.draw(st.lists(flats(q, n), max_size=6))
        k = fs[0].dim if fs else 0
        fam = make_family([f for f in fs if f.dim == k], q, n, k)
        assert family_from_dict(family_to_dict(fam)) == fam

    def test_non_canonical_basis(self):
        doc = {"q": 2, "n": 2, "k": 1, "flats": [{"basis": [[1, 1]], "point": [0, 0]}]}
        assert family_from_dict(doc).members[0].dim == 1
        doc["flats"][0]["basis"] = [[0, 1], [1, 0]]
        doc["k"] = 2
        with pytest.raises(NonCanonicalError):
            family_from_dict(doc)

    def test_non_canonical_point(self):
        doc = {"q": 2, "n": 2, "k": 1, "flats": [{"basis": [[1, 0]], "point": [1, 1]}]}
        with pytest.raises(NonCanonicalError):
            family_from_dict(doc)

    def test_out_of_range_entry(self):
        doc = {"q": 3, "n": 2, "k": 1, "flats": [{"basis": [[1, 0]], "point": [0, 3]}]}
        with pytest.raises(ValueError):
            family_from_dict(doc)

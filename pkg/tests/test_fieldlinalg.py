import itertools

import pytest
from hypothesis import given, strategies as st

from agflats.counting import gauss
from agflats.fieldlinalg import (
    FieldSpec,
    decompose,
    enumerate_subspaces,
    full_space,
    rref,
    span,
    subspace_intersection,
    subspace_sum,
    unit,
    vadd,
    zero_subspace,
)
from conftest import spaces, subspaces, vectors


def e(n, *idx):
    return [unit(n, i) for i in idx]


def brute_span(rows, q, n):
    """All F_q-combinations of ``rows``, with no elimination involved."""
    out = set()
    for coeffs in itertools.product(range(q), repeat=len(rows)):
        v = [0] * n
        for c, r in zip(coeffs, rows):
            v = [(x + c * y) % q for x, y in zip(v, r)]
        out.add(tuple(v))
    return out


class TestRref:
    def test_already_canonical(self):
        s = rref([[1, 0], [0, 1]], 2)
        assert s.basis == ((1, 0), (0, 1)) and s.dim == 2

    def test_elimination_forced(self):
        assert rref([[1, 1], [0, 1]], 2).basis == ((1, 0), (0, 1))

    def test_dependent_rows_over_f3(self):
        s = rref([[2, 1, 0], [1, 2, 0]], 3)
        assert s.basis == ((1, 2, 0),) and s.dim == 1

    def test_empty_needs_n(self):
        with pytest.raises(ValueError):
            rref([], 2)
        assert rref([], 2, 3) == zero_subspace(3, 2)

    @pytest.mark.parametrize("q", [4, 6, 8, 9, 1, 0])
    def test_non_prime_rejected(self, q):
        with pytest.raises(ValueError):
            FieldSpec(q)
        with pytest.raises(ValueError):
            rref([[1, 0]], q)

    def test_bad_entries_rejected(self):
        with pytest.raises(ValueError):
            rref([[1, 2]], 2)
        with pytest.raises(ValueError):
            rref([[1, 0], [1]], 2)

    @given(st.data())
    def test_row_order_and_idempotence(self, data):
        q, n = data.draw(spaces())
        rows = data.draw(st.lists(vectors(q, n), max_size=n + 2))
        s = rref(rows, q, n)
        perm = data.draw(st.permutations(rows))
        assert rref(perm, q, n) == s
        assert rref(s.basis, q, n) == s
        assert set(s.vectors()) == brute_span(rows, q, n)


class TestSumIntersection:
    def test_examples(self):
        a, b = span(e(3, 0), 2), span(e(3, 1), 2)
        assert subspace_sum(a, b) == span(e(3, 0, 1), 2)
        assert subspace_sum(a, a) == a
        c, d = span(e(3, 0, 1), 2), span(e(3, 1, 2), 2)
        assert subspace_intersection(c, d) == span(e(3, 1), 2)
        assert subspace_intersection(c, c) == c

    @given(st.data())
    def test_modular_law(self, data):
        q, n = data.draw(spaces(max_n=5))
        a, b = data.draw(subspaces(q, n)), data.draw(subspaces(q, n))
        assert subspace_sum(a, b).dim + subspace_intersection(a, b).dim == a.dim + b.dim

    @given(st.data())
    def test_membership_exhaustive(self, data):
        q, n = data.draw(spaces(max_n=4))
        a, b = data.draw(subspaces(q, n)), data.draw(subspaces(q, n))
        inter, total = subspace_intersection(a, b), subspace_sum(a, b)
        pa, pb = set(a.vectors()), set(b.vectors())
        for v in itertools.product(range(q), repeat=n):
            assert (v in inter) == (v in pa and v in pb)
            assert (v in total) == any(vadd(x, y, q) == v for x in pa for y in pb)

    @given(st.data())
    def test_decompose(self, data):
        q, n = data.draw(spaces())
        a, b = data.draw(subspaces(q, n)), data.draw(subspaces(q, n))
        v = data.draw(vectors(q, n))
        res = decompose(v, a, b)
        if v in subspace_sum(a, b):
            x, y = res
            assert x in a and y in b and vadd(x, y, q) == v
        else:
            assert res is None

    def test_incompatible(self):
        with pytest.raises(ValueError):
            subspace_sum(full_space(2, 2), full_space(3, 2))


class TestEnumeration:
    def test_examples(self):
        assert len(list(enumerate_subspaces(4, 2, 2))) == 35
        assert list(enumerate_subspaces(3, 3, 2)) == [full_space(3, 2)]
        assert len(list(enumerate_subspaces(3, 2, 2, containing=span(e(3, 0), 2)))) == 3

    @pytest.mark.parametrize("q", [2, 3])
    @pytest.mark.parametrize("n", range(6))
    def test_counts_no_duplicates(self, n, q):
        for d in range(n + 1):
            subs = list(enumerate_subspaces(n, d, q))
            assert len(subs) == len(set(subs)) == gauss(n, d, q)
            assert all(s.dim == d and rref(s.basis, q, n) == s for s in subs)

    def test_order_is_deterministic(self):
        assert list(enumerate_subspaces(4, 2, 3)) == list(enumerate_subspaces(4, 2, 3))

    @given(st.data())
    def test_constrained(self, data):
        q, n = data.draw(spaces(max_n=4))
        w = data.draw(subspaces(q, n))
        c = rref(data.draw(st.lists(st.sampled_from(w.basis), max_size=w.dim)) if w.dim else [], q, n)
        d = data.draw(st.integers(c.dim, w.dim))
        subs = list(enumerate_subspaces(n, d, q, within=w, containing=c))
        assert len(subs) == len(set(subs)) == gauss(w.dim - c.dim, d - c.dim, q)
        for s in subs:
            assert w.contains_subspace(s) and s.contains_subspace(c) and s.dim == d

    def test_bad_constraints(self):
        with pytest.raises(ValueError):
            list(enumerate_subspaces(3, 1, 2, within=span(e(3, 0), 2), containing=span(e(3, 1), 2)))
        with pytest.raises(ValueError):
            list(enumerate_subspaces(3, 3, 2, within=span(e(3, 0), 2)))

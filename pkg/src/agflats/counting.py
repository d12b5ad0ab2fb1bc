"""Exact counts and bound evaluators.

Everything here is integer or :class:`fractions.Fraction` arithmetic.  ``q`` is
treated as a formal integer parameter (>= 2), so the formulas are also evaluated
at non-prime q such as 4.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Optional

BigCount = int


def gauss(n: int, k: int, q: int) -> BigCount:
    """Gaussian binomial [n, k]_q: the number of k-subspaces of F_q^n."""
    if k < 0 or n < 0 or k > n:
        return 0
    if q < 2:
        raise ValueError(f"q must be >= 2, got {q}")
    k = min(k, n - k)
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (k - i) - 1
    return num // den


def type_subspaces_feasible(m1: int, k1: int, m: int, k: int, n: int, l: int) -> bool:
    return 0 <= k1 <= k <= l and 0 <= m1 - k1 <= m - k <= n


def count_type_subspaces(m1: int, k1: int, m: int, k: int, n: int, l: int, q: int) -> BigCount:
    """Subspaces of type (m, k) in F_q^(n+l) containing a fixed subspace of type (m1, k1).

    Type (m, k) means dimension m and meeting a fixed l-subspace W in dimension k.
    """
    if min(m1, k1, m, k, n, l) < 0 or not type_subspaces_feasible(m1, k1, m, k, n, l):
        return 0
    return (
        q ** ((l - k) * (m - k - m1 + k1))
        * gauss(n - (m1 - k1), (m - k) - (m1 - k1), q)
        * gauss(l - k1, k - k1, q)
    )


def count_flats_within(m: int, k: int, q: int) -> BigCount:
    """k-flats contained in a fixed m-flat."""
    if not 0 <= k <= m:
        raise ValueError(f"need 0 <= k <= m, got k={k}, m={m}")
    return q ** (m - k) * gauss(m, k, q)


def count_flats_containing(n: int, kflat_dim: int, m: int, q: int) -> BigCount:
    """m-flats of AG(n, q) containing a fixed flat of dimension ``kflat_dim``."""
    if not 0 <= kflat_dim <= m <= n:
        raise ValueError(f"need 0 <= {kflat_dim} <= {m} <= {n}")
    return gauss(n - kflat_dim, m - kflat_dim, q)


def count_flats(n: int, k: int, q: int) -> BigCount:
    return count_flats_within(n, k, q)


def hm_size(n: int, k: int, q: int) -> BigCount:
    """Size f(n, k, q) of a Hilton-Milner type family of k-flats."""
    if not n >= k + 1 >= 2:
        raise ValueError(f"need n >= k + 1 >= 2, got n={n}, k={k}")
    return gauss(n - 1, k - 1, q) - q ** (k * (k - 1)) * gauss(n - k - 1, k - 1, q) + q**k


def f3_size(n: int, q: int) -> BigCount:
    if n < 4:
        raise ValueError(f"need n >= 4, got {n}")
    return (q * q + q + 1) * gauss(n - 2, 1, q) - q * q - q


def f3_size_by_union(n: int, q: int) -> BigCount:
    """Same count as :func:`f3_size`, summed as [3,2] pencils that pairwise share only U."""
    return gauss(3, 2, q) * (gauss(n - 2, 1, q) - 1) + 1


def hm_hypotheses_hold(n: int, k: int, q: int) -> bool:
    """Parameter range where HM-type families are known to be extremal among tau >= 2 families."""
    return k >= 3 and ((q >= 3 and n >= 2 * k + 4) or (q == 2 and n >= 2 * k + 5))


# -- pointwise inequalities ---------------------------------------------------


def product_inequality_applies(a: int, n: int, k: int, q: int) -> bool:
    return a >= 0 and n >= k >= a + 1 and q >= 2


def product_inequality_sides(a: int, n: int, k: int, q: int) -> tuple[Fraction, int]:
    """(q^(k-a) - 1)(q^k - 1) q^(n-2k)  vs  q^(n-a) - 1."""
    lhs = Fraction((q ** (k - a) - 1) * (q**k - 1)) * Fraction(q) ** (n - 2 * k)
    return lhs, q ** (n - a) - 1


def check_product_inequality(a: int, n: int, k: int, q: int) -> Optional[bool]:
    """Strict inequality [k,1][n-a-1,k-a-1] < [n-a,k-a] / ((q-1) q^(n-2k)).

    Checked both in that form and in its cleared-denominator form; both must hold.
    Returns None outside the parameter range.
    """
    if not product_inequality_applies(a, n, k, q):
        return None
    lhs, rhs = product_inequality_sides(a, n, k, q)
    cleared = lhs < rhs
    original = gauss(k, 1, q) * gauss(n - a - 1, k - a - 1, q) < Fraction(
        gauss(n - a, k - a, q)
    ) / ((q - 1) * Fraction(q) ** (n - 2 * k))
    if cleared != original:
        raise AssertionError(f"inequality forms disagree at a={a}, n={n}, k={k}, q={q}")
    return cleared


def sandwich_applies(n: int, k: int, q: int) -> bool:
    r = n - 2 * k
    return k >= 3 and q >= 2 and r >= 4 and (r, q) != (4, 2)


def sandwich_terms(n: int, k: int, q: int) -> tuple[int, int, Fraction]:
    """(f, middle, lower) of the chain f > middle > lower."""
    r = n - 2 * k
    K = gauss(k, 1, q)
    middle = K * gauss(n - 2, k - 2, q) - q * gauss(k, 2, q) * gauss(n - 3, k - 3, q)
    lower = (1 - Fraction(1, q**r * (q * q - 1))) * K * gauss(n - 2, k - 2, q)
    return hm_size(n, k, q), middle, lower


def check_hm_sandwich(n: int, k: int, q: int) -> Optional[bool]:
    """Both strict inequalities of f > [k,1][n-2,k-2] - q[k,2][n-3,k-3] > (1 - 1/(q^r(q^2-1)))[k,1][n-2,k-2]."""
    if not sandwich_applies(n, k, q):
        return None
    f, middle, lower = sandwich_terms(n, k, q)
    return f > middle > lower


# -- named upper bounds --------------------------------------------------------


@dataclass(frozen=True)
class BoundSpec:
    id: str
    params: Mapping[str, int]


def _need(cond: bool, msg: str):
    if not cond:
        raise ValueError(msg)


def _cover_extension(n, k, q, s):
    _need(0 <= s <= k - 1 and k <= n, "need 0 <= s <= k-1, k <= n")
    return gauss(k, 1, q) * gauss(n - s - 1, k - s - 1, q)


def _cover_floor(n, k, q, s, i):
    _need(0 <= i <= s <= k <= n, "need 0 <= i <= s <= k <= n")
    return gauss(k, 1, q) ** (s - i) * gauss(n - s, k - s, q)


def _single_transversal(n, k, q):
    _need(3 <= k <= n, "need 3 <= k <= n")
    K = gauss(k, 1, q)
    return gauss(n - 2, k - 2, q) + q * (q + 1) * (K - 1) * K * gauss(n - 3, k - 3, q)


def _pencil_transversal(n, k, q, m):
    _need(k >= 3 and 2 <= m <= k and k <= n, "need 2 <= m <= k, 3 <= k <= n")
    K, M = gauss(k, 1, q), gauss(m, 1, q)
    return (
        M * gauss(n - 2, k - 2, q)
        + (K - M) * K * gauss(n - 3, k - 3, q)
        + (q ** (m + 1) + q**m - 1) * gauss(n - m, k - m, q)
    )


def _pencil_transversal_m2(n, k, q):
    _need(3 <= k <= n, "need 3 <= k <= n")
    K = gauss(k, 1, q)
    tail = K * gauss(n - 3, k - 3, q)
    return (q + 1) * gauss(n - 2, k - 2, q) + (K - q - 1) * tail + (q**3 + q * q - 1) * tail


def _plane_transversal(n, k, q):
    _need(3 <= k <= n, "need 3 <= k <= n")
    a, b = gauss(n - 2, k - 2, q), gauss(n - 3, k - 3, q)
    return q * gauss(3, 1, q) * (a - b) + b


def _plane_transversal_k3(n, k, q):
    _need(k == 3 and n >= 4, "need k == 3, n >= 4")
    return (q * q + q + 1) * gauss(n - 2, 1, q) - q * q - q


def _large_cover(n, k, q, t):
    _need(3 <= t <= k <= n, "need 3 <= t <= k <= n")
    return q ** (t - 1) * gauss(t, 1, q) * gauss(k, 1, q) ** (t - 1) * gauss(n - t, k - t, q)


BOUNDS: dict[str, tuple[Callable[..., int], tuple[str, ...]]] = {
    # |F_S| for an s-flat S missing some member
    "cover_extension": (_cover_extension, ("n", "k", "q", "s")),
    # |F_I| for an i-flat I when tau(F) >= s
    "cover_floor": (_cover_floor, ("n", "k", "q", "s", "i")),
    # tau(F) = 2 with a single covering 2-flat
    "single_transversal": (_single_transversal, ("n", "k", "q")),
    # tau(F) = 2, covering 2-flats share a line and span an (m+1)-flat
    "pencil_transversal": (_pencil_transversal, ("n", "k", "q", "m")),
    "pencil_transversal_m2": (_pencil_transversal_m2, ("n", "k", "q")),
    # tau(F) = 2, covering 2-flats lie in a common 3-flat
    "plane_transversal": (_plane_transversal, ("n", "k", "q")),
    "plane_transversal_k3": (_plane_transversal_k3, ("n", "k", "q")),
    # tau(F) = t >= 3
    "large_cover": (_large_cover, ("n", "k", "q", "t")),
}


def bound_value(spec: BoundSpec) -> BigCount:
    try:
        fn, names = BOUNDS[spec.id]
    except KeyError:
        raise ValueError(f"unknown bound id {spec.id!r}; known: {sorted(BOUNDS)}") from None
    missing = [x for x in names if x not in spec.params]
    if missing:
        raise ValueError(f"bound {spec.id} missing parameters {missing}")
    if spec.params["q"] < 2:
        raise ValueError("q must be >= 2")
    return fn(*(spec.params[x] for x in names))


# -- audit reports ------------------------------------------------------------

HOLDS, FAILS, EQUAL, NA = "holds", "fails", "equal", "not-applicable"
PARAM_COLUMNS = ("n", "k", "q", "a", "r", "m", "t")


@dataclass
class AuditRow:
    lemma_id: str
    params: dict
    lhs: object = None
    rhs: object = None
    verdict: str = NA
    note: str = ""


@dataclass
class AuditReport:
    grid: str
    rows: list = field(default_factory=list)

    def summary(self) -> dict:
        out = {HOLDS: 0, FAILS: 0, EQUAL: 0, NA: 0}
        for r in self.rows:
            out[r.verdict] += 1
        return out

    @property
    def failures(self) -> list:
        return [r for r in self.rows if r.verdict == FAILS]

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(("lemma_id",) + PARAM_COLUMNS + ("lhs", "rhs", "verdict", "note"))
        for r in self.rows:
            w.writerow(
                (r.lemma_id,)
                + tuple(r.params.get(c, "") for c in PARAM_COLUMNS)
                + (_fmt(r.lhs), _fmt(r.rhs), r.verdict, r.note)
            )
        return buf.getvalue()

    def to_json(self) -> str:
        rows = [dict(asdict(r), lhs=_fmt(r.lhs), rhs=_fmt(r.rhs)) for r in self.rows]
        return json.dumps({"grid": self.grid, "summary": self.summary(), "rows": rows}, indent=1)


def _fmt(x) -> str:
    if x is None:
        return ""
    return str(x)


def audit_product_inequality(points: Iterable[Mapping[str, int]], grid: str = "") -> AuditReport:
    report = AuditReport(grid)
    for p in points:
        a, n, k, q = p["a"], p["n"], p["k"], p["q"]
        row = AuditRow("2.6", {"a": a, "n": n, "k": k, "q": q})
        verdict = check_product_inequality(a, n, k, q)
        if verdict is not None:
            row.lhs, row.rhs = product_inequality_sides(a, n, k, q)
            row.verdict = HOLDS if verdict else FAILS
        report.rows.append(row)
    return report


def audit_hm_sandwich(points: Iterable[Mapping[str, int]], grid: str = "") -> AuditReport:
    report = AuditReport(grid)
    for p in points:
        n, k, q = _nkq(p)
        row = AuditRow("2.7", {"n": n, "k": k, "q": q, "r": n - 2 * k})
        verdict = check_hm_sandwich(n, k, q)
        if verdict is not None:
            f, middle, lower = sandwich_terms(n, k, q)
            row.lhs, row.rhs = f, lower
            row.note = f"middle={middle}"
            row.verdict = HOLDS if verdict else FAILS
        report.rows.append(row)
    return report


def _nkq(p: Mapping[str, int]) -> tuple[int, int, int]:
    k, q = p["k"], p["q"]
    n = p["n"] if "n" in p else 2 * k + p["r"]
    return n, k, q


def _dominance_rows(n: int, k: int, q: int) -> list:
    base = {"n": n, "k": k, "q": q, "r": n - 2 * k}
    if not hm_hypotheses_hold(n, k, q):
        return [AuditRow("dominance", base, note="outside hypotheses k>=3, n>=2k+4 (q>=3) or n>=2k+5 (q=2)")]
    f = hm_size(n, k, q)
    rows = []

    def strict(bound_id, extra=None, **kw):
        params = dict(base, **(extra or {}))
        value = bound_value(BoundSpec(bound_id, {"n": n, "k": k, "q": q, **kw}))
        rows.append(AuditRow(bound_id, params, value, f, HOLDS if value < f else FAILS))

    strict("single_transversal")
    for m in range(2, k):
        if m == 2:
            strict("pencil_transversal_m2", {"m": 2})
        else:
            strict("pencil_transversal", {"m": m}, m=m)
    if k >= 4:
        strict("plane_transversal")
    else:
        value = bound_value(BoundSpec("plane_transversal_k3", {"n": n, "k": k, "q": q}))
        f3 = f3_size(n, q)
        if value < f:
            verdict = HOLDS
        elif value == f and f3 == f:
            verdict = EQUAL
        else:
            verdict = FAILS
        rows.append(AuditRow("plane_transversal_k3", dict(base), value, f, verdict, note=f"f3_size={f3}"))
    for t in range(3, k + 1):
        strict("large_cover", {"t": t}, t=t)
    return rows


def dominance_audit(points: Iterable[Mapping[str, int]], grid: str = "") -> AuditReport:
    """Compare every case bound against f(n, k, q) on each grid point.

    Failures are recorded in the report, never raised.
    """
    report = AuditReport(grid)
    for p in points:
        report.rows.extend(_dominance_rows(*_nkq(p)))
    return report

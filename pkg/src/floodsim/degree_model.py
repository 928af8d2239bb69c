"""
Two-type degree sequences
=========================

A :class:`DegreeSpec` holds the four degree sequences of a graph with active
(type 1) and passive (type 2) nodes:

* ``d11`` -- active node, number of active neighbours
* ``d12`` -- active node, number of passive neighbours
* ``d21`` -- passive node, number of active neighbours
* ``d22`` -- passive node, number of passive neighbours

This module validates such specs (parity, bipartite balance, Erdős–Gallai and
Gale–Ryser realizability), computes the empirical statistics that enter the
flooding-time limit, reports finite-size diagnostics for the asymptotic
regularity conditions and builds reproducible family presets.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DegenerateSpecError,
    FamilyError,
    SpecStructureError,
    SubcriticalError,
)

__all__ = [
    "DegreeSpec",
    "DegreeStats",
    "ConditionDiagnostics",
    "RuleResult",
    "ValidationReport",
    "erdos_gallai",
    "gale_ryser",
    "validate_spec",
    "compute_stats",
    "theoretical_limit",
    "condition_diagnostics",
    "make_family",
    "FAMILIES",
]

MAX_DEGREE = 2**31 - 1
MAX_HALF_EDGES = 2**40


def _as_degrees(name, seq):
    arr = np.asarray(seq, dtype=np.int64)
    if arr.ndim != 1:
        raise SpecStructureError(f"{name} must be one-dimensional")
    if arr.size and arr.min() < 0:
        raise SpecStructureError(f"{name} has a negative entry")
    if arr.size and arr.max() > MAX_DEGREE:
        raise SpecStructureError(f"{name} has an entry above 2**31 - 1")
    arr = arr.copy()
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class DegreeSpec:
    """Degree sequences of a two-type configuration model.

    Active nodes are indexed ``0..n1-1`` and passive nodes ``0..n2-1`` within
    their own type. ``theorem_regime`` makes the minimum-degree checks
    (``min d11 >= 3``, ``min d21 >= 1``) part of :meth:`ValidationReport.ok`.
    """

    d11: np.ndarray
    d12: np.ndarray
    d21: np.ndarray
    d22: np.ndarray
    theorem_regime: bool = False

    def __post_init__(self):
        for name in ("d11", "d12", "d21", "d22"):
            object.__setattr__(self, name, _as_degrees(name, getattr(self, name)))
        if len(self.d11) != len(self.d12):
            raise SpecStructureError(
                f"d11 and d12 must both have n1 entries, got {len(self.d11)} and {len(self.d12)}"
            )
        if len(self.d21) != len(self.d22):
            raise SpecStructureError(
                f"d21 and d22 must both have n2 entries, got {len(self.d21)} and {len(self.d22)}"
            )
        if max(self.total_half_edges(), 0) > MAX_HALF_EDGES:
            raise SpecStructureError("total half-edge count exceeds 2**40")

    @property
    def n1(self) -> int:
        return len(self.d11)

    @property
    def n2(self) -> int:
        return len(self.d21)

    def total_half_edges(self) -> int:
        return int(self.d11.sum() + self.d12.sum() + self.d21.sum() + self.d22.sum())

    def __eq__(self, other):
        if not isinstance(other, DegreeSpec):
            return NotImplemented
        return all(
            np.array_equal(getattr(self, k), getattr(other, k))
            for k in ("d11", "d12", "d21", "d22")
        )

    def __repr__(self):
        return (
            f"DegreeSpec(n1={self.n1}, n2={self.n2}, sums="
            f"{int(self.d11.sum())}/{int(self.d12.sum())}/"
            f"{int(self.d21.sum())}/{int(self.d22.sum())})"
        )


# ---------------------------------------------------------------------------
# Graphicality
# ---------------------------------------------------------------------------


def erdos_gallai(degrees):
    """Test whether ``degrees`` is realizable by a simple graph.

    Returns ``(ok, k)`` where ``k`` is the first (1-based) index at which the
    Erdős–Gallai inequality

        sum_{i<=k} d_i <= k(k-1) + sum_{i>k} min(d_i, k)

    fails for the nonincreasing rearrangement, ``k = 0`` for odd degree sum and
    ``k = None`` when the sequence is graphical.
    """
    d = np.sort(np.asarray(degrees, dtype=np.int64))[::-1]
    n = d.size
    if n == 0:
        return True, None
    if int(d.sum()) % 2:
        return False, 0
    k = np.arange(1, n + 1, dtype=np.int64)
    lhs = np.cumsum(d)
    # suffix[i] = sum of d[i:], suffix[n] = 0
    suffix = np.concatenate([np.cumsum(d[::-1])[::-1], [0]])
    # p[k-1] = #{i : d_i >= k}; d is nonincreasing, so these form a prefix
    asc = d[::-1]
    p = n - np.searchsorted(asc, k, side="left")
    start = np.maximum(k, p)
    capped = np.maximum(p - k, 0) * k
    rhs = k * (k - 1) + capped + suffix[start]
    bad = np.nonzero(lhs > rhs)[0]
    if bad.size:
        return False, int(bad[0] + 1)
    return True, None


def gale_ryser(rows, cols):
    """Test whether a 0/1 matrix with row sums ``rows`` and column sums
    ``cols`` exists (equivalently, a simple bipartite graph with these
    degrees).

    Returns ``(ok, k)`` like :func:`erdos_gallai`; ``k = 0`` signals unequal
    totals.
    """
    a = np.sort(np.asarray(rows, dtype=np.int64))[::-1]
    b = np.asarray(cols, dtype=np.int64)
    if int(a.sum()) != int(b.sum()):
        return False, 0
    if a.size == 0:
        return True, None
    k = np.arange(1, a.size + 1, dtype=np.int64)
    lhs = np.cumsum(a)
    # sum_j min(b_j, k) = sum_{b_j < k} b_j + k * #{b_j >= k}
    bs = np.sort(b)
    pref = np.concatenate([[0], np.cumsum(bs)])
    below = np.searchsorted(bs, k, side="left")
    rhs = pref[below] + k * (bs.size - below)
    bad = np.nonzero(lhs > rhs)[0]
    if bad.size:
        return False, int(bad[0] + 1)
    return True, None


@dataclass(frozen=True)
class RuleResult:
    rule: str
    passed: bool
    detail: str
    required: bool = True


@dataclass(frozen=True)
class ValidationReport:
    results: tuple

    @property
    def ok(self) -> bool:
        return all(r.passed for r in self.results if r.required)

    def failed(self):
        return [r for r in self.results if r.required and not r.passed]

    def __getitem__(self, rule):
        for r in self.results:
            if r.rule == rule:
                return r
        raise KeyError(rule)

    def as_dict(self):
        return {
            "ok": self.ok,
            "rules": [
                {"rule": r.rule, "passed": r.passed, "required": r.required, "detail": r.detail}
                for r in self.results
            ],
        }


def validate_spec(spec: DegreeSpec) -> ValidationReport:
    """Run every structural check on ``spec``.

    The minimum-degree rules are always evaluated but only count towards
    :attr:`ValidationReport.ok` when ``spec.theorem_regime`` is set.
    """
    out = []
    s11, s22 = int(spec.d11.sum()), int(spec.d22.sum())
    out.append(RuleResult("parity_d11", s11 % 2 == 0, f"sum(d11) = {s11}"))
    out.append(RuleResult("parity_d22", s22 % 2 == 0, f"sum(d22) = {s22}"))
    s12, s21 = int(spec.d12.sum()), int(spec.d21.sum())
    out.append(
        RuleResult("balance", s12 == s21, f"rule (ii): sum(d12) = {s12}, sum(d21) = {s21}")
    )
    for name in ("d11", "d22"):
        ok, k = erdos_gallai(getattr(spec, name))
        detail = "graphical" if ok else (
            "odd degree sum" if k == 0 else f"Erdős–Gallai inequality fails at k={k}"
        )
        out.append(RuleResult(f"erdos_gallai_{name}", ok, detail))
    ok, k = gale_ryser(spec.d12, spec.d21)
    detail = "bigraphical" if ok else (
        "unequal totals" if k == 0 else f"Gale–Ryser inequality fails at k={k}"
    )
    out.append(RuleResult("gale_ryser", ok, detail))

    req = spec.theorem_regime
    m11 = int(spec.d11.min()) if spec.n1 else None
    out.append(
        RuleResult("min_d11", m11 is not None and m11 >= 3, f"min(d11) = {m11}, need >= 3", req)
    )
    m21 = int(spec.d21.min()) if spec.n2 else None
    out.append(
        RuleResult("min_d21", m21 is None or m21 >= 1, f"min(d21) = {m21}, need >= 1", req)
    )
    return ValidationReport(tuple(out))


# ---------------------------------------------------------------------------
# Statistics and the limit formula
# ---------------------------------------------------------------------------


def _empirical(seq):
    if len(seq) == 0:
        return {}
    counts = np.bincount(seq)
    n = len(seq)
    return {int(j): c / n for j, c in enumerate(counts) if c}


@dataclass(frozen=True)
class DegreeStats:
    """Empirical degree statistics of a spec.

    ``delta21`` is ``None`` when there are no passive nodes.
    """

    p11: dict
    p21: dict
    mu11: float
    nu11: float
    delta11: int
    delta21: int | None
    N: int
    n1: int
    n2: int


def compute_stats(spec: DegreeSpec) -> DegreeStats:
    if spec.n1 == 0 or not spec.d11.any():
        raise DegenerateSpecError("all d11 are zero, mu11 = 0")
    p11 = _empirical(spec.d11)
    mu11 = math.fsum(j * p for j, p in p11.items())
    nu11 = math.fsum(j * (j - 1) * p for j, p in p11.items()) / mu11
    return DegreeStats(
        p11=p11,
        p21=_empirical(spec.d21),
        mu11=mu11,
        nu11=nu11,
        delta11=int(spec.d11.min()),
        delta21=int(spec.d21.min()) if spec.n2 else None,
        N=int(spec.d12.sum()),
        n1=spec.n1,
        n2=spec.n2,
    )


def theoretical_limit(stats: DegreeStats, lambda11: float, lambda12: float) -> float:
    """Limit of ``Flood(A) / log(kappa)`` for a uniform active source.

        1 / (lambda11 (nu11 - 1)) + 1 / min(lambda11 delta11, lambda12 delta21)

    Without passive nodes the minimum runs over the active term only, which is
    the classical single-type value ``1/(nu - 1) + 1/d_min`` at unit rate.
    """
    if lambda11 <= 0 or lambda12 <= 0:
        raise ValueError("rates must be positive")
    if stats.nu11 <= 1:
        raise SubcriticalError(f"nu11 = {stats.nu11} <= 1")
    slowest = lambda11 * stats.delta11
    if stats.delta21 is not None:
        slowest = min(slowest, lambda12 * stats.delta21)
    if slowest == 0:
        return math.inf
    return 1.0 / (lambda11 * (stats.nu11 - 1.0)) + 1.0 / slowest


# ---------------------------------------------------------------------------
# Finite-size diagnostics
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ConditionDiagnostics:
    bs_ratio1: float
    # m -> (active tail fraction, passive tail fraction)
    bs_tail_fractions: dict
    # type (1 or 2) -> sum_j j^(2+eps) p_i1(j); None when the type is empty
    second_moment_proxy: dict
    epsilon: float
    flags: list = field(default_factory=list)


def condition_diagnostics(spec: DegreeSpec, epsilon: float = 0.1, m_grid=(1,)) -> ConditionDiagnostics:
    """Finite-size values of the bipartite and moment conditions.

    With ``s`` and ``t`` the decreasing rearrangements of ``d12`` and ``d21``,
    ``bs_ratio1 = sum_i s_i(s_i-1) * sum_j t_j(t_j-1) / N**2``. For every
    ``m`` in ``m_grid`` the tail fractions drop the ``min(max t, m)`` largest
    entries of ``s`` (resp. ``min(max s, m)`` of ``t``) and divide the
    remaining sum by ``N``; dropping at least the whole sequence gives 0.

    Nothing is judged here: the conditions concern families of specs.
    """
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    s = np.sort(spec.d12.astype(np.float64))[::-1]
    t = np.sort(spec.d21.astype(np.float64))[::-1]
    N = float(s.sum())
    flags = []
    if N <= 0:
        raise ValueError("N = sum(d12) must be positive")
    with np.errstate(over="ignore", invalid="ignore"):
        ratio = float(np.sum(s * (s - 1)) * np.sum(t * (t - 1)) / (N * N))
    if not math.isfinite(ratio):
        flags.append("bs_ratio1 not finite")
    s_max = int(s[0]) if s.size else 0
    t_max = int(t[0]) if t.size else 0
    tails = {}
    for m in m_grid:
        m = int(m)
        if m < 1:
            raise ValueError("m_grid entries must be >= 1")
        tails[m] = (float(s[min(t_max, m):].sum()) / N, float(t[min(s_max, m):].sum()) / N)
    proxy = {}
    for i, seq in ((1, spec.d11), (2, spec.d21)):
        if len(seq) == 0:
            proxy[i] = None
            continue
        p = _empirical(seq)
        with np.errstate(over="ignore"):
            val = math.fsum(float(j) ** (2 + epsilon) * pj for j, pj in p.items())
        if not math.isfinite(val):
            flags.append(f"second moment proxy of type {i} not finite")
        proxy[i] = val
    return ConditionDiagnostics(ratio, tails, proxy, epsilon, flags)


# ---------------------------------------------------------------------------
# Family presets
# ---------------------------------------------------------------------------


def _spread(n, count):
    """``count`` distinct indices spread evenly over ``range(n)``."""
    return np.unique(np.linspace(0, n - 1, count).round().astype(np.int64)) if count else np.array([], np.int64)


def _add_evenly(seq, extra):
    """Add ``extra`` half-edges to ``seq`` touching as few entries as possible."""
    seq = seq.copy()
    n = len(seq)
    if extra == 0:
        return seq
    if n == 0:
        raise FamilyError("cannot add half-edges to an empty sequence")
    seq += extra // n
    rem = extra % n
    idx = _spread(n, rem)
    # linspace rounding can collide only when rem > n / 2; top up in order
    if len(idx) < rem:
        rest = np.setdiff1d(np.arange(n), idx)[: rem - len(idx)]
        idx = np.concatenate([idx, rest])
    seq[idx] += 1
    return seq


def _fix_parity(seq, minimum=None):
    """Increment one entry if the sum is odd, never the unique minimum."""
    if int(seq.sum()) % 2 == 0:
        return seq
    seq = seq.copy()
    if len(seq) == 0:
        raise FamilyError("odd sum on an empty sequence")
    lo = seq.min()
    above = np.nonzero(seq > lo)[0]
    if len(above):
        seq[above[0]] += 1
    else:
        seq[0] += 1
    return seq


def _bipartite_part(n1, c1, c2):
    """Returns n2 and balanced (d12, d21) for constant targets c1, c2."""
    if c1 < 0 or c2 < 0:
        raise FamilyError("c1 and c2 must be nonnegative")
    if c1 == 0:
        return 0, np.zeros(n1, np.int64), np.zeros(0, np.int64)
    if c2 == 0:
        raise FamilyError("c1 > 0 requires c2 >= 1 so passive nodes reach active ones")
    n2 = max(1, int(round(n1 * c1 / c2)))
    d12 = np.full(n1, c1, np.int64)
    d21 = np.full(n2, c2, np.int64)
    diff = int(d12.sum() - d21.sum())
    if diff > 0:
        d21 = _add_evenly(d21, diff)
    elif diff < 0:
        d12 = _add_evenly(d12, -diff)
    return n2, d12, d21


def _passive_part(n2, e):
    if e < 0:
        raise FamilyError("e must be nonnegative")
    if n2 == 0:
        if e:
            raise FamilyError("e > 0 needs passive nodes")
        return np.zeros(0, np.int64)
    return _fix_parity(np.full(n2, e, np.int64))


def _biregular(kappa, a=3, c1=1, c2=1, e=0, n1_ratio=1.0, seed=0):
    if a < 3:
        raise FamilyError(f"a = {a}: the active degree must be at least 3")
    n1 = int(round(n1_ratio * kappa))
    if n1 < 2:
        raise FamilyError("n1 must be at least 2")
    d11 = _fix_parity(np.full(n1, a, np.int64))
    n2, d12, d21 = _bipartite_part(n1, c1, c2)
    return DegreeSpec(d11, d12, d21, _passive_part(n2, e), theorem_regime=True)


def _classical(kappa, a=3, n1_ratio=1.0, seed=0):
    return _biregular(kappa, a=a, c1=0, c2=0, e=0, n1_ratio=n1_ratio)


def _truncated_powerlaw(kappa, exponent=3.5, j_max=None, c1=1, c2=1, e=0, n1_ratio=1.0, seed=0):
    if exponent <= 1:
        raise FamilyError("exponent must exceed 1")
    if j_max is None:
        j_max = int(math.floor(kappa ** (1.0 / 3.0) + 1e-9))
    j_max = int(j_max)
    if j_max < 3:
        raise FamilyError(f"j_max = {j_max} < 3 leaves no admissible degree")
    n1 = int(round(n1_ratio * kappa))
    rng = np.random.default_rng(seed)
    support = np.arange(3, j_max + 1)
    w = support.astype(np.float64) ** (-exponent)
    d11 = rng.choice(support, size=n1, p=w / w.sum()).astype(np.int64)
    d11 = _fix_parity(d11)
    n2, d12, d21 = _bipartite_part(n1, c1, c2)
    return DegreeSpec(d11, d12, d21, _passive_part(n2, e), theorem_regime=True)


FAMILIES = {
    "biregular": _biregular,
    "classical": _classical,
    "truncated-powerlaw": _truncated_powerlaw,
}


def make_family(family: str, kappa: int, **params) -> DegreeSpec:
    """Build a theorem-regime spec of size ``Theta(kappa)``.

    ``biregular``
        ``d11 = a``, ``d12 = c1``, ``d21 = c2``, ``d22 = e`` with
        ``n1 = round(n1_ratio * kappa)`` and ``n2 = round(n1 * c1 / c2)``;
        the leftover imbalance is spread one half-edge per entry over the
        smaller side and odd sums are fixed by incrementing a single entry.
    ``classical``
        ``biregular`` without passive nodes.
    ``truncated-powerlaw``
        ``d11`` i.i.d. with ``P(j) ~ j**-exponent`` on ``[3, j_max]``
        (default ``j_max = floor(kappa**(1/3))``) drawn from ``seed``; the
        bipartite part is built as in ``biregular``.
    """
    if family not in FAMILIES:
        raise FamilyError(f"unknown family {family!r}; choose from {sorted(FAMILIES)}")
    if kappa < 10:
        raise FamilyError("kappa must be at least 10")
    try:
        spec = FAMILIES[family](int(kappa), **params)
    except TypeError as exc:
        raise FamilyError(f"bad parameters for {family}: {exc}") from None
    report = validate_spec(spec)
    if not report.ok:
        raise FamilyError(
            f"{family} at kappa={kappa} is infeasible: "
            + "; ".join(f"{r.rule} ({r.detail})" for r in report.failed())
        )
    return spec

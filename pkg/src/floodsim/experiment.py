"""
Seeded Monte Carlo replication over a grid of graph sizes.

Every replicate ``(kappa, r)`` owns the stream
``numpy.random.default_rng(derive_seed(base_seed, kappa, r))`` and consumes it
in a fixed order: graph generation, edge weights, then the source node. The
degree spec at each ``kappa`` is built once from the reserved stream
``derive_seed(base_seed, kappa, SPEC_STREAM)``. Records are sorted by
``(kappa, replicate)`` before aggregation, so worker count and scheduling do
not change any output.
"""

from __future__ import annotations

import logging
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .degree_model import compute_stats, make_family, theoretical_limit
from .errors import ExperimentAborted, GenerationSaturated, InsufficientData
from .fpp import flooding, sample_weights
from .graph_gen import generate_simple
from .seeding import DEFAULT_SEED, SPEC_STREAM, derive_seed

logger = logging.getLogger(__name__)

__all__ = [
    "ExperimentPlan",
    "ReplicateRecord",
    "KappaSummary",
    "ExperimentResult",
    "ConvergenceRow",
    "ConvergenceReport",
    "run_experiment",
    "run_replicate",
    "summarize",
    "convergence_report",
    "plan_spec",
    "plan_limits",
]

OK = "ok"
FAILED = "failed"
DISCARDED = "discarded"


@dataclass(frozen=True)
class ExperimentPlan:
    family: str
    kappa_grid: tuple
    replicates: int
    params: dict = field(default_factory=dict)
    lambda11: float = 1.0
    lambda12: float = 1.0
    base_seed: int = DEFAULT_SEED
    discard_unreachable: bool = True
    max_attempts: int = 1000
    erased: bool = False
    band: float | None = None

    def __post_init__(self):
        grid = tuple(int(k) for k in self.kappa_grid)
        object.__setattr__(self, "kappa_grid", grid)
        if not grid:
            raise ValueError("kappa_grid is empty")
        if any(b <= a for a, b in zip(grid, grid[1:])):
            raise ValueError("kappa_grid must be strictly increasing")
        if self.replicates < 1:
            raise ValueError("replicates must be at least 1")
        if self.lambda11 <= 0 or self.lambda12 <= 0:
            raise ValueError("rates must be positive")


@dataclass(frozen=True)
class ReplicateRecord:
    kappa: int
    replicate: int
    seed: int
    n1: int
    n2: int
    status: str
    attempt_count: int
    source: int
    flood: float
    flood1: float
    flood2: float
    normalized: float
    unreachable_count: int
    wall_time: float = 0.0


def plan_spec(plan: ExperimentPlan, kappa: int):
    seed = derive_seed(plan.base_seed, kappa, SPEC_STREAM)
    return make_family(plan.family, kappa, **{"seed": seed, **plan.params})


def plan_limits(plan: ExperimentPlan):
    """Theoretical limit at each kappa, from the realized spec's statistics."""
    return {
        k: theoretical_limit(compute_stats(plan_spec(plan, k)), plan.lambda11, plan.lambda12)
        for k in plan.kappa_grid
    }


def run_replicate(plan: ExperimentPlan, spec, kappa: int, replicate: int) -> ReplicateRecord:
    seed = derive_seed(plan.base_seed, kappa, replicate)
    rng = np.random.default_rng(seed)
    t0 = time.perf_counter()
    nan = math.nan
    try:
        g = generate_simple(spec, rng, max_attempts=plan.max_attempts, erased=plan.erased)
    except GenerationSaturated as exc:
        return ReplicateRecord(kappa, replicate, seed, spec.n1, spec.n2, FAILED,
                               exc.attempts, -1, nan, nan, nan, nan, -1,
                               time.perf_counter() - t0)
    wg = sample_weights(g, plan.lambda11, plan.lambda12, rng)
    source = int(rng.integers(spec.n1))
    res = flooding(wg, source)
    status = OK
    if res.unreachable_count and plan.discard_unreachable:
        status = DISCARDED
    return ReplicateRecord(
        kappa, replicate, seed, spec.n1, spec.n2, status, g.attempts, source,
        res.flood, res.flood1, res.flood2, res.flood / math.log(kappa),
        res.unreachable_count, time.perf_counter() - t0,
    )


def _run_chunk(plan, spec, kappa, replicates):
    return [run_replicate(plan, spec, kappa, r) for r in replicates]


@dataclass(frozen=True)
class KappaSummary:
    kappa: int
    n_success: int
    n_failed: int
    n_discarded: int
    median_norm: float
    mean_norm: float
    q10: float
    q90: float
    stderr: float
    limit: float

    @property
    def abs_gap(self) -> float:
        return abs(self.median_norm - self.limit)


@dataclass(frozen=True)
class ExperimentResult:
    plan: ExperimentPlan
    records: list
    summary: list
    limits: dict


def summarize(records, limits):
    """Per-kappa statistics of ``normalized`` over successful replicates."""
    out = []
    for kappa in sorted({r.kappa for r in records}):
        rows = [r for r in records if r.kappa == kappa]
        x = np.array([r.normalized for r in rows if r.status == OK], dtype=np.float64)
        n_failed = sum(r.status == FAILED for r in rows)
        n_discarded = sum(r.status == DISCARDED for r in rows)
        if x.size:
            q10, med, q90 = np.quantile(x, [0.1, 0.5, 0.9])
            mean = float(x.mean())
            se = float(x.std(ddof=1) / math.sqrt(x.size)) if x.size > 1 else math.nan
        else:
            q10 = med = q90 = mean = se = math.nan
        out.append(KappaSummary(kappa, int(x.size), n_failed, n_discarded,
                                float(med), mean, float(q10), float(q90), se,
                                limits.get(kappa, math.nan)))
    return out


def run_experiment(plan: ExperimentPlan, workers: int = 1, chunk_size: int = 25) -> ExperimentResult:
    """Run every replicate of ``plan``.

    Saturated generations are recorded with status ``failed`` and the run
    goes on; if more than half the replicates at one kappa fail,
    :class:`ExperimentAborted` is raised with that kappa's counts. With
    ``discard_unreachable`` a replicate whose source cannot reach every node
    gets status ``discarded`` and is left out of the summary.
    """
    records = []
    limits = {}
    pool = ProcessPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        for kappa in plan.kappa_grid:
            spec = plan_spec(plan, kappa)
            limits[kappa] = theoretical_limit(compute_stats(spec), plan.lambda11, plan.lambda12)
            reps = list(range(plan.replicates))
            chunks = [reps[i:i + chunk_size] for i in range(0, len(reps), chunk_size)]
            if pool is None:
                batch = [rec for c in chunks for rec in _run_chunk(plan, spec, kappa, c)]
            else:
                futures = [pool.submit(_run_chunk, plan, spec, kappa, c) for c in chunks]
                batch = [rec for f in futures for rec in f.result()]
            failed = sum(r.status == FAILED for r in batch)
            logger.info("kappa=%d: %d replicates, %d failed", kappa, len(batch), failed)
            if failed * 2 > len(batch):
                table = {
                    "kappa": kappa,
                    "replicates": len(batch),
                    "failed": failed,
                    "max_attempts": plan.max_attempts,
                }
                raise ExperimentAborted(kappa, table)
            records.extend(batch)
    finally:
        if pool is not None:
            pool.shutdown()
    records.sort(key=lambda r: (r.kappa, r.replicate))
    return ExperimentResult(plan, records, summarize(records, limits), limits)


@dataclass(frozen=True)
class ConvergenceRow:
    kappa: int
    n_success: int
    median_norm: float
    limit: float
    distance: float
    stderr: float


@dataclass(frozen=True)
class ConvergenceReport:
    rows: list
    inversions: int
    allowed_inversions: int
    band: float | None

    @property
    def trend_ok(self) -> bool:
        return self.inversions <= self.allowed_inversions

    @property
    def band_ok(self) -> bool:
        return self.band is None or self.rows[-1].distance <= self.band

    @property
    def passed(self) -> bool:
        return self.trend_ok and self.band_ok

    def verdict(self) -> str:
        return "PASS" if self.passed else "FAIL"


def convergence_report(records, limits, band=None, min_success=30) -> ConvergenceReport:
    """Distance of the median normalized flooding time to the limit per kappa.

    The trend passes when the distance never grows from one kappa to the
    next, except for at most one step when three or more kappas are present.
    ``band`` optionally bounds the distance at the largest kappa.
    """
    summary = summarize(records, limits)
    if len(summary) < 2:
        raise InsufficientData("need at least two kappa values")
    thin = [s.kappa for s in summary if s.n_success < min_success]
    if thin:
        raise InsufficientData(f"fewer than {min_success} successful replicates at kappa {thin}")
    rows = [ConvergenceRow(s.kappa, s.n_success, s.median_norm, s.limit, s.abs_gap, s.stderr)
            for s in summary]
    d = [r.distance for r in rows]
    inversions = sum(b > a for a, b in zip(d, d[1:]))
    allowed = 1 if len(rows) >= 3 else 0
    return ConvergenceReport(rows, inversions, allowed, band)

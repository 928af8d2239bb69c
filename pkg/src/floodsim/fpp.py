"""
First passage percolation along walkable paths.

A path is walkable when every node before its endpoint is active, so passive
nodes can be reached but never relay. Consequently distances between active
nodes are ordinary shortest-path distances in the active subgraph, and a
passive node is reached through its best active neighbour.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np
import scipy.sparse as sp
from scipy.sparse.csgraph import dijkstra

from .degree_model import DegreeStats
from .errors import OracleSizeError, PreconditionError, SubcriticalError
from .graph_gen import TypedMultigraph

__all__ = [
    "WeightedGraph",
    "FppResult",
    "sample_weights",
    "walkable_fpp",
    "flooding",
    "brute_force_fpp",
    "scale_parameters",
    "BRUTE_FORCE_MAX_NODES",
]

BRUTE_FORCE_MAX_NODES = 12


@dataclass(frozen=True, eq=False)
class WeightedGraph:
    """A typed graph with one weight per edge, aligned with ``graph.u``.

    Type-22 edges carry ``nan``: they are kept for bookkeeping but no passage
    time ever uses them.
    """

    graph: TypedMultigraph
    weights: np.ndarray

    def __post_init__(self):
        w = np.array(self.weights, dtype=np.float64)
        if w.shape != (self.graph.num_edges,):
            raise PreconditionError("need exactly one weight per edge")
        live = self.graph.etype != 22
        if np.any(~np.isfinite(w[live])) or np.any(w[live] <= 0):
            raise PreconditionError("type-11 and type-12 weights must be finite and > 0")
        w[~live] = np.nan
        w.flags.writeable = False
        object.__setattr__(self, "weights", w)

    @property
    def n1(self):
        return self.graph.n1

    @property
    def n(self):
        return self.graph.n

    def without_passive_edges(self) -> "WeightedGraph":
        g, keep = self.graph.without_type(22)
        return WeightedGraph(g, self.weights[keep])

    @cached_property
    def _active_csr(self):
        g = self.graph
        m = (g.etype == 11) & (g.u != g.v)
        u, v, w = g.u[m], g.v[m], self.weights[m]
        if len(u):
            # parallel edges sit next to each other in canonical order; keep the lightest
            start = np.ones(len(u), dtype=bool)
            start[1:] = (u[1:] != u[:-1]) | (v[1:] != v[:-1])
            idx = np.flatnonzero(start)
            u, v, w = u[idx], v[idx], np.minimum.reduceat(w, idx)
        return sp.csr_matrix((w, (u, v)), shape=(g.n1, g.n1))

    @cached_property
    def _bridge(self):
        g = self.graph
        m = g.etype == 12
        return g.u[m], g.v[m], self.weights[m]


@dataclass(frozen=True, eq=False)
class FppResult:
    source: int
    tau: np.ndarray
    n1: int
    flood1: float
    flood2: float
    flood: float
    flood_reachable: float
    unreachable_count: int
    reach_curve: np.ndarray | None = None

    def reach_time(self, k: int) -> float:
        """Time until ``k + 1`` active nodes (source included) are reached."""
        if k < 0:
            raise ValueError("k must be nonnegative")
        active = np.sort(self.tau[: self.n1])
        return float(active[k]) if k < len(active) else math.inf

    def reach_times(self, alpha: int, beta: int):
        """``(T(alpha), T(beta), T(beta) - T(alpha))``."""
        ta, tb = self.reach_time(alpha), self.reach_time(beta)
        return ta, tb, tb - ta


def sample_weights(g: TypedMultigraph, lambda11: float, lambda12: float, rng) -> WeightedGraph:
    """Independent ``Exp(lambda11)`` weights on type-11 edges and
    ``Exp(lambda12)`` on type-12 edges, by inversion ``-log(U) / rate``.

    One uniform is drawn per edge in canonical order (type-22 draws are
    discarded) so the stream consumption depends only on the edge count.
    """
    if lambda11 <= 0 or lambda12 <= 0:
        raise ValueError("rates must be positive")
    rng = np.random.default_rng(rng)
    u = rng.random(g.num_edges)
    zero = u == 0.0
    while zero.any():
        u[zero] = rng.random(int(zero.sum()))
        zero = u == 0.0
    rate = np.where(g.etype == 11, lambda11, lambda12).astype(np.float64)
    w = -np.log(u) / rate
    w[g.etype == 22] = np.nan
    return WeightedGraph(g, w)


def _check_source(wg, source):
    if not 0 <= source < wg.n:
        raise PreconditionError(f"source {source} is not a node")
    if source >= wg.n1:
        raise PreconditionError(f"source {source} is passive; only active nodes can flood")


def _tau_csgraph(wg, source):
    tau = np.full(wg.n, np.inf)
    tau[: wg.n1] = dijkstra(wg._active_csr, directed=False, indices=source)
    bu, bv, bw = wg._bridge
    np.minimum.at(tau, bv, tau[bu] + bw)
    return tau


def _tau_heap(wg, source):
    g = wg.graph
    adj = g.adjacency
    tau = np.full(g.n, np.inf)
    tau[source] = 0.0
    done = np.zeros(g.n, dtype=bool)
    heap = [(0.0, source)]
    while heap:
        d, x = heapq.heappop(heap)
        if done[x]:
            continue
        done[x] = True
        if x >= g.n1:
            # labelled, never expanded
            continue
        for k in range(adj.indptr[x], adj.indptr[x + 1]):
            y = adj.indices[k]
            e = adj.data[k] - 1
            if g.etype[e] == 22:
                continue
            nd = d + wg.weights[e]
            if nd < tau[y]:
                tau[y] = nd
                heapq.heappush(heap, (nd, y))
    return tau


def walkable_fpp(wg: WeightedGraph, source: int, method: str = "csgraph") -> FppResult:
    """Passage times from active ``source`` over walkable paths.

    ``method="csgraph"`` runs scipy's Dijkstra on the active subgraph and
    relaxes each active-passive edge once; ``method="heap"`` is a label-setting
    search over the whole graph that never expands passive nodes. Both give
    the same distances; unreachable nodes get ``inf``.
    """
    _check_source(wg, source)
    if method == "csgraph":
        tau = _tau_csgraph(wg, source)
    elif method == "heap":
        tau = _tau_heap(wg, source)
    else:
        raise ValueError(f"unknown method {method!r}")
    tau[source] = 0.0
    return _summarize(wg, source, tau, want_reach_curve=False)


def _max_or_zero(x):
    return float(x.max()) if x.size else 0.0


def _summarize(wg, source, tau, want_reach_curve):
    tau.flags.writeable = False
    n1 = wg.n1
    finite = np.isfinite(tau)
    unreachable = int(np.count_nonzero(~finite))
    flood1 = _max_or_zero(tau[:n1])
    flood2 = _max_or_zero(tau[n1:])
    curve = None
    if want_reach_curve:
        active = np.sort(tau[:n1][finite[:n1]])
        curve = active[1:].copy()
    return FppResult(
        source=int(source),
        tau=tau,
        n1=n1,
        flood1=flood1,
        flood2=flood2,
        flood=max(flood1, flood2),
        flood_reachable=_max_or_zero(tau[finite]),
        unreachable_count=unreachable,
        reach_curve=curve,
    )


def flooding(wg: WeightedGraph, source: int, want_reach_curve: bool = False,
             method: str = "csgraph") -> FppResult:
    """Flooding times of ``source``.

    ``flood1``/``flood2`` are the largest passage times to active/passive
    nodes (0 over an empty set) and ``flood`` their maximum; all three are
    ``inf`` as soon as a node of the relevant kind is unreachable, while
    ``flood_reachable`` is the maximum over reachable nodes only.

    With ``want_reach_curve`` the result carries ``reach_curve[k-1] = T(k)``,
    the time at which ``k + 1`` active nodes have been reached, for
    ``k = 1 .. (reachable active nodes) - 1``.
    """
    res = walkable_fpp(wg, source, method=method)
    if not want_reach_curve:
        return res
    return _summarize(wg, source, res.tau.copy(), want_reach_curve=True)


def brute_force_fpp(wg: WeightedGraph, source: int) -> FppResult:
    """Reference passage times by enumerating every simple walkable path.

    Exponential time; refuses graphs with more than 12 nodes.
    """
    g = wg.graph
    if g.n > BRUTE_FORCE_MAX_NODES:
        raise OracleSizeError(f"{g.n} nodes exceeds the brute-force cap of {BRUTE_FORCE_MAX_NODES}")
    _check_source(wg, source)
    nbrs = [[] for _ in range(g.n)]
    for (a, b, t), w in zip(g.edges(), wg.weights.tolist()):
        if t == 22 or a == b:
            continue
        nbrs[a].append((b, w))
        nbrs[b].append((a, w))

    best = [math.inf] * g.n
    best[source] = 0.0
    on_path = [False] * g.n

    def extend(x, dist):
        on_path[x] = True
        for y, w in nbrs[x]:
            if on_path[y]:
                continue
            d = dist + w
            if d < best[y]:
                best[y] = d
            if y < g.n1:
                extend(y, d)
        on_path[x] = False

    extend(source, 0.0)
    return _summarize(wg, source, np.array(best), want_reach_curve=False)


def scale_parameters(n1: int, stats: DegreeStats):
    """``alpha = floor(log(n1)**3)`` and
    ``beta = floor(3 sqrt(mu11 / (nu11 - 1) * n1 log n1))``, natural log."""
    if n1 < 2:
        raise ValueError("n1 must be at least 2")
    if stats.nu11 <= 1:
        raise SubcriticalError(f"nu11 = {stats.nu11} <= 1")
    ln = math.log(n1)
    alpha = math.floor(ln**3)
    beta = math.floor(3.0 * math.sqrt(stats.mu11 / (stats.nu11 - 1.0) * n1 * ln))
    return alpha, beta

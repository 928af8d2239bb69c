"""
Half-edge matching for the two-type configuration model.

Nodes of a :class:`TypedMultigraph` are numbered globally: active nodes are
``0..n1-1`` and passive nodes ``n1..n1+n2-1``. Edges are stored in canonical
order, sorted by ``(min endpoint, max endpoint, type)``, with ``u <= v``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np
import scipy.sparse as sp

from .degree_model import DegreeSpec
from .errors import GenerationSaturated, PreconditionError

__all__ = [
    "ACTIVE",
    "PASSIVE",
    "EDGE_TYPES",
    "TypedMultigraph",
    "SimplicityReport",
    "match_halfedges",
    "check_simple",
    "generate_simple",
    "erase",
]

ACTIVE = 1
PASSIVE = 2
EDGE_TYPES = (11, 12, 22)


def _frozen(arr, dtype):
    arr = np.ascontiguousarray(arr, dtype=dtype)
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class TypedMultigraph:
    n1: int
    n2: int
    u: np.ndarray
    v: np.ndarray
    etype: np.ndarray
    attempts: int = 1
    erased: bool = False

    def __post_init__(self):
        u = np.asarray(self.u, dtype=np.int64)
        v = np.asarray(self.v, dtype=np.int64)
        lo, hi = np.minimum(u, v), np.maximum(u, v)
        et = _edge_type(lo, hi, self.n1)
        n = self.n1 + self.n2
        if lo.size and (lo.min() < 0 or hi.max() >= n):
            raise PreconditionError("edge endpoint out of range")
        given = np.asarray(self.etype, dtype=np.int64) if self.etype is not None else et
        if given.shape != et.shape or not np.array_equal(given, et):
            raise PreconditionError("edge type disagrees with endpoint types")
        order = np.lexsort((et, hi, lo))
        object.__setattr__(self, "u", _frozen(lo[order], np.int64))
        object.__setattr__(self, "v", _frozen(hi[order], np.int64))
        object.__setattr__(self, "etype", _frozen(et[order], np.int16))

    @classmethod
    def from_edges(cls, n1, n2, edges, **kw):
        edges = np.asarray(list(edges), dtype=np.int64).reshape(-1, 2)
        return cls(n1, n2, edges[:, 0], edges[:, 1], None, **kw)

    @property
    def n(self) -> int:
        return self.n1 + self.n2

    @property
    def num_edges(self) -> int:
        return len(self.u)

    def node_type(self, node) -> int:
        return ACTIVE if node < self.n1 else PASSIVE

    def original_index(self, node) -> int:
        """Index of ``node`` within its own type."""
        return node if node < self.n1 else node - self.n1

    @cached_property
    def node_types(self) -> np.ndarray:
        t = np.full(self.n, PASSIVE, dtype=np.int8)
        t[: self.n1] = ACTIVE
        t.flags.writeable = False
        return t

    def edges(self):
        """Canonical ``(u, v, type)`` triples."""
        return list(zip(self.u.tolist(), self.v.tolist(), self.etype.tolist()))

    @cached_property
    def adjacency(self) -> sp.csr_matrix:
        """Edge-index adjacency: row ``x`` lists ``(neighbour, edge id + 1)``."""
        m = self.num_edges
        ids = np.arange(1, m + 1)
        rows = np.concatenate([self.u, self.v])
        cols = np.concatenate([self.v, self.u])
        data = np.concatenate([ids, ids])
        # keep self-loops once
        keep = np.concatenate([np.ones(m, bool), self.u != self.v])
        return _csr_no_sum(rows[keep], cols[keep], data[keep], self.n)

    def neighbours(self, node):
        """``(neighbour, edge id)`` pairs incident to ``node``; loops listed once."""
        a = self.adjacency
        lo, hi = a.indptr[node], a.indptr[node + 1]
        return list(zip(a.indices[lo:hi].tolist(), (a.data[lo:hi] - 1).tolist()))

    def degrees(self):
        """Per-node incident edge counts by type, loops counted twice.

        Returns a dict mapping ``"d11"``, ``"d12"``, ``"d21"``, ``"d22"`` to
        arrays in the same layout as :class:`DegreeSpec`.
        """
        out = {}
        for t, name_a, name_b in ((11, "d11", None), (12, "d12", "d21"), (22, None, "d22")):
            mask = self.etype == t
            cnt = np.bincount(
                np.concatenate([self.u[mask], self.v[mask]]), minlength=self.n
            )
            if name_a:
                out[name_a] = cnt[: self.n1]
            if name_b:
                out[name_b] = cnt[self.n1:]
        return out

    def to_spec(self, theorem_regime=False) -> DegreeSpec:
        d = self.degrees()
        return DegreeSpec(d["d11"], d["d12"], d["d21"], d["d22"], theorem_regime)

    def without_type(self, etype):
        """Copy with every edge of type ``etype`` removed, plus the kept mask."""
        keep = self.etype != etype
        g = TypedMultigraph(self.n1, self.n2, self.u[keep], self.v[keep], None,
                            attempts=self.attempts, erased=self.erased)
        return g, keep


def _csr_no_sum(rows, cols, data, n):
    # csr_matrix would add duplicate (row, col) entries; parallel edges must stay separate
    order = np.lexsort((data, cols, rows))
    rows, cols, data = rows[order], cols[order], data[order]
    indptr = np.concatenate([[0], np.cumsum(np.bincount(rows, minlength=n))])
    return sp.csr_matrix((data, cols, indptr), shape=(n, n))


def _edge_type(lo, hi, n1):
    et = np.full(lo.shape, 12, dtype=np.int64)
    et[hi < n1] = 11
    et[lo >= n1] = 22
    return et


@dataclass(frozen=True)
class SimplicityReport:
    self_loop_count: dict
    parallel_edge_count: dict

    @property
    def is_simple(self) -> bool:
        return not any(self.self_loop_count.values()) and not any(self.parallel_edge_count.values())

    @property
    def total_self_loops(self):
        return sum(self.self_loop_count.values())

    @property
    def total_parallel_edges(self):
        return sum(self.parallel_edge_count.values())


def _pairs(stubs, rng):
    perm = rng.permutation(stubs)
    return perm[0::2], perm[1::2]


def match_halfedges(spec: DegreeSpec, rng) -> TypedMultigraph:
    """Uniform random pairing of half-edges under the two type rules.

    Type-11 stubs are perfectly matched among themselves, as are type-22
    stubs; type-12 stubs are matched to type-21 stubs by a uniform bijection.
    Each matching is a Fisher–Yates shuffle followed by sequential pairing.
    ``rng`` is a :class:`numpy.random.Generator` (or a seed).
    """
    rng = np.random.default_rng(rng)
    if spec.d11.sum() % 2 or spec.d22.sum() % 2:
        raise PreconditionError("sum(d11) and sum(d22) must be even")
    if spec.d12.sum() != spec.d21.sum():
        raise PreconditionError("sum(d12) must equal sum(d21)")
    n1 = spec.n1
    active = np.arange(n1, dtype=np.int64)
    passive = np.arange(n1, n1 + spec.n2, dtype=np.int64)

    u11, v11 = _pairs(np.repeat(active, spec.d11), rng)
    u22, v22 = _pairs(np.repeat(passive, spec.d22), rng)
    u12 = np.repeat(active, spec.d12)
    v12 = rng.permutation(np.repeat(passive, spec.d21))

    u = np.concatenate([u11, u12, u22])
    v = np.concatenate([v11, v12, v22])
    return TypedMultigraph(n1, spec.n2, u, v, None)


def check_simple(g: TypedMultigraph) -> SimplicityReport:
    loops = {t: 0 for t in EDGE_TYPES}
    parallel = {t: 0 for t in EDGE_TYPES}
    if g.num_edges:
        is_loop = g.u == g.v
        dup = np.zeros(g.num_edges, dtype=bool)
        # canonical order puts copies of an edge next to each other
        dup[1:] = (g.u[1:] == g.u[:-1]) & (g.v[1:] == g.v[:-1])
        for t in EDGE_TYPES:
            m = g.etype == t
            loops[t] = int(np.count_nonzero(is_loop & m))
            parallel[t] = int(np.count_nonzero(dup & m))
    return SimplicityReport(loops, parallel)


def erase(g: TypedMultigraph) -> TypedMultigraph:
    """Drop self-loops and merge parallel edges. Off-model: degrees change."""
    keep = g.u != g.v
    keep[1:] &= ~((g.u[1:] == g.u[:-1]) & (g.v[1:] == g.v[:-1]))
    return TypedMultigraph(g.n1, g.n2, g.u[keep], g.v[keep], None,
                           attempts=g.attempts, erased=True)


def generate_simple(spec: DegreeSpec, rng, max_attempts: int = 1000, erased: bool = False) -> TypedMultigraph:
    """Sample a uniform simple graph with the typed degrees of ``spec``.

    Whole matchings are redrawn until the result is simple; ``attempts`` on the
    returned graph counts the draws. With ``erased=True`` the first matching
    is returned after :func:`erase` instead, which is fast but does not
    preserve the degree sequence.

    Raises :class:`GenerationSaturated` after ``max_attempts`` failures.
    """
    rng = np.random.default_rng(rng)
    if max_attempts < 1:
        raise ValueError("max_attempts must be positive")
    if erased:
        return erase(match_halfedges(spec, rng))
    report = None
    for attempt in range(1, max_attempts + 1):
        g = match_halfedges(spec, rng)
        report = check_simple(g)
        if report.is_simple:
            object.__setattr__(g, "attempts", attempt)
            return g
    raise GenerationSaturated(max_attempts, report)

import itertools

import numpy as np
import pytest

from floodsim.fpp import WeightedGraph
from floodsim.graph_gen import TypedMultigraph

# criterion number -> (passed, detail); filled by test_acceptance.py
ACCEPTANCE_RESULTS = {}


def random_weighted_graph(rng, n, p=0.4, n1=None, with_22=True):
    """Simple graph on ``n`` nodes with random types, edges and weights."""
    if n1 is None:
        n1 = int(rng.integers(1, n + 1))
    edges = [
        (a, b) for a, b in itertools.combinations(range(n), 2)
        if rng.random() < p and (with_22 or a < n1 or b < n1)
    ]
    g = TypedMultigraph.from_edges(n1, n - n1, edges)
    w = rng.uniform(0.05, 2.0, size=g.num_edges)
    return WeightedGraph(g, np.where(g.etype == 22, np.nan, w))


@pytest.fixture
def make_weighted_graph():
    return random_weighted_graph


@pytest.fixture
def acceptance_log():
    def log(criterion, passed, detail):
        ACCEPTANCE_RESULTS[criterion] = (bool(passed), detail)
    return log


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_RESULTS):
        passed, detail = ACCEPTANCE_RESULTS[k]
        terminalreporter.write_line(f"[{'PASS' if passed else 'FAIL'}] criterion {k}: {detail}")

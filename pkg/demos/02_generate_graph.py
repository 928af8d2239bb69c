"""
Sampling a simple typed graph
=============================

Half-edges are paired uniformly at random and the whole matching is thrown
away whenever it contains a self-loop or a repeated edge. With bounded
degrees the acceptance rate stays roughly constant as the graph grows.
"""

import numpy as np

from floodsim import check_simple, generate_simple, match_halfedges
from floodsim.degree_model import make_family

rng = np.random.default_rng(2024)
spec = make_family("biregular", 200, a=3, c1=1, c2=1, e=1)

# One raw matching: usually a multigraph.
raw = match_halfedges(spec, rng)
rep = check_simple(raw)
print("raw matching: loops", rep.self_loop_count, "parallel", rep.parallel_edge_count)

g = generate_simple(spec, rng)
print(f"simple graph after {g.attempts} attempt(s): {g.num_edges} edges, simple={check_simple(g).is_simple}")

# The realised degrees reproduce the requested sequences exactly.
assert g.to_spec() == spec
counts = {t: int(np.count_nonzero(g.etype == t)) for t in (11, 12, 22)}
print("edges by type:", counts)

# How many attempts does rejection need at different sizes?
for kappa in (100, 1000, 10000):
    s = make_family("biregular", kappa, a=3, c1=1, c2=1, e=0)
    tries = [generate_simple(s, rng).attempts for _ in range(20)]
    print(f"kappa={kappa:>6}: mean attempts {np.mean(tries):.2f}, max {max(tries)}")

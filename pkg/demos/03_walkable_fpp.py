"""
Passage times when passive nodes cannot relay
=============================================

Every edge gets an exponential weight. Information moves along active-active
edges and may finish its trip on a passive node, but a passive node never
forwards anything. The flooding time is the largest passage time from the
source.
"""

import numpy as np

from floodsim import TypedMultigraph, WeightedGraph, brute_force_fpp, flooding, walkable_fpp

# A tiny hand-made example: 0 - 1 - 2 are active, 3 is passive and touches 0 and 2.
g = TypedMultigraph.from_edges(3, 1, [(0, 1), (1, 2), (0, 3), (2, 3)])
# Weights follow the canonical edge order printed below.
print("edges:", g.edges())
wg = WeightedGraph(g, [1.0, 0.1, 1.0, 0.1])
print("tau from 0:", walkable_fpp(wg, 0).tau)
# Going 0 -> 3 -> 2 would cost 0.2, but 3 is passive, so node 2 is reached at 2.0.
print("exhaustive search agrees:", brute_force_fpp(wg, 0).tau)

res = flooding(wg, 0, want_reach_curve=True)
print(f"flood1={res.flood1} flood2={res.flood2} flood={res.flood}")
print("time to reach the k-th other active node:", res.reach_curve)

# Removing passive-passive edges never changes anything.
g22 = TypedMultigraph.from_edges(3, 2, [(0, 1), (1, 2), (0, 3), (3, 4), (2, 4)])
print("\nedges:", g22.edges())
wg22 = WeightedGraph(g22, [1.0, 0.3, 1.0, 0.2, np.nan])
print("with 22 edge:", walkable_fpp(wg22, 0).tau)
print("without    :", walkable_fpp(wg22.without_passive_edges(), 0).tau)

"""Score of the V2-V6 recommendation through V3 in the six-node example.

    python scripts/six_node_example.py
"""

from evograph.model import EdgeAttr, SocialGraph
from evograph.scoring import MeanKind, best_witness

V2, V3, V6 = 0, 1, 2
THRESHOLD = 6

g = SocialGraph(3)
g.add_edge(V2, V3, EdgeAttr({2, 3, 4}, 9))
g.add_edge(V3, V6, EdgeAttr({1, 2, 3, 4}, 10))

for mean in MeanKind:
    res = best_witness(g, V2, V6, mean)
    verdict = "recommend" if res.score > THRESHOLD else "skip"
    print(f"{mean.value:10s} witness=V3 common={sorted(res.common_factors)} score={res.score:.4f} -> {verdict}")

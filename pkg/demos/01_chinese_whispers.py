"""
Chinese Whispers on two weakly joined cliques
=============================================

Every node starts in its own cluster and repeatedly adopts the label that
carries the most edge weight among its neighbours.
"""

import itertools

from semclasses import CwParams, WeightedGraph, chinese_whispers

g = WeightedGraph()
for clique in (["apple", "mango", "pear", "plum"], ["Java", "Perl", "Ruby"]):
    for a, b in itertools.combinations(clique, 2):
        g.add_edge(a, b, 1.0)

# a single weak bridge, 15% of the clique weight
g.add_edge("apple", "Java", 0.15)

###############################################################################
# The visit order is drawn from a seeded generator, so a fixed seed always
# gives the same clustering. The trace hook shows each node's vote.

def show(node, old, new, weights):
    print(f"  {node:6s} {old} -> {new}  {weights}")

result = chinese_whispers(g, CwParams(seed=3), trace=show)
for cluster in result.clusters():
    print(sorted(cluster))

###############################################################################
# Different seeds change the visit order but not the answer here.

for seed in range(5):
    print(seed, [sorted(c) for c in chinese_whispers(g, CwParams(seed=seed)).clusters()])

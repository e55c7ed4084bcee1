"""
From a sense inventory to labelled semantic classes
===================================================

The bundled fixture has 50 senses: fruits, programming languages, animals,
cars and a few stragglers. "Python" has an animal sense that also leaks
into car names, which the coherence filter has to deal with.
"""

from semclasses import (
    CoherenceParams,
    CwParams,
    GlobalGraphParams,
    LabelingParams,
    SenseId,
    build_ego_network,
    coherence_filter,
    read_inventory,
)
from semclasses.data import fixture_path
from semclasses.global_graph import read_noun_lexicon
from semclasses.pipeline import coherent_ego_networks, global_graph, label_classes
from semclasses.classes import induce_classes

inv = read_inventory(fixture_path("inventory.tsv"))
print(len(inv), "senses")

###############################################################################
# Ego network of Python#1: the sense, its neighbours and theirs.

ego = SenseId("Python", 1)
net = build_ego_network(inv, ego)
print(len(net.graph), "nodes,", net.graph.num_edges(), "edges")

###############################################################################
# With the default 0.8 threshold the car neighbours sink the network. A
# looser threshold keeps it, pruned to the animal cluster.

cw = CwParams(seed=42)
print("0.8:", coherence_filter(net, CoherenceParams(0.8, cw)))
kept = coherence_filter(net, CoherenceParams(0.5, cw))
print("0.5:", sorted(str(s) for s in kept.graph.nodes))

###############################################################################
# Stream every coherent ego network into one global graph, drop weak edges,
# log-scale the rest and keep nouns only.

params = GlobalGraphParams(min_weight=2, edge_scaling="log", nouns_only=True)
nets = coherent_ego_networks(inv, CoherenceParams(0.8, cw))
g = global_graph(nets, params, read_noun_lexicon(fixture_path("nouns.txt")))
print(len(g), "nodes,", g.num_edges(), "edges in the global graph")

###############################################################################
# Cluster the global graph and label each class with its top tf-idf
# hypernyms, each mapped to the sense that best fits the class.

classes = label_classes(induce_classes(g, cw), inv, LabelingParams("tfidf", top_n=3))
for c in classes:
    labels = ", ".join(f"{s} ({w:.1f})" for s, w in c.labels)
    print(f"{c.id}: {labels}\n   {' '.join(c.member_lemmas)}")

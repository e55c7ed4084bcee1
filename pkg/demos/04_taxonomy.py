"""
A small food taxonomy
=====================

Expand the seed terms through the inventory, keep the classes that touch
the expanded vocabulary and link members to labels.
"""

import sys

from semclasses import DomainSpec, domain_classes, expand_vocabulary, induce_taxonomy, read_inventory
from semclasses.data import fixture_path
from semclasses.pipeline import semantic_classes
from semclasses import CoherenceParams, CwParams, GlobalGraphParams
from semclasses.global_graph import read_noun_lexicon
from semclasses.taxonomy import read_seeds, write_semeval

inv = read_inventory(fixture_path("inventory.tsv"))
spec = DomainSpec("food", read_seeds(fixture_path("food_seeds.txt")))

vocab = expand_vocabulary(spec, inv)
print("added by expansion:", sorted(vocab - spec.seeds))

###############################################################################
# A seed sense must share at least five terms with the seed list before its
# neighbours are trusted. Raising the bar shrinks the vocabulary.

for k in (3, 5, 7):
    print(k, len(expand_vocabulary(DomainSpec("food", spec.seeds, k), inv)))

###############################################################################
# Classes from the full pipeline, then the domain filter.

cw = CwParams(seed=42)
classes = semantic_classes(
    inv,
    coherence=CoherenceParams(0.8, cw),
    graph_params=GlobalGraphParams(2, "log", True),
    cw=cw,
    nouns=read_noun_lexicon(fixture_path("nouns.txt")),
)
domain = domain_classes(classes, vocab)
print(len(domain), "of", len(classes), "classes belong to the domain")

###############################################################################
# SemEval 2016 task 13 output.

write_semeval(sys.stdout, induce_taxonomy(domain, spec))

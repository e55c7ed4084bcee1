"""
Cleaning a noisy hypernym database
==================================

Pattern-based extraction says apple is a company and has nothing at all
for mangosteen. Class labels fix both.
"""

from semclasses import SemanticClass, SenseId, baseline_top_k, enhance, read_hypernym_db
from semclasses.data import fixture_path

db = read_hypernym_db(fixture_path("hypernyms.tsv"))
for word in ("apple", "mango", "mangosteen"):
    print(word, baseline_top_k(db, word, k=3))

###############################################################################
# A fruit class as the clustering stage would produce it.

fruit = SemanticClass(
    0,
    frozenset(SenseId(w, 0) for w in ("apple", "mango", "pear", "mangosteen")),
    ((SenseId("fruit", 0), 4.2), (SenseId("food", 0), 2.6)),
)

###############################################################################
# Clustered words get exactly the class labels. Pairs the database already
# had are tagged ``original``; the rest are new. Words outside every class
# (zebra, tiger, Java ...) pass through.

for r in enhance(db, [fruit]):
    print(f"{r.hyponym:11s} {r.hypernym:9s} {r.source}")

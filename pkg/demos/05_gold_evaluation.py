"""
Scoring classes against a lexical resource
==========================================

A toy WordNet-like resource: food > fruit > {apple, mango, pear}.
"""

from semclasses import SemanticClass, SenseId, gold_lch_set, hpc_avg, parse_gold, pscore, spd

gold = parse_gold(
    ["entity.n.01\tentity\n", "food.n.01\tfood\n", "fruit.n.01\tfruit\n",
     "apple.n.01\tapple\n", "mango.n.01\tmango\n", "pear.n.01\tpear\n"],
    ["food.n.01\tentity.n.01\n", "fruit.n.01\tfood.n.01\n",
     "apple.n.01\tfruit.n.01\n", "mango.n.01\tfruit.n.01\n", "pear.n.01\tfruit.n.01\n"],
)

print("spd(apple, mango) =", spd(gold, "apple.n.01", "mango.n.01"))
print("pscore =", pscore(gold, ["apple", "mango", "pear"]))
print("gold labels:", gold_lch_set(gold, ["apple", "mango", "pear"]))

###############################################################################
# Half the members are unknown to the resource, and one of the two labels
# is the lowest common hypernym: h = 0.5, p = 2, coverage = 0.5.

members = ["apple", "mango", "pear", "kiwi", "durian", "rambutan"]
c = SemanticClass(0, frozenset(SenseId(m, 0) for m in members),
                  ((SenseId("fruit", 0), 3.0), (SenseId("food", 0), 1.0)))
avg, (score,) = hpc_avg(gold, [c])
print(score)
print("hpc_avg =", avg)

###############################################################################
# A tighter label set scores higher. A wrong label has hscore 0 but keeps
# a small floor from the +1 smoothing.

for labels in (["fruit"], ["fruit", "food"], ["car"]):
    c2 = SemanticClass(0, c.members, tuple((SenseId(h, 0), 1.0) for h in labels))
    print(labels, hpc_avg(gold, [c2])[0])

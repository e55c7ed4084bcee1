"""Semantic classes: global sense clusters labelled with ranked hypernyms."""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Iterable, Iterator, TextIO

from .graph import CwParams, WeightedGraph, chinese_whispers
from .sense_inventory import ParseError, SenseId, SenseInventory, format_weight

WEIGHTINGS = ("tf", "tfidf")


@dataclass(frozen=True)
class SemanticClass:
    id: int
    members: frozenset
    labels: tuple = ()  # ((SenseId, score), ...), best first
    unmapped: frozenset = field(default=frozenset(), compare=False)

    @property
    def member_lemmas(self) -> list[str]:
        return sorted({s.lemma for s in self.members})

    @property
    def label_lemmas(self) -> list[str]:
        out: list[str] = []
        for s, _ in self.labels:
            if s.lemma not in out:
                out.append(s.lemma)
        return out


@dataclass(frozen=True)
class LabelingParams:
    weighting: str = "tfidf"
    top_n: int = 5

    def __post_init__(self):
        if self.weighting not in WEIGHTINGS:
            raise ValueError(f"weighting must be one of {WEIGHTINGS}")
        if self.top_n < 1:
            raise ValueError("top_n must be >= 1")


def induce_classes(g: WeightedGraph, cw: CwParams = CwParams()) -> list[SemanticClass]:
    clusters = chinese_whispers(g, cw).clusters()
    return [SemanticClass(i, frozenset(c)) for i, c in enumerate(clusters)]


def hypernym_scores(c: SemanticClass, inv: SenseInventory, params: LabelingParams = LabelingParams()) -> dict[str, float]:
    """Score every hypernym lemma found among the class members.

    tf is the summed hypernym weight over members (all sense tags of a
    lemma pooled); idf is ``ln(|inventory| / #senses listing the lemma)``.
    """
    tf: dict[str, float] = {}
    for s in sorted(c.members):
        if s not in inv:
            raise KeyError(f"class {c.id} member {s} is not in the inventory")
        for h, w in inv.hypernyms(s).items():
            tf[h.lemma] = tf.get(h.lemma, 0.0) + w
    if params.weighting == "tf":
        return tf
    df = inv.hypernym_document_frequency()
    n = len(inv)
    return {h: v * math.log(n / df[h]) for h, v in tf.items()}


def _bag(weights: dict) -> dict[str, float]:
    bag: dict[str, float] = {}
    for s, w in weights.items():
        bag[s.lemma] = bag.get(s.lemma, 0.0) + w
    return bag


def cosine(a: dict, b: dict) -> float:
    if len(a) > len(b):
        a, b = b, a
    dot = sum(w * b[k] for k, w in a.items() if k in b)
    if dot == 0.0:
        return 0.0
    # hypot rescales internally, so tiny weights do not underflow to 0
    return min(1.0, dot / math.hypot(*a.values()) / math.hypot(*b.values()))


def disambiguate_hypernym(h: str, c: SemanticClass, inv: SenseInventory) -> SenseId:
    """Pick the sense of ``h`` whose neighbourhood best matches the class.

    Unknown lemmas map to ``h#0`` (not an inventory sense; callers check
    membership to detect it).
    """
    senses = sorted(inv.lemma_senses(h), key=lambda s: s.sense)
    if not senses:
        return SenseId(h, 0)
    if len(senses) == 1:
        return senses[0]
    context = {s.lemma: 1.0 for s in c.members}
    best, best_sim = senses[0], 0.0
    for s in senses:
        sim = cosine(context, _bag(inv.neighbors(s)))
        if sim > best_sim:
            best, best_sim = s, sim
    return best


def label_class(c: SemanticClass, inv: SenseInventory, params: LabelingParams = LabelingParams()) -> SemanticClass:
    scores = hypernym_scores(c, inv, params)
    ranked = sorted(scores.items(), key=lambda kv: (-kv[1], kv[0]))[: params.top_n]
    labels = []
    unmapped = set()
    for h, score in ranked:
        sense = disambiguate_hypernym(h, c, inv)
        if sense not in inv:
            unmapped.add(h)
        labels.append((sense, score))
    return replace(c, labels=tuple(labels), unmapped=frozenset(unmapped))


def format_class(c: SemanticClass) -> str:
    labels = ",".join(f"{s}:{format_weight(w)}" for s, w in c.labels)
    members = ",".join(str(s) for s in sorted(c.members))
    return f"{c.id}\t{len(c.members)}\t{labels}\t{members}\n"


def write_classes(fp: TextIO, classes: Iterable[SemanticClass]) -> None:
    """``class_id<TAB>member_count<TAB>label#s:score,...<TAB>member#s,...``"""
    for c in classes:
        fp.write(format_class(c))


def parse_classes(lines: Iterable[str], source: str | None = None) -> Iterator[SemanticClass]:
    for lineno, line in enumerate(lines, 1):
        line = line.rstrip("\n")
        if not line:
            continue
        try:
            cid, count, labels_field, members_field = line.split("\t")
            members = frozenset(SenseId.parse(m) for m in members_field.split(",") if m)
            if len(members) != int(count) or not members:
                raise ValueError(f"member count {count} does not match {len(members)} members")
            labels = []
            for item in filter(None, labels_field.split(",")):
                text, _, score = item.rpartition(":")
                labels.append((SenseId.parse(text), float(score)))
        except ValueError as exc:
            raise ParseError(str(exc), lineno, source) from None
        yield SemanticClass(int(cid), members, tuple(labels))


def read_classes(path) -> list[SemanticClass]:
    with open(path, encoding="utf-8") as fp:
        return list(parse_classes(fp, source=str(path)))

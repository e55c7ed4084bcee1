"""Agreement of labelled classes with a gold synset graph (hpc score family)."""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence, TextIO

from .classes import SemanticClass
from .sense_inventory import ParseError

INF = math.inf


class GoldResource:
    """Synsets with their lemmas and a hypernym DAG (child -> parents)."""

    def __init__(self, synsets: dict[str, frozenset], hypernym_edges: dict[str, set]):
        self.synsets = synsets
        self.hypernym_edges = {s: set(hypernym_edges.get(s, ())) for s in synsets}
        self.lemma_index: dict[str, set] = {}
        for sid, lemmas in synsets.items():
            for lemma in lemmas:
                self.lemma_index.setdefault(lemma, set()).add(sid)
        self.vocabulary = frozenset(self.lemma_index)
        self._undirected: dict[str, set] = {s: set() for s in synsets}
        for child, parents in self.hypernym_edges.items():
            for p in parents:
                if p not in synsets:
                    raise ValueError(f"edge {child} -> {p} points to an unknown synset")
                self._undirected[child].add(p)
                self._undirected[p].add(child)
        self._check_acyclic()
        self._ancestor_cache: dict[str, dict[str, int]] = {}

    def _check_acyclic(self) -> None:
        indeg = {s: 0 for s in self.synsets}
        for parents in self.hypernym_edges.values():
            for p in parents:
                indeg[p] += 1
        queue = deque(s for s, d in indeg.items() if d == 0)
        seen = 0
        while queue:
            s = queue.popleft()
            seen += 1
            for p in self.hypernym_edges[s]:
                indeg[p] -= 1
                if indeg[p] == 0:
                    queue.append(p)
        if seen != len(self.synsets):
            stuck = sorted(s for s, d in indeg.items() if d > 0)
            raise ValueError(f"hypernym graph has a cycle through {stuck[:5]}")

    def senses(self, lemma: str) -> set:
        """S(w): synsets containing ``lemma``."""
        return self.lemma_index.get(lemma, set())

    def neighbours(self, sid: str) -> set:
        return self._undirected[sid]

    def ancestors(self, sid: str) -> dict[str, int]:
        """Every ancestor of ``sid`` (itself included) with its fewest upward steps."""
        cached = self._ancestor_cache.get(sid)
        if cached is None:
            cached = {sid: 0}
            queue = deque([sid])
            while queue:
                s = queue.popleft()
                for p in self.hypernym_edges[s]:
                    if p not in cached:
                        cached[p] = cached[s] + 1
                        queue.append(p)
            self._ancestor_cache[sid] = cached
        return cached


def _clean_lemma(text: str) -> str:
    return text.strip().replace("_", " ")


def parse_gold(synset_lines: Iterable[str], edge_lines: Iterable[str]) -> GoldResource:
    """Load ``synset_id<TAB>lemma,lemma,...`` and ``child<TAB>parent`` lines.

    Underscores in lemmas become spaces. Unknown synsets in edges and cycles
    raise :class:`ParseError`.
    """
    synsets: dict[str, frozenset] = {}
    for lineno, line in enumerate(synset_lines, 1):
        line = line.rstrip("\n")
        if not line.strip():
            continue
        fields = line.split("\t")
        if len(fields) != 2 or not fields[0]:
            raise ParseError("expected synset_id<TAB>lemmas", lineno, "synsets")
        if fields[0] in synsets:
            raise ParseError(f"duplicate synset {fields[0]}", lineno, "synsets")
        synsets[fields[0]] = frozenset(_clean_lemma(x) for x in fields[1].split(",") if x.strip())
    edges: dict[str, set] = {}
    for lineno, line in enumerate(edge_lines, 1):
        line = line.rstrip("\n")
        if not line.strip():
            continue
        fields = line.split("\t")
        if len(fields) != 2:
            raise ParseError("expected child<TAB>parent", lineno, "edges")
        child, parent = fields
        for sid in fields:
            if sid not in synsets:
                raise ParseError(f"unknown synset {sid}", lineno, "edges")
        if child == parent:
            raise ParseError(f"self-edge on {child} makes a cycle", lineno, "edges")
        edges.setdefault(child, set()).add(parent)
    try:
        return GoldResource(synsets, edges)
    except ValueError as exc:
        raise ParseError(str(exc), None, "edges") from None


def read_gold(synsets_path, edges_path) -> GoldResource:
    with open(synsets_path, encoding="utf-8") as fs, open(edges_path, encoding="utf-8") as fe:
        return parse_gold(fs, fe)


def _bfs(g: GoldResource, sources: Iterable[str], targets: set) -> dict[str, int]:
    """Undirected distances from the nearest source, stopping once every
    target is reached."""
    dist = {s: 0 for s in sources}
    remaining = set(targets) - dist.keys()
    queue = deque(dist)
    while queue and remaining:
        s = queue.popleft()
        d = dist[s] + 1
        for n in g.neighbours(s):
            if n not in dist:
                dist[n] = d
                remaining.discard(n)
                queue.append(n)
    return dist


def spd(g: GoldResource, a: str, b: str) -> float:
    """Shortest path length between two synsets over undirected hypernym edges."""
    for sid in (a, b):
        if sid not in g.synsets:
            raise KeyError(f"unknown synset {sid}")
    return _bfs(g, [a], {b}).get(b, INF)


def word_dist(g: GoldResource, wi: str, wj: str) -> float:
    """Minimal SPD over all synset pairs of the two lemmas; inf if none."""
    si, sj = g.senses(wi), g.senses(wj)
    if not si or not sj:
        return INF
    dist = _bfs(g, si, sj)
    return min((dist[s] for s in sj if s in dist), default=INF)


def _in_vocab(g: GoldResource, lemmas: Iterable[str]) -> list[str]:
    return sorted({w for w in lemmas if w in g.vocabulary})


def pscore_details(g: GoldResource, lemmas: Iterable[str]) -> tuple[float, int]:
    """pscore and the number of member pairs with no connecting path.

    Averages the lower-triangular (self pairs included) sum of word
    distances over the in-vocabulary members; disconnected pairs are left
    out of the sum.
    """
    words = _in_vocab(g, lemmas)
    total = 0.0
    disconnected = 0
    for i, wi in enumerate(words):
        earlier = words[:i]
        targets = set().union(*(g.senses(w) for w in earlier)) if earlier else set()
        dist = _bfs(g, g.senses(wi), targets)
        for wj in earlier:
            d = min((dist[s] for s in g.senses(wj) if s in dist), default=INF)
            if d == INF:
                disconnected += 1
            else:
                total += d
    if not words:
        return 0.0, 0
    return total / len(words), disconnected


def pscore(g: GoldResource, lemmas: Iterable[str]) -> float:
    return pscore_details(g, lemmas)[0]


def lowest_common_hypernyms(g: GoldResource, a: str, b: str) -> set:
    """Common ancestors (a synset counts as its own) with the fewest total
    upward steps from ``a`` and ``b``; all ties kept."""
    up_a, up_b = g.ancestors(a), g.ancestors(b)
    common = up_a.keys() & up_b.keys()
    if not common:
        return set()
    best = min(up_a[s] + up_b[s] for s in common)
    return {s for s in common if up_a[s] + up_b[s] == best}


def gold_lch_set(g: GoldResource, lemmas: Iterable[str]) -> set[str]:
    """Lemmas of the lowest common hypernyms over all pairs of distinct
    in-vocabulary members and all their synset pairs."""
    words = _in_vocab(g, lemmas)
    out: set[str] = set()
    for i, wi in enumerate(words):
        for wj in words[i + 1:]:
            for s1 in g.senses(wi):
                for s2 in g.senses(wj):
                    for lch in lowest_common_hypernyms(g, s1, s2):
                        out |= g.synsets[lch]
    return out


def hscore(g: GoldResource, labels: Sequence[str], lemmas: Iterable[str]) -> float:
    labels = list(dict.fromkeys(labels))
    if not labels:
        return 0.0
    gold = gold_lch_set(g, lemmas)
    return sum(1 for h in labels if h in gold) / len(labels)


def coverage(g: GoldResource, lemmas: Iterable[str]) -> float:
    lemmas = set(lemmas)
    if not lemmas:
        raise ValueError("coverage of an empty class")
    return len(lemmas & g.vocabulary) / len(lemmas)


@dataclass(frozen=True)
class ClassScore:
    class_id: int
    pscore: float
    hscore: float
    coverage: float
    disconnected_pairs: int = 0
    no_labels: bool = False
    no_vocabulary: bool = False

    @property
    def hpcscore(self) -> float:
        return (self.hscore + 1.0) / (self.pscore + 1.0) * self.coverage


def score_class(g: GoldResource, c: SemanticClass) -> ClassScore:
    members = c.member_lemmas
    labels = c.label_lemmas
    p, disconnected = pscore_details(g, members)
    return ClassScore(
        c.id,
        p,
        hscore(g, labels, members),
        coverage(g, members),
        disconnected,
        no_labels=not labels,
        no_vocabulary=not any(w in g.vocabulary for w in members),
    )


def hpc_avg(g: GoldResource, classes: Iterable[SemanticClass]) -> tuple[float, list[ClassScore]]:
    """Mean hpcscore over ``classes`` plus the per-class scores."""
    scores = [score_class(g, c) for c in classes]
    if not scores:
        raise ValueError("hpc_avg needs at least one class")
    return math.fsum(s.hpcscore for s in scores) / len(scores), scores


def write_report(fp: TextIO, avg: float, scores: Iterable[ClassScore]) -> None:
    for s in scores:
        fp.write(f"{s.class_id}\t{s.pscore!r}\t{s.hscore!r}\t{s.coverage!r}\t{s.hpcscore!r}\n")
    fp.write(f"#hpc_avg\t{avg!r}\n")

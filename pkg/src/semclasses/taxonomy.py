"""Domain taxonomy induction from labelled semantic classes."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, TextIO

from .classes import SemanticClass
from .sense_inventory import SenseInventory


@dataclass(frozen=True)
class DomainSpec:
    root: str
    seeds: frozenset
    k_common: int = 5

    def __post_init__(self):
        if not self.root:
            raise ValueError("root must be non-empty")
        if not self.seeds:
            raise ValueError("seed vocabulary is empty")
        if self.k_common < 1:
            raise ValueError("k_common must be >= 1")


@dataclass
class Taxonomy:
    root: str
    edges: set  # {(hyponym, hypernym)}

    def nodes(self) -> set[str]:
        return {self.root} | {x for e in self.edges for x in e}

    def parents(self) -> dict[str, set[str]]:
        out: dict[str, set[str]] = {}
        for hypo, hyper in self.edges:
            out.setdefault(hypo, set()).add(hyper)
        return out


def expand_vocabulary(spec: DomainSpec, inv: SenseInventory) -> set[str]:
    """Seeds plus the neighbour lemmas of any seed sense whose neighbour
    list shares at least ``k_common`` lemmas with the seeds."""
    vocab = set(spec.seeds)
    for seed in spec.seeds:
        for s in inv.lemma_senses(seed):
            related = {n.lemma for n in inv.neighbors(s)}
            if len(related & spec.seeds) >= spec.k_common:
                vocab |= related
    return vocab


def domain_classes(classes: Iterable[SemanticClass], vocab: set[str]) -> list[SemanticClass]:
    return [
        c for c in classes
        if any(w in vocab for w in c.member_lemmas) or any(h in vocab for h in c.label_lemmas)
    ]


def _reaches(graph: dict[str, set[str]], start: str, goal: str) -> bool:
    stack, seen = [start], {start}
    while stack:
        v = stack.pop()
        if v == goal:
            return True
        for u in graph.get(v, ()):
            if u not in seen:
                seen.add(u)
                stack.append(u)
    return False


def induce_taxonomy(domain: Iterable[SemanticClass], spec: DomainSpec) -> Taxonomy:
    """Link every member lemma to every label lemma, then hang each node
    without a hypernym under ``spec.root``.

    Candidate edges are added in sorted order and an edge that would close a
    cycle is skipped. Edges leaving the root are skipped as well, since the
    root must stay on top.
    """
    candidates = set()
    for c in domain:
        for hypo in c.member_lemmas:
            for hyper in c.label_lemmas:
                if hypo != hyper and hypo != spec.root:
                    candidates.add((hypo, hyper))

    up: dict[str, set[str]] = {}
    edges = set()
    for hypo, hyper in sorted(candidates):
        if _reaches(up, hyper, hypo):
            continue
        up.setdefault(hypo, set()).add(hyper)
        edges.add((hypo, hyper))

    nodes = {x for e in edges for x in e}
    for v in sorted(nodes - {spec.root}):
        if not up.get(v):
            edges.add((v, spec.root))
    return Taxonomy(spec.root, edges)


def write_semeval(fp: TextIO, tax: Taxonomy) -> None:
    """SemEval-2016 Task 13 format: ``relation_id<TAB>hyponym<TAB>hypernym``."""
    for i, (hypo, hyper) in enumerate(sorted(tax.edges)):
        fp.write(f"{i}\t{hypo}\t{hyper}\n")


def read_seeds(path) -> frozenset[str]:
    """One term per line; a SemEval terms file (``id<TAB>term``) also works."""
    seeds = set()
    with open(path, encoding="utf-8") as fp:
        for line in fp:
            line = line.rstrip("\n")
            if line.strip():
                seeds.add(line.split("\t")[-1].strip())
    return frozenset(seeds)

"""Weighted undirected sense graphs and Chinese Whispers clustering."""
from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass
from typing import Hashable, Iterable, Iterator, TextIO

import numpy as np


class WeightedGraph:
    """Undirected graph with positive finite edge weights and no self-loops.

    ``adj[a][b] == adj[b][a]`` for every edge. Nodes may be isolated.
    """

    def __init__(self, nodes: Iterable = (), edges: Iterable[tuple] = ()):
        self.adj: dict = {}
        for v in nodes:
            self.add_node(v)
        for a, b, w in edges:
            self.add_edge(a, b, w)

    def add_node(self, v) -> None:
        self.adj.setdefault(v, {})

    def add_edge(self, a, b, w: float) -> None:
        if a == b:
            raise ValueError(f"self-loop on {a}")
        w = float(w)
        if not (w > 0.0 and math.isfinite(w)):
            raise ValueError(f"edge weight must be finite and > 0, got {w!r}")
        self.adj.setdefault(a, {})[b] = w
        self.adj.setdefault(b, {})[a] = w

    @property
    def nodes(self) -> set:
        return set(self.adj)

    def __len__(self) -> int:
        return len(self.adj)

    def __contains__(self, v) -> bool:
        return v in self.adj

    def weight(self, a, b) -> float | None:
        return self.adj.get(a, {}).get(b)

    def edges(self) -> Iterator[tuple]:
        """Each undirected edge once, smaller endpoint first, in sorted order."""
        for a in sorted(self.adj):
            for b in sorted(self.adj[a]):
                if a < b:
                    yield a, b, self.adj[a][b]

    def num_edges(self) -> int:
        return sum(len(nb) for nb in self.adj.values()) // 2

    def subgraph(self, keep: Iterable) -> "WeightedGraph":
        keep = set(keep)
        sub = WeightedGraph()
        for v in keep:
            if v in self.adj:
                sub.adj[v] = {u: w for u, w in self.adj[v].items() if u in keep}
        return sub

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WeightedGraph):
            return NotImplemented
        return self.adj == other.adj

    def __repr__(self) -> str:
        return f"WeightedGraph(nodes={len(self)}, edges={self.num_edges()})"

    def write_tsv(self, fp: TextIO) -> None:
        """Debug dump: ``node_a<TAB>node_b<TAB>weight`` per edge."""
        for a, b, w in self.edges():
            fp.write(f"{a}\t{b}\t{w!r}\n")


@dataclass(frozen=True)
class CwParams:
    max_iterations: int = 20
    seed: int = 0

    def __post_init__(self):
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be an unsigned 64-bit integer")


def derive_seed(seed: int, key: Hashable) -> int:
    """Stable 64-bit child seed for ``key``; independent of ``PYTHONHASHSEED``."""
    digest = hashlib.blake2b(f"{seed}\x1f{key}".encode("utf-8"), digest_size=8).digest()
    return int.from_bytes(digest, "little")


class Clustering:
    """Hard partition of graph nodes given as ``node -> label``."""

    def __init__(self, assignment: dict):
        self.assignment = assignment

    def clusters(self) -> list[set]:
        """Clusters as node sets, ordered by their smallest member."""
        groups: dict = {}
        for v, label in self.assignment.items():
            groups.setdefault(label, set()).add(v)
        return sorted(groups.values(), key=min)

    def cluster_of(self, v) -> set:
        label = self.assignment[v]
        return {u for u, l in self.assignment.items() if l == label}

    def __len__(self) -> int:
        return len(set(self.assignment.values()))


def chinese_whispers(g: WeightedGraph, params: CwParams = CwParams(), trace=None) -> Clustering:
    """Cluster ``g`` with Chinese Whispers.

    Every node starts with its own label (its rank in sorted node order).
    Each iteration visits the nodes in a fresh seeded random order and lets
    each node adopt the label with the largest total edge weight among its
    neighbours, preferring the smallest label on ties. Updates are applied
    in place. Stops after an iteration without changes or after
    ``params.max_iterations``.

    ``trace``, if given, is called as ``trace(node, old, new, weights)`` on
    every visit of a non-isolated node; ``weights`` maps label -> summed weight.
    """
    nodes = sorted(g.adj)
    n = len(nodes)
    index = {v: i for i, v in enumerate(nodes)}
    nbrs = [[(index[u], w) for u, w in sorted(g.adj[v].items())] for v in nodes]
    labels = list(range(n))
    rng = np.random.default_rng(params.seed)

    for _ in range(params.max_iterations):
        changed = False
        for i in rng.permutation(n).tolist():
            adj = nbrs[i]
            if not adj:
                continue
            acc: dict[int, float] = {}
            for j, w in adj:
                lab = labels[j]
                acc[lab] = acc.get(lab, 0.0) + w
            best = -1
            best_w = -1.0
            for lab, w in acc.items():
                if w > best_w or (w == best_w and lab < best):
                    best, best_w = lab, w
            if trace is not None:
                trace(nodes[i], labels[i], best, acc)
            if best != labels[i]:
                labels[i] = best
                changed = True
        if not changed:
            break

    return Clustering({v: labels[i] for i, v in enumerate(nodes)})


def connected_components(g: WeightedGraph) -> list[set]:
    """Maximal connected node sets, ordered by smallest member."""
    seen: set = set()
    comps = []
    for start in sorted(g.adj):
        if start in seen:
            continue
        comp = {start}
        stack = [start]
        seen.add(start)
        while stack:
            v = stack.pop()
            for u in g.adj[v]:
                if u not in seen:
                    seen.add(u)
                    comp.add(u)
                    stack.append(u)
        comps.append(comp)
    return comps

"""Global sense graph: sum ego networks, prune and rescale edges, keep nouns."""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Iterable

from .ego import EgoNetwork
from .graph import WeightedGraph

log = logging.getLogger(__name__)

EDGE_SCALINGS = ("count", "log")


@dataclass(frozen=True)
class GlobalGraphParams:
    min_weight: float = 0.0
    edge_scaling: str = "count"
    nouns_only: bool = False

    def __post_init__(self):
        if not self.min_weight >= 0:
            raise ValueError("min_weight must be >= 0")
        if self.edge_scaling not in EDGE_SCALINGS:
            raise ValueError(f"edge_scaling must be one of {EDGE_SCALINGS}")


def add_network(acc: WeightedGraph, net: EgoNetwork) -> WeightedGraph:
    """Fold one network into the running sum ``acc`` (modified in place)."""
    adj = acc.adj
    for v, nbrs in net.graph.adj.items():
        row = adj.get(v)
        if row is None:
            row = adj[v] = {}
        for u, w in nbrs.items():
            row[u] = row.get(u, 0.0) + w
    return acc


def aggregate(networks: Iterable[EgoNetwork]) -> WeightedGraph:
    """Sum edge weights over all networks; nodes are the union of their nodes."""
    acc = WeightedGraph()
    for net in networks:
        add_network(acc, net)
    return acc


def prune_rescale(g: WeightedGraph, params: GlobalGraphParams) -> WeightedGraph:
    """Drop edges lighter than ``min_weight``, then rescale survivors.

    Nodes that lose all their edges here are removed; nodes that had none to
    begin with are kept. Under log scaling an edge of weight <= 1 would get a
    non-positive weight and is dropped too.
    """
    t = params.min_weight
    use_log = params.edge_scaling == "log"
    out = WeightedGraph()
    nonpositive = 0
    for v, nbrs in g.adj.items():
        row = {}
        for u, w in nbrs.items():
            if w < t:
                continue
            if use_log:
                if w <= 1.0:
                    nonpositive += 1
                    continue
                w = math.log(w)
            row[u] = w
        if row or not nbrs:
            out.adj[v] = row
    if nonpositive:
        log.warning("log scaling dropped %d edges with weight <= 1", nonpositive // 2)
    return out


def read_noun_lexicon(path) -> frozenset[str]:
    with open(path, encoding="utf-8") as fp:
        return frozenset(line.strip() for line in fp if line.strip())


def noun_filter(g: WeightedGraph, nouns: Iterable[str]) -> WeightedGraph:
    """Remove single-word senses whose lemma is not a known noun.

    Multiword lemmas (containing a space) are always kept.
    """
    nouns = frozenset(nouns)
    if not nouns:
        raise ValueError("noun lexicon is empty")
    keep = {v for v in g.adj if " " in v.lemma or v.lemma in nouns}
    return g.subgraph(keep)

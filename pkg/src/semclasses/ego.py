"""Second-order ego networks of senses and the coherence filter."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import groupby, islice
from typing import Iterable, Iterator, TextIO

from .graph import CwParams, WeightedGraph, chinese_whispers, derive_seed
from .sense_inventory import ParseError, SenseId, SenseInventory

DEFAULT_N_LIMIT = 200


@dataclass
class EgoNetwork:
    ego: SenseId
    graph: WeightedGraph


@dataclass(frozen=True)
class CoherenceParams:
    min_ego_cluster_fraction: float = 0.8
    cw: CwParams = field(default_factory=CwParams)

    def __post_init__(self):
        # 0 is accepted: it keeps every network.
        if not 0.0 <= self.min_ego_cluster_fraction <= 1.0:
            raise ValueError("min_ego_cluster_fraction must lie in [0, 1]")


def build_ego_network(inv: SenseInventory, s: SenseId, n_limit: int | None = DEFAULT_N_LIMIT) -> EgoNetwork:
    """Ego network of ``s``: the ego, its neighbours and their neighbours.

    ``n_limit`` caps how many entries of each neighbour list are followed
    when collecting nodes. Edges are every inventory relation between two
    collected nodes, weighted by :meth:`SenseInventory.relatedness`.
    """
    if s not in inv:
        raise KeyError(f"unknown sense {s}")
    first = list(islice(inv.neighbors(s), n_limit))
    nodes = {s, *first}
    for si in first:
        nodes.update(islice(inv.neighbors(si), n_limit))

    adj: dict = {v: {} for v in nodes}
    for u in nodes:
        adj_u = adj[u]
        for v, w in inv.neighbors(u).items():
            if v == u or v not in adj or w <= 0.0:
                continue
            if w > adj_u.get(v, 0.0):
                adj_u[v] = w
                adj[v][u] = w
    g = WeightedGraph()
    g.adj = adj
    return EgoNetwork(s, g)


def coherence_filter(net: EgoNetwork, params: CoherenceParams = CoherenceParams()) -> EgoNetwork | None:
    """Keep ``net`` pruned to the ego's cluster, or drop it (None) when that
    cluster holds less than ``min_ego_cluster_fraction`` of the nodes."""
    seed = derive_seed(params.cw.seed, net.ego)
    clustering = chinese_whispers(net.graph, CwParams(params.cw.max_iterations, seed))
    ego_cluster = clustering.cluster_of(net.ego)
    if len(ego_cluster) < params.min_ego_cluster_fraction * len(net.graph):
        return None
    if len(ego_cluster) == len(net.graph):
        return net
    return EgoNetwork(net.ego, net.graph.subgraph(ego_cluster))


def write_ego_networks(fp: TextIO, networks: Iterable[EgoNetwork]) -> int:
    """Write networks as ``ego<TAB>node<TAB><TAB>`` node rows followed by
    ``ego<TAB>a<TAB>b<TAB>weight`` edge rows. Returns the number written."""
    count = 0
    for net in networks:
        ego = str(net.ego)
        for v in sorted(net.graph.adj):
            fp.write(f"{ego}\t{v}\t\t\n")
        for a, b, w in net.graph.edges():
            fp.write(f"{ego}\t{a}\t{b}\t{w!r}\n")
        count += 1
    return count


def read_ego_networks(lines: Iterable[str], source: str | None = None) -> Iterator[EgoNetwork]:
    """Stream networks back from :func:`write_ego_networks` output."""

    def rows():
        for lineno, line in enumerate(lines, 1):
            line = line.rstrip("\n")
            if not line:
                continue
            fields = line.split("\t")
            if len(fields) != 4:
                raise ParseError("expected 4 tab-separated fields", lineno, source)
            yield lineno, fields

    seen: set[str] = set()
    for ego_text, group in groupby(rows(), key=lambda r: r[1][0]):
        g = WeightedGraph()
        lineno = 0
        try:
            if ego_text in seen:
                raise ValueError(f"network {ego_text} is not contiguous")
            seen.add(ego_text)
            ego = SenseId.parse(ego_text)
            for lineno, (_, a, b, w) in group:
                if b:
                    g.add_edge(SenseId.parse(a), SenseId.parse(b), float(w))
                else:
                    g.add_node(SenseId.parse(a))
            if ego not in g:
                raise ValueError(f"network {ego_text} lacks its ego node")
        except ValueError as exc:
            raise ParseError(str(exc), lineno or None, source) from None
        yield EgoNetwork(ego, g)

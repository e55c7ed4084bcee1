"""Pipeline stages shared by the library API and the command line."""
from __future__ import annotations

from typing import Iterable, Iterator

from ._parallel import ordered_map
from .classes import LabelingParams, SemanticClass, induce_classes, label_class
from .ego import DEFAULT_N_LIMIT, CoherenceParams, EgoNetwork, build_ego_network, coherence_filter
from .global_graph import GlobalGraphParams, aggregate, noun_filter, prune_rescale
from .graph import CwParams, WeightedGraph
from .sense_inventory import SenseId, SenseInventory


def _ego_task(state, s: SenseId) -> EgoNetwork | None:
    inv, params, n_limit = state
    return coherence_filter(build_ego_network(inv, s, n_limit), params)


def coherent_ego_networks(
    inv: SenseInventory,
    params: CoherenceParams = CoherenceParams(),
    n_limit: int | None = DEFAULT_N_LIMIT,
    threads: int = 1,
) -> Iterator[EgoNetwork]:
    """Ego networks of every inventory sense that pass the coherence filter,
    in inventory order."""
    for net in ordered_map(_ego_task, (inv, params, n_limit), list(inv), threads):
        if net is not None:
            yield net


def global_graph(
    networks: Iterable[EgoNetwork],
    params: GlobalGraphParams = GlobalGraphParams(),
    nouns: Iterable[str] | None = None,
) -> WeightedGraph:
    g = prune_rescale(aggregate(networks), params)
    if params.nouns_only:
        if nouns is None:
            raise ValueError("nouns_only requires a noun lexicon")
        g = noun_filter(g, nouns)
    return g


def _label_task(state, c: SemanticClass) -> SemanticClass:
    inv, params = state
    return label_class(c, inv, params)


def label_classes(
    classes: Iterable[SemanticClass],
    inv: SenseInventory,
    params: LabelingParams = LabelingParams(),
    threads: int = 1,
) -> list[SemanticClass]:
    return list(ordered_map(_label_task, (inv, params), list(classes), threads, chunksize=16))


def semantic_classes(
    inv: SenseInventory,
    coherence: CoherenceParams = CoherenceParams(),
    graph_params: GlobalGraphParams = GlobalGraphParams(),
    labeling: LabelingParams = LabelingParams(),
    cw: CwParams = CwParams(),
    nouns: Iterable[str] | None = None,
    n_limit: int | None = DEFAULT_N_LIMIT,
    threads: int = 1,
) -> list[SemanticClass]:
    """Inventory in, labelled semantic classes out."""
    nets = coherent_ego_networks(inv, coherence, n_limit, threads)
    g = global_graph(nets, graph_params, nouns)
    return label_classes(induce_classes(g, cw), inv, labeling, threads)

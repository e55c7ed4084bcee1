"""Sense-aware distributional semantic classes.

Cluster a graph of induced word senses into semantic classes, label the
classes with hypernyms, and use them to clean noisy hypernym databases,
build domain taxonomies and score against a gold lexical resource.
"""
from .classes import (
    LabelingParams,
    SemanticClass,
    disambiguate_hypernym,
    hypernym_scores,
    induce_classes,
    label_class,
    read_classes,
    write_classes,
)
from .denoise import (
    BinaryRelation,
    HypernymDb,
    baseline_top_k,
    class_relations,
    enhance,
    parse_hypernym_db,
    read_hypernym_db,
)
from .ego import CoherenceParams, EgoNetwork, build_ego_network, coherence_filter
from .global_graph import GlobalGraphParams, aggregate, noun_filter, prune_rescale
from .gold import (
    GoldResource,
    coverage,
    gold_lch_set,
    hpc_avg,
    hscore,
    parse_gold,
    pscore,
    spd,
    word_dist,
)
from .graph import Clustering, CwParams, WeightedGraph, chinese_whispers, connected_components
from .pipeline import coherent_ego_networks, global_graph, label_classes, semantic_classes
from .sense_inventory import ParseError, SenseId, SenseInventory, parse_inventory, read_inventory
from .taxonomy import DomainSpec, Taxonomy, domain_classes, expand_vocabulary, induce_taxonomy

__version__ = "0.1.0"

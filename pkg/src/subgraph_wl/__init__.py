"""Subgraph-bag Weisfeiler-Leman tests (DS-WL, DSS-WL) with selectable policies and base refiners."""

from .bag_wl import Base, BagColoring, Tester, corpus_classes, ds_wl_test, dss_wl_test, needle_colors, power_matrix
from .graph import ColorInterner, Graph, NodePartition, ParseError, UsageError, apply_permutation, degree, partitions_equal
from .iso import IsoResult, are_isomorphic, bags_isomorphic, enumerate_graphs
from .policies import Bag, PolicySpec, apply_policy, is_edge_covering, union_adjacency
from .sampling import SampleConfig, sample_bag, vote_test
from .wl import Verdict, fwl2_refine, fwl2_test, wl_refine, wl_test

__all__ = [
    "Bag",
    "BagColoring",
    "Base",
    "ColorInterner",
    "Graph",
    "IsoResult",
    "NodePartition",
    "ParseError",
    "PolicySpec",
    "SampleConfig",
    "Tester",
    "UsageError",
    "Verdict",
    "apply_permutation",
    "apply_policy",
    "are_isomorphic",
    "bags_isomorphic",
    "corpus_classes",
    "degree",
    "ds_wl_test",
    "dss_wl_test",
    "enumerate_graphs",
    "fwl2_refine",
    "fwl2_test",
    "is_edge_covering",
    "needle_colors",
    "partitions_equal",
    "power_matrix",
    "sample_bag",
    "union_adjacency",
    "vote_test",
    "wl_refine",
    "wl_test",
]

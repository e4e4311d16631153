from collections import Counter
from itertools import combinations

import pytest

from subgraph_wl import generators as gen
from subgraph_wl.bag_wl import Base, Tester, corpus_classes, ds_wl_test, dss_refine, dss_wl_test, needle_colors, power_matrix
from subgraph_wl.graph import ColorInterner, UsageError, apply_permutation
from subgraph_wl.iso import enumerate_graphs
from subgraph_wl.policies import ED, ND, SE, Bag, PolicySpec, apply_policy, ego
from subgraph_wl.wl import wl_refine

C6, TWO_C3 = gen.cycle(6), gen.disjoint_cycles([3, 3])


def test_dss_ed_separates_c6():
    v = dss_wl_test(C6, TWO_C3, ED)
    assert v.distinguished and v.round <= 2


def test_dss_se_separates_path_star():
    assert str(dss_wl_test(gen.path(4), gen.star(3), SE)) == "DISTINGUISHED@1"
    assert not ds_wl_test(gen.path(4), gen.star(3), SE).distinguished


@pytest.mark.parametrize("policy", ["nd", "ed", "ego:1", "ego+:2^", "se^"])
def test_permuted_copy_not_separated(policy, rng):
    g = gen.csl(10, 3)
    h = apply_permutation(g, gen.random_permutation(10, rng))
    p = PolicySpec.parse(policy)
    assert not dss_wl_test(g, h, p).distinguished
    assert not ds_wl_test(g, h, p).distinguished


def test_ds_examples():
    assert ds_wl_test(gen.csl(12, 3), gen.csl(12, 5), ND).distinguished
    assert not ds_wl_test(gen.path(4), gen.star(3), SE).distinguished
    assert ds_wl_test(gen.rooks4(), gen.shrikhande(), PolicySpec.parse("ego+:1^"), Base.FWL2).distinguished


def test_ego_depth_on_csl12():
    g, h = gen.csl(12, 3), gen.csl(12, 5)
    got = [ds_wl_test(g, h, ego(d)).distinguished for d in (1, 2, 3)]
    assert got == [False, True, False]


def test_needle_round_zero_constant():
    bc = dss_refine(apply_policy(C6, ED), 0)[0]
    assert len({needle_colors(bc, v) for v in range(6)}) == 1
    assert len(needle_colors(bc, 0)) == 6


def test_needle_nd_c6_round_one():
    bag = apply_policy(C6, ND)
    it = ColorInterner()
    bc = dss_refine(bag, 1, it)[1]
    # color by degree in the subgraph: v isolated once, one neighbor lost twice, intact three times
    for v in range(6):
        by_degree = Counter(len(bag.subgraphs[s].adjacency[v]) for s in range(6))
        assert by_degree == {0: 1, 1: 2, 2: 3}
        assert sorted(Counter(needle_colors(bc, v)).values()) == [1, 2, 3]
    assert len({needle_colors(bc, v) for v in range(6)}) == 1
    with pytest.raises(UsageError):
        needle_colors(bc, 6)


def test_singleton_bag_needle_is_own_color():
    g = gen.path(5)
    bc = dss_refine(Bag(5, (g,), source=g), 3)
    for t in range(4):
        assert all(needle_colors(bc[t], v) == (bc[t].colors[0][v],) for v in range(5))
    # same partition as plain 1-WL
    h = wl_refine(g, max_rounds=3)
    from subgraph_wl.graph import partitions_equal

    assert partitions_equal(bc[2].colors[0], h.rounds[min(2, len(h.rounds) - 1)])


def test_power_matrix_example():
    pm = power_matrix([C6, TWO_C3], ["wl", "ds:ed", "dss:ed"])
    assert not pm["wl"][0][1].distinguished
    assert pm["ds:ed"][0][1].distinguished and pm["dss:ed"][0][1].distinguished
    for grid in pm.values():
        assert grid[0][1] == grid[1][0]
    pm = power_matrix([C6, C6], ["dss:nd"])
    assert not any(v.distinguished for row in pm["dss:nd"] for v in row)


def test_power_matrix_needs_two_graphs():
    with pytest.raises(UsageError):
        power_matrix([C6], ["wl"])


def test_bag_size_mismatch_is_round_zero():
    v = dss_wl_test(gen.path(4), gen.cycle(4), ED)
    assert str(v) == "DISTINGUISHED@0"


@pytest.mark.parametrize("policy", ["nd", "ed", "ego:1", "se", "ego+:1"])
def test_dss_refines_ds_and_wl_on_five_node_graphs(policy):
    graphs = list(enumerate_graphs(5))
    wl = corpus_classes(graphs, "wl")
    ds = corpus_classes(graphs, f"ds:{policy}")
    dss = corpus_classes(graphs, f"dss:{policy}")
    for i, j in combinations(range(len(graphs)), 2):
        if dss[i] == dss[j]:
            assert ds[i] == ds[j] and wl[i] == wl[j]


def test_corpus_classes_agree_with_pairwise():
    graphs = list(enumerate_graphs(4))
    for t in ("wl", "ds:ed", "dss:se"):
        ids = corpus_classes(graphs, t)
        pm = power_matrix(graphs, [t])[t]
        for i, j in combinations(range(len(graphs)), 2):
            assert (ids[i] != ids[j]) == pm[i][j].distinguished


@pytest.mark.parametrize(
    "text,norm",
    [
        ("wl", "wl"),
        ("fwl2", "fwl2"),
        ("ds:ed", "ds:ed"),
        ("ds:ed:wl", "ds:ed"),
        ("ds:ego+:1^:fwl2", "ds:ego+:1^:fwl2"),
        ("dss:se:loo", "dss:se:loo"),
    ],
)
def test_tester_parse(text, norm):
    assert str(Tester.parse(text)) == norm


@pytest.mark.parametrize("text", ["", "dss", "xx:ed", "dss:ed:fwl2", "ds:ed:loo", "wl:ed"])
def test_tester_parse_rejects(text):
    with pytest.raises(UsageError):
        Tester.parse(text)

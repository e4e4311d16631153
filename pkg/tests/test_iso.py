from itertools import combinations, permutations

import networkx as nx
import pytest

from subgraph_wl import generators as gen
from subgraph_wl.graph import Graph, apply_permutation
from subgraph_wl.iso import are_isomorphic, bags_isomorphic, enumerate_graphs
from subgraph_wl.policies import ED, ND, Bag, apply_policy
from subgraph_wl.wl import wl_test


def _nx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.num_nodes))
    h.add_edges_from(g.edges)
    return h


def _canonical(g):
    # brute-force canonical form: lexicographically smallest sorted edge list
    return min(tuple(sorted(tuple(sorted((p[u], p[v]))) for u, v in g.edges)) for p in permutations(range(g.num_nodes)))


def test_permuted_copy_with_witness(rng):
    g = gen.csl(11, 3)
    h = apply_permutation(g, gen.random_permutation(11, rng))
    res = are_isomorphic(g, h)
    assert res and apply_permutation(g, res.witness) == h


def test_labels_respected():
    a = Graph.from_edges(3, [(0, 1), (1, 2)], labels=[1, 0, 0])
    b = Graph.from_edges(3, [(0, 1), (1, 2)], labels=[0, 1, 0])
    c = Graph.from_edges(3, [(0, 1), (1, 2)], labels=[0, 0, 1])
    assert not are_isomorphic(a, b)
    res = are_isomorphic(a, c)
    assert res and apply_permutation(a, res.witness) == c


def test_known_non_isomorphic_pairs():
    assert not are_isomorphic(gen.rooks4(), gen.shrikhande())
    assert not are_isomorphic(gen.cycle(6), gen.disjoint_cycles([3, 3]))
    assert not are_isomorphic(gen.csl(12, 3), gen.csl(12, 5))
    assert are_isomorphic(gen.shrikhande(), gen.shrikhande())


def test_agrees_with_networkx(rng):
    for _ in range(150):
        n = rng.randint(1, 8)
        g = gen.gnp(n, rng.random(), rng)
        h = gen.gnp(n, rng.random(), rng) if rng.random() < 0.5 else apply_permutation(g, gen.random_permutation(n, rng))
        res = are_isomorphic(g, h)
        assert bool(res) == nx.is_isomorphic(_nx(g), _nx(h))
        if res:
            assert apply_permutation(g, res.witness) == h
        if wl_test(g, h).distinguished:
            assert not res


def test_bags_isomorphic_examples(rng):
    g = gen.csl(8, 2)
    sigma = gen.random_permutation(8, rng)
    assert bags_isomorphic(apply_policy(g, ND), apply_policy(apply_permutation(g, sigma), ND))
    assert not bags_isomorphic(apply_policy(gen.cycle(6), ED), apply_policy(gen.disjoint_cycles([3, 3]), ED))
    assert bags_isomorphic(Bag(3, ()), Bag(3, ()))
    assert not bags_isomorphic(Bag(3, ()), Bag(3, (gen.empty(3),)))


@pytest.mark.parametrize("n,count", [(0, 1), (1, 1), (2, 2), (3, 4), (4, 11), (5, 34), (6, 156)])
def test_enumeration_counts(n, count):
    assert len(list(enumerate_graphs(n))) == count


@pytest.mark.parametrize("n", [3, 4, 5])
def test_enumeration_matches_brute_force(n):
    want = {_canonical(Graph.from_edges(n, es)) for k in range(n * (n - 1) // 2 + 1) for es in combinations(combinations(range(n), 2), k)}
    got = [_canonical(g) for g in enumerate_graphs(n)]
    assert len(got) == len(set(got))
    assert set(got) == want

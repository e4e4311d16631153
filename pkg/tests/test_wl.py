from collections import Counter

import pytest

from subgraph_wl import generators as gen
from subgraph_wl.graph import ColorInterner, Graph, partitions_equal
from subgraph_wl.policies import ED, apply_policy
from subgraph_wl.wl import Verdict, fwl2_refine, fwl2_test, initial_colors, wl_refine, wl_step, wl_test


def _rounds(g, k, interner):
    cols = initial_colors(g, interner)
    out = [cols]
    for _ in range(k):
        cols = wl_step(g.adjacency, cols, interner)
        out.append(cols)
    return out


def test_cycle_converges_at_round_one():
    h = wl_refine(gen.cycle(6))
    assert h.converged_at == 1
    assert len(set(h.rounds[-1])) == 1


def test_five_path_has_class_absent_from_triangle_side():
    # ED subgraphs: a 5-path from C6, a triangle plus a path on 3 nodes from 2xC3
    path_sub = apply_policy(gen.cycle(6), ED).subgraphs[0]
    tri_sub = apply_policy(gen.disjoint_cycles([3, 3]), ED).subgraphs[0]
    it = ColorInterner()
    rp, rt = _rounds(path_sub, 2, it), _rounds(tri_sub, 2, it)
    ends = [v for v in range(6) if len(path_sub.adjacency[v]) == 1]
    inner = [w for v in ends for w in path_sub.adjacency[v]]
    # degree-2 nodes with neighbor degrees {1, 2}
    c = rp[2][inner[0]]
    assert rp[2][inner[1]] == c
    assert Counter(rp[2])[c] == 2
    assert c not in rt[2]


def test_edge_deleted_rooks_round_two_sizes():
    # deleting the edge between grid nodes (0,3) and (1,3)
    g = gen.rooks4()
    g = g.with_edges(g.edges - {(0, 1)})
    h = wl_refine(g, max_rounds=4)
    assert h.class_sizes(2) == [2, 2, 6, 6]


@pytest.mark.parametrize(
    "g1,g2,distinguished",
    [
        (gen.path(4), gen.star(3), True),
        (gen.cycle(6), gen.disjoint_cycles([3, 3]), False),
        (gen.rooks4(), gen.shrikhande(), False),
        (gen.cycle(5), gen.cycle(6), True),
    ],
)
def test_wl_test(g1, g2, distinguished):
    v = wl_test(g1, g2)
    assert v.distinguished is distinguished
    if g1.num_nodes != g2.num_nodes:
        assert v.round == 0


def test_wl_path_vs_star_round():
    assert wl_test(gen.path(4), gen.star(3)) == Verdict.differ(1)


def test_labels_enter_initial_colors():
    a = Graph.from_edges(2, [(0, 1)], labels=[0, 0])
    b = Graph.from_edges(2, [(0, 1)], labels=[0, 1])
    assert wl_test(a, b) == Verdict.differ(0)


def test_refinement_monotone():
    for g in (gen.csl(11, 3), gen.path(7), gen.star(4), gen.rooks4()):
        h = wl_refine(g)
        for t in range(len(h.rounds) - 1):
            # each round-(t+1) class sits inside a round-t class
            pairs = set(zip(h.rounds[t + 1], h.rounds[t]))
            assert len(pairs) == len(set(h.rounds[t + 1]))


def test_trace_records_histograms():
    v = wl_test(gen.path(4), gen.star(3), trace=True)
    assert [e["round"] for e in v.trace] == [0, 1]
    assert sum(v.trace[0]["left"].values()) == 4


@pytest.mark.parametrize(
    "g1,g2,distinguished",
    [
        (gen.cycle(6), gen.disjoint_cycles([3, 3]), True),
        (gen.rooks4(), gen.shrikhande(), False),
        (gen.csl(9, 2), gen.csl(9, 2), False),
        (gen.csl(12, 3), gen.csl(12, 5), True),
    ],
)
def test_fwl2_test(g1, g2, distinguished):
    assert fwl2_test(g1, g2).distinguished is distinguished


def test_fwl2_pair_coloring_stable():
    pc = fwl2_refine(gen.cycle(6))
    # diagonal, adjacent, distance 2, distance 3
    assert len(set(pc.colors.ravel().tolist())) == 4
    assert len(pc.fingerprint) == 36
    assert partitions_equal(pc.colors[0].tolist(), [0, 1, 2, 3, 2, 1])


def test_verdict_strings():
    assert str(Verdict.differ(2)) == "DISTINGUISHED@2"
    assert str(Verdict.same(1)) == "POSSIBLY_ISOMORPHIC@1"

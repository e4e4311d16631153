import pytest

from subgraph_wl import generators as gen
from subgraph_wl.graph import Graph, UsageError, apply_permutation
from subgraph_wl.iso import are_isomorphic, bags_isomorphic
from subgraph_wl.policies import (
    ED,
    ND,
    SE,
    Bag,
    PolicyKind,
    PolicySpec,
    apply_policy,
    ego,
    is_edge_covering,
    union_adjacency,
)


@pytest.mark.parametrize(
    "text,kind,depth,aug",
    [
        ("nd", PolicyKind.ND, 0, False),
        ("ed^", PolicyKind.ED, 0, True),
        ("ego:2", PolicyKind.EGO, 2, False),
        ("ego+:2^", PolicyKind.EGO_PLUS, 2, True),
        ("se", PolicyKind.SE, 0, False),
    ],
)
def test_parse_round_trip(text, kind, depth, aug):
    p = PolicySpec.parse(text)
    assert (p.kind, p.depth, p.augmented) == (kind, depth, aug)
    assert str(p) == text


@pytest.mark.parametrize("text", ["ego", "ego:0", "ego:x", "nd:2", "foo", "ed:1^"])
def test_parse_rejects(text):
    with pytest.raises(UsageError):
        PolicySpec.parse(text)


@pytest.mark.parametrize("g", [gen.cycle(6), gen.path(4), gen.csl(9, 2), gen.star(3)])
def test_bag_sizes(g):
    n, m = g.num_nodes, g.num_edges
    for p, size in ((ND, n), (ED, m), (ego(1), n), (ego(2, plus=True), n), (SE, m)):
        assert len(apply_policy(g, p)) == size
        aug = PolicySpec(p.kind, p.depth, True)
        assert len(apply_policy(g, aug)) == size + 1


def test_ed_on_c6_gives_five_paths():
    bag = apply_policy(gen.cycle(6), ED)
    assert len(bag) == 6
    for sub in bag.subgraphs:
        assert sub.num_nodes == 6 and sub.num_edges == 5
        assert are_isomorphic(sub, gen.path(6))


def test_ego1_on_rooks_is_two_triangles_plus_root():
    r = gen.rooks4()
    for root, sub in enumerate(apply_policy(r, ego(1)).subgraphs):
        ball = [v for v in range(16) if sub.adjacency[v]]
        assert len(ball) == 7 and root in ball
        assert len(sub.adjacency[root]) == 6
        others = [v for v in ball if v != root]
        rest = Graph.from_edges(16, [e for e in sub.edges if root not in e])
        # the six neighbors split into two disjoint triangles
        assert rest.num_edges == 6 and all(len(rest.adjacency[v]) == 2 for v in others)


def test_se_on_path_and_star():
    a, b = apply_policy(gen.path(4), SE), apply_policy(gen.star(3), SE)
    assert len(a) == len(b) == 3
    for sub in a.subgraphs + b.subgraphs:
        assert sub.num_edges == 1 and sum(1 for v in range(4) if not sub.adjacency[v]) == 2


def test_nd_keeps_deleted_node_isolated():
    bag = apply_policy(gen.cycle(5), ND)
    for v, sub in enumerate(bag.subgraphs):
        assert sub.num_nodes == 5 and sub.adjacency[v] == ()


def test_ego_plus_marks_roots():
    g = gen.cycle(5)
    bag = apply_policy(g, PolicySpec.parse("ego+:1^"))
    assert bag.roots == (0, 1, 2, 3, 4, -1)
    for i, sub in enumerate(bag.subgraphs[:-1]):
        assert [v for v in range(5) if sub.label(v) % 2] == [i]
    assert all(lab % 2 == 0 for lab in bag.subgraphs[-1].node_labels())


def test_union_adjacency():
    c6 = gen.cycle(6)
    assert union_adjacency(apply_policy(c6, ED)).edges == c6.edges
    for g in (gen.csl(8, 2), gen.path(3), gen.rooks4()):
        assert union_adjacency(apply_policy(g, ND)).edges == g.edges
        assert union_adjacency(apply_policy(g, SE)).edges == g.edges
    with pytest.raises(UsageError):
        union_adjacency(Bag(3, ()))


def test_edge_covering():
    c6 = gen.cycle(6)
    for p in (ND, ED, ego(1), SE):
        assert is_edge_covering(apply_policy(c6, p), c6)
    assert not is_edge_covering(Bag(6, (gen.empty(6),)), c6)
    k5 = gen.complete(5)
    assert is_edge_covering(apply_policy(k5, ego(1)), k5)


def test_bag_validation():
    with pytest.raises(UsageError):
        Bag(3, (gen.cycle(4),))
    with pytest.raises(UsageError):
        Bag(3, (gen.cycle(3),), roots=(0, 1))
    with pytest.raises(UsageError):
        apply_policy(gen.empty(0), ND)


def test_policy_invariance_example(rng):
    from subgraph_wl.generators import random_permutation

    g = gen.csl(8, 2)
    sigma = random_permutation(8, rng)
    for p in (ND, ED, ego(2), ego(1, plus=True, augmented=True), SE):
        assert bags_isomorphic(apply_policy(apply_permutation(g, sigma), p), apply_policy(g, p).permuted(sigma))

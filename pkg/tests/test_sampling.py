import pytest

from subgraph_wl import generators as gen
from subgraph_wl.bag_wl import Tester
from subgraph_wl.graph import UsageError, apply_permutation
from subgraph_wl.policies import ED, apply_policy
from subgraph_wl.sampling import SampleConfig, sample_bag, sample_indices, vote_test

C6, TWO_C3 = gen.cycle(6), gen.disjoint_cycles([3, 3])


def test_ratio_one_is_full_bag():
    bag = apply_policy(C6, ED)
    for seed in (0, 1, 99):
        assert sample_bag(bag, SampleConfig(1.0, seed=seed), 0).subgraphs == bag.subgraphs


def test_same_seed_and_draw_repeat():
    cfg = SampleConfig(0.4, seed=17)
    assert sample_indices(20, cfg, 3) == sample_indices(20, cfg, 3)
    draws = {tuple(sample_indices(20, cfg, d)) for d in range(10)}
    assert len(draws) > 1


def test_half_of_six():
    idx = sample_indices(6, SampleConfig(0.5), 0)
    assert len(idx) == 3 == len(set(idx))
    assert sample_indices(6, SampleConfig(0.01), 0).__len__() == 1


@pytest.mark.parametrize("kwargs", [{"ratio": 0.0}, {"ratio": 1.5}, {"ratio": 0.5, "votes": 4}, {"ratio": 0.5, "votes": 0}, {"ratio": 0.5, "seed": -1}])
def test_config_validation(kwargs):
    with pytest.raises(UsageError):
        SampleConfig(**kwargs)


@pytest.mark.parametrize("tester", ["dss:ed", "ds:ed", "dss:nd", "ds:se"])
def test_ratio_one_matches_deterministic(tester):
    t = Tester.parse(tester)
    for g, h in ((C6, TWO_C3), (gen.path(4), gen.star(3))):
        res = vote_test(g, h, t, SampleConfig(1.0, votes=3))
        assert res.verdict == t.run(g, h)
        assert res.distinguished_votes in (0, 3)


def test_vote_deterministic_under_seed():
    cfg = SampleConfig(0.5, votes=5, seed=8)
    a = vote_test(C6, TWO_C3, "dss:ed", cfg)
    b = vote_test(C6, TWO_C3, "dss:ed", cfg)
    assert a == b and a.votes == 5


def test_identical_graph_never_separated():
    g = gen.csl(10, 3)
    for seed in range(5):
        res = vote_test(g, g, "dss:nd", SampleConfig(0.3, votes=3, seed=seed))
        assert res.distinguished_votes == 0


def test_permuted_copy_is_reported(rng):
    # sampled bags are not permutation-invariant, so only the tally shape is checked
    g = gen.csl(10, 3)
    h = apply_permutation(g, gen.random_permutation(10, rng))
    res = vote_test(g, h, "dss:nd", SampleConfig(0.5, votes=5, seed=1))
    assert 0 <= res.distinguished_votes <= 5 and len(res.draws) == 5


def test_needs_bag_tester():
    with pytest.raises(UsageError):
        vote_test(C6, TWO_C3, "wl", SampleConfig(0.5))

"""Stochastic bag subsampling with majority voting over repeated draws."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bag_wl import Tester
from .graph import Graph, UsageError
from .policies import Bag, apply_policy
from .wl import Verdict


@dataclass(frozen=True)
class SampleConfig:
    ratio: float
    votes: int = 5
    seed: int = 0

    def __post_init__(self) -> None:
        if not 0.0 < self.ratio <= 1.0:
            raise UsageError(f"sample ratio must lie in (0, 1], got {self.ratio}")
        if self.votes < 1 or self.votes % 2 == 0:
            raise UsageError(f"votes must be a positive odd count, got {self.votes}")
        if not 0 <= self.seed < 2**64:
            raise UsageError("seed must be an unsigned 64-bit value")


def sample_size(m: int, ratio: float) -> int:
    return min(m, max(1, round(ratio * m)))


def _generator(seed: int, draw_index: int) -> np.random.Generator:
    # Philox is counter based: (seed, draw_index) alone fixes the stream
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, draw_index])))


def sample_indices(m: int, cfg: SampleConfig, draw_index: int) -> list[int]:
    if m == 0:
        raise UsageError("cannot sample from an empty bag")
    if cfg.ratio >= 1.0:
        return list(range(m))
    rng = _generator(cfg.seed, draw_index)
    picked = rng.choice(m, size=sample_size(m, cfg.ratio), replace=False)
    return sorted(int(i) for i in picked)


def subbag(b: Bag, indices: list[int]) -> Bag:
    roots = None if b.roots is None else tuple(b.roots[i] for i in indices)
    return Bag(b.num_nodes, tuple(b.subgraphs[i] for i in indices), roots, b.source)


def sample_bag(b: Bag, cfg: SampleConfig, draw_index: int) -> Bag:
    """Uniform without-replacement subset of ``max(1, round(ratio * m))`` subgraphs."""
    return subbag(b, sample_indices(len(b), cfg, draw_index))


@dataclass(frozen=True)
class VoteResult:
    verdict: Verdict
    distinguished_votes: int
    votes: int
    draws: tuple[Verdict, ...]


def vote_test(g1: Graph, g2: Graph, tester: Tester | str, cfg: SampleConfig,
              max_rounds: int | None = None) -> VoteResult:
    """Run a bag tester on ``cfg.votes`` independently sampled sub-bag pairs and take the majority.

    Within a draw both bags use the same subset indices.  Bags of different
    sizes vote Distinguished, exactly as the unsampled tester would.
    """
    if isinstance(tester, str):
        tester = Tester.parse(tester)
    if tester.policy is None:
        raise UsageError(f"tester {tester} has no policy to sample")
    b1, b2 = apply_policy(g1, tester.policy), apply_policy(g2, tester.policy)
    draws = []
    for d in range(cfg.votes):
        if len(b1) != len(b2):
            draws.append(Verdict.differ(0))
            continue
        if len(b1) == 0:
            draws.append(tester.run_bags(b1, b2, max_rounds))
            continue
        idx = sample_indices(len(b1), cfg, d)
        draws.append(tester.run_bags(subbag(b1, idx), subbag(b2, idx), max_rounds))
    hits = [v for v in draws if v.distinguished]
    if 2 * len(hits) > cfg.votes:
        verdict = Verdict.differ(min(v.round for v in hits))
    else:
        verdict = Verdict.same(max(v.round for v in draws if not v.distinguished))
    return VoteResult(verdict, len(hits), cfg.votes, tuple(draws))

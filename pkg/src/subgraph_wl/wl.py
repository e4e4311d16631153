"""Base refiners: 1-WL color refinement and folklore 2-WL on ordered pairs.

All pairwise tests in the package run on the same lockstep driver,
:func:`run_lockstep`: both sides are refined round by round under one shared
:class:`ColorInterner`, fingerprints are compared after every round, and the
run stops at the first divergence or once the joint partition of all
colored items stops splitting.
"""

from __future__ import annotations

from collections import Counter
from collections.abc import Sequence
from dataclasses import dataclass, field
from typing import Protocol

import numpy as np

from .graph import ColorInterner, Graph

# pair colors are packed as hi * _PACK + lo inside int64
_PACK = 1 << 31


@dataclass(frozen=True)
class Verdict:
    """Outcome of a pairwise test.

    ``round`` is the first round whose fingerprints differ when
    ``distinguished`` is true, otherwise the round at which refinement
    converged (or the round cap, if it was hit first).
    """

    distinguished: bool
    round: int
    trace: list[dict] | None = field(default=None, compare=False)

    @classmethod
    def differ(cls, at_round: int, trace: list[dict] | None = None) -> Verdict:
        return cls(True, at_round, trace)

    @classmethod
    def same(cls, converged_at: int, trace: list[dict] | None = None) -> Verdict:
        return cls(False, converged_at, trace)

    @property
    def label(self) -> str:
        return "DISTINGUISHED" if self.distinguished else "POSSIBLY_ISOMORPHIC"

    def __str__(self) -> str:
        return f"{self.label}@{self.round}"


class RefinementState(Protocol):
    """One side of a lockstep comparison."""

    def step(self, interner: ColorInterner) -> None: ...

    def fingerprint(self, interner: ColorInterner) -> tuple[int, ...]: ...

    def item_colors(self) -> Sequence[int]: ...

    @property
    def size(self) -> int: ...


def _histogram(fp: Sequence[int]) -> dict[str, int]:
    return {str(c): k for c, k in sorted(Counter(fp).items())}


def run_lockstep(
    left: RefinementState,
    right: RefinementState,
    interner: ColorInterner,
    max_rounds: int,
    trace: bool = False,
) -> Verdict:
    """Refine both sides jointly and compare fingerprints after each round."""
    log: list[dict] | None = [] if trace else None

    def record(t: int, fa: tuple[int, ...], fb: tuple[int, ...]) -> None:
        if log is not None:
            log.append({"round": t, "left": _histogram(fa), "right": _histogram(fb)})

    if left.size != right.size:
        if log is not None:
            log.append({"round": 0, "left_size": left.size, "right_size": right.size})
        return Verdict.differ(0, log)
    fa, fb = left.fingerprint(interner), right.fingerprint(interner)
    record(0, fa, fb)
    if fa != fb:
        return Verdict.differ(0, log)
    classes = len(set(left.item_colors()) | set(right.item_colors()))
    for t in range(1, max_rounds + 1):
        left.step(interner)
        right.step(interner)
        fa, fb = left.fingerprint(interner), right.fingerprint(interner)
        record(t, fa, fb)
        if fa != fb:
            return Verdict.differ(t, log)
        # refinement is monotone, so an unchanged class count means an unchanged partition
        now = len(set(left.item_colors()) | set(right.item_colors()))
        if now == classes:
            return Verdict.same(t, log)
        classes = now
    return Verdict.same(max_rounds, log)


# --- 1-WL -------------------------------------------------------------------


def initial_colors(g: Graph, interner: ColorInterner) -> list[int]:
    return [interner.intern(("init", lab)) for lab in g.node_labels()]


def wl_step(
    adjacency: Sequence[Sequence[int]], colors: Sequence[int], interner: ColorInterner
) -> list[int]:
    """One round: ``c'(v) = intern(c(v), sorted neighbor colors)``."""
    return [
        interner.intern((colors[v], tuple(sorted([colors[w] for w in nbrs]))))
        for v, nbrs in enumerate(adjacency)
    ]


class WLState:
    """1-WL on a single graph; the fingerprint is the sorted node-color multiset."""

    def __init__(self, g: Graph, interner: ColorInterner):
        self.graph = g
        self.colors = initial_colors(g, interner)

    @property
    def size(self) -> int:
        return 1

    def step(self, interner: ColorInterner) -> None:
        self.colors = wl_step(self.graph.adjacency, self.colors, interner)

    def fingerprint(self, interner: ColorInterner) -> tuple[int, ...]:
        return tuple(sorted(self.colors))

    def item_colors(self) -> Sequence[int]:
        return self.colors


@dataclass
class ColoringHistory:
    rounds: list[list[int]]
    converged_at: int
    fingerprints: list[tuple[int, ...]]

    def class_sizes(self, t: int) -> list[int]:
        """Sorted color-class sizes at round ``t``."""
        return sorted(Counter(self.rounds[t]).values())


def wl_refine(
    g: Graph, max_rounds: int | None = None, interner: ColorInterner | None = None
) -> ColoringHistory:
    """Run 1-WL on ``g`` until its partition is stable or ``max_rounds`` is hit.

    ``rounds[0]`` is the initial coloring; ``converged_at`` is the first round
    whose partition equals the previous one.
    """
    if max_rounds is None:
        max_rounds = max(1, g.num_nodes)
    if max_rounds < 1:
        raise ValueError("max_rounds must be >= 1")
    interner = ColorInterner() if interner is None else interner
    colors = initial_colors(g, interner)
    rounds = [colors]
    prev = len(set(colors))
    converged_at = max_rounds
    for t in range(1, max_rounds + 1):
        colors = wl_step(g.adjacency, colors, interner)
        rounds.append(colors)
        now = len(set(colors))
        if now == prev:
            converged_at = t
            break
        prev = now
    return ColoringHistory(rounds, converged_at, [tuple(sorted(c)) for c in rounds])


def wl_test(
    g1: Graph, g2: Graph, max_rounds: int | None = None, trace: bool = False
) -> Verdict:
    interner = ColorInterner()
    if max_rounds is None:
        max_rounds = max(1, g1.num_nodes + g2.num_nodes)
    return run_lockstep(WLState(g1, interner), WLState(g2, interner), interner, max_rounds, trace)


# --- folklore 2-WL ------------------------------------------------------------


def fwl2_initial(g: Graph, interner: ColorInterner) -> np.ndarray:
    n = g.num_nodes
    labs = g.node_labels()
    out = np.empty((n, n), dtype=np.int64)
    for u in range(n):
        for v in range(n):
            key = ("pair", labs[u], labs[v], g.has_edge(u, v) if u != v else False, u == v)
            out[u, v] = interner.intern(key)
    return out


def fwl2_step(colors: np.ndarray, interner: ColorInterner) -> np.ndarray:
    """``c'(u,v) = intern(c(u,v), sorted {(c(u,w), c(w,v)) : w})``."""
    n = colors.shape[0]
    if n == 0:
        return colors.copy()
    # packed[u, v, w] = (c(u,w), c(w,v))
    packed = colors[:, None, :] * _PACK + colors.T[None, :, :]
    packed.sort(axis=2)
    out = np.empty_like(colors)
    for u in range(n):
        row = packed[u]
        cu = colors[u]
        for v in range(n):
            out[u, v] = interner.intern((int(cu[v]), row[v].tobytes()))
    return out


class FWL2State:
    """2-FWL on a single graph; the fingerprint is the sorted pair-color multiset."""

    def __init__(self, g: Graph, interner: ColorInterner):
        self.graph = g
        self.colors = fwl2_initial(g, interner)

    @property
    def size(self) -> int:
        return 1

    def step(self, interner: ColorInterner) -> None:
        self.colors = fwl2_step(self.colors, interner)

    def fingerprint(self, interner: ColorInterner) -> tuple[int, ...]:
        return tuple(sorted(self.colors.ravel().tolist()))

    def item_colors(self) -> Sequence[int]:
        return self.colors.ravel().tolist()


@dataclass
class PairColoring:
    colors: np.ndarray
    round: int
    fingerprint: tuple[int, ...]


def fwl2_refine(
    g: Graph, max_rounds: int | None = None, interner: ColorInterner | None = None
) -> PairColoring:
    """Refine ordered-pair colors until stable; returns the stable coloring."""
    if max_rounds is None:
        max_rounds = max(1, g.num_nodes**2)
    interner = ColorInterner() if interner is None else interner
    colors = fwl2_initial(g, interner)
    prev = len(np.unique(colors))
    t = 0
    while t < max_rounds:
        t += 1
        colors = fwl2_step(colors, interner)
        now = len(np.unique(colors))
        if now == prev:
            break
        prev = now
    return PairColoring(colors, t, tuple(sorted(colors.ravel().tolist())))


def fwl2_test(
    g1: Graph, g2: Graph, max_rounds: int | None = None, trace: bool = False
) -> Verdict:
    interner = ColorInterner()
    if max_rounds is None:
        max_rounds = max(1, g1.num_nodes**2 + g2.num_nodes**2)
    return run_lockstep(
        FWL2State(g1, interner), FWL2State(g2, interner), interner, max_rounds, trace
    )


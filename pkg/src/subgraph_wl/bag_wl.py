"""DSS-WL and DS-WL: color refinement over aligned bags of subgraphs.

DS-WL refines every subgraph on its own with a base refiner (1-WL or 2-FWL)
and reads each bag out as the multiset of subgraph colors.  DSS-WL refines
every node-in-subgraph color with four inputs: its own color, the multiset
of its neighbors' colors inside the subgraph, the needle multiset ``C_v``
(the node's colors across the whole bag) and ``M_v``, the multiset of needle
multisets over the node's neighbors in the source graph.

Both sides of a pairwise test share one interner, and DS-WL subgraphs are
refined in lockstep so that round-``t`` colors are comparable everywhere.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .graph import ColorInterner, Graph, UsageError
from .policies import Bag, PolicySpec, apply_policy, neighborhood_graph
from .wl import (
    FWL2State,
    Verdict,
    WLState,
    fwl2_initial,
    fwl2_step,
    fwl2_test,
    initial_colors,
    run_lockstep,
    wl_step,
    wl_test,
)


class Base(Enum):
    WL1 = "wl"
    FWL2 = "fwl2"


def _subgraph_color(interner: ColorInterner, colors: Sequence[int]) -> int:
    return interner.intern(("subgraph", tuple(sorted(colors))))


@dataclass
class BagColoring:
    """Colors of one bag at one round; ``colors[s][v]`` is node ``v`` in subgraph ``s``."""

    round: int
    colors: list[list[int]]
    subgraph_colors: list[int]

    @property
    def needle(self) -> list[tuple[int, ...]]:
        n = len(self.colors[0]) if self.colors else 0
        return [needle_colors(self, v) for v in range(n)]


def needle_colors(bc: BagColoring, v: int) -> tuple[int, ...]:
    """Multiset (sorted tuple) of node ``v``'s colors across every subgraph."""
    if bc.colors and not 0 <= v < len(bc.colors[0]):
        raise UsageError(f"node {v} out of range")
    return tuple(sorted(row[v] for row in bc.colors))


class DSSState:
    """DSS-WL refinement state for one bag.

    With ``exclude_self`` the needle multiset seen by subgraph ``S`` leaves out
    the node's own color in ``S`` (and ``M`` is built from those reduced
    needles).  That variant is experimental.
    """

    def __init__(self, bag: Bag, interner: ColorInterner, exclude_self: bool = False):
        self.bag = bag
        self.exclude_self = exclude_self
        self.adjacency = [s.adjacency for s in bag.subgraphs]
        self.neighbor_adjacency = neighborhood_graph(bag).adjacency
        self.colors = [initial_colors(s, interner) for s in bag.subgraphs]
        self.round = 0

    @property
    def size(self) -> int:
        return len(self.bag)

    def step(self, interner: ColorInterner) -> None:
        cols = self.colors
        n = self.bag.num_nodes
        if not cols:
            self.round += 1
            return
        needle = [tuple(sorted(row[v] for row in cols)) for v in range(n)]
        if self.exclude_self:
            self.colors = self._step_exclusive(interner, needle)
        else:
            c_ids = [interner.intern(("needle", c)) for c in needle]
            m_ids = [
                interner.intern(("needle-nbrs", tuple(sorted([c_ids[w] for w in nbrs]))))
                for nbrs in self.neighbor_adjacency
            ]
            self.colors = [
                [
                    interner.intern(
                        (row[v], tuple(sorted([row[w] for w in adj[v]])), c_ids[v], m_ids[v])
                    )
                    for v in range(n)
                ]
                for row, adj in zip(cols, self.adjacency)
            ]
        self.round += 1

    def _step_exclusive(self, interner: ColorInterner, needle: list[tuple[int, ...]]) -> list[list[int]]:
        n = self.bag.num_nodes
        out = []
        for row, adj in zip(self.colors, self.adjacency):
            c_ids = []
            for v in range(n):
                rest = list(needle[v])
                rest.remove(row[v])
                c_ids.append(interner.intern(("needle", tuple(rest))))
            new = []
            for v in range(n):
                m_id = interner.intern(
                    ("needle-nbrs", tuple(sorted([c_ids[w] for w in self.neighbor_adjacency[v]])))
                )
                new.append(
                    interner.intern((row[v], tuple(sorted([row[w] for w in adj[v]])), c_ids[v], m_id))
                )
            out.append(new)
        return out

    def subgraph_colors(self, interner: ColorInterner) -> list[int]:
        return [_subgraph_color(interner, row) for row in self.colors]

    def fingerprint(self, interner: ColorInterner) -> tuple[int, ...]:
        return tuple(sorted(self.subgraph_colors(interner)))

    def item_colors(self) -> list[int]:
        return [c for row in self.colors for c in row]

    def snapshot(self, interner: ColorInterner) -> BagColoring:
        return BagColoring(self.round, [list(r) for r in self.colors], self.subgraph_colors(interner))


class DSState(DSSState):
    """DS-WL with the 1-WL base: independent refinement of every subgraph."""

    def step(self, interner: ColorInterner) -> None:
        self.colors = [wl_step(adj, row, interner) for row, adj in zip(self.colors, self.adjacency)]
        self.round += 1


class DSFwl2State:
    """DS-WL with the folklore 2-WL base refiner."""

    def __init__(self, bag: Bag, interner: ColorInterner):
        self.bag = bag
        self.colors = [fwl2_initial(s, interner) for s in bag.subgraphs]

    @property
    def size(self) -> int:
        return len(self.bag)

    def step(self, interner: ColorInterner) -> None:
        self.colors = [fwl2_step(c, interner) for c in self.colors]

    def fingerprint(self, interner: ColorInterner) -> tuple[int, ...]:
        return tuple(sorted(_subgraph_color(interner, c.ravel().tolist()) for c in self.colors))

    def item_colors(self) -> list[int]:
        if not self.colors:
            return []
        return np.concatenate([c.ravel() for c in self.colors]).tolist()


def _default_rounds(b1: Bag, b2: Bag, per_subgraph: int = 1) -> int:
    # joint partition over both bags has at most this many classes
    items = (len(b1) * b1.num_nodes + len(b2) * b2.num_nodes) * per_subgraph
    return max(1, items)


def dss_wl_test(
    g1: Graph,
    g2: Graph,
    policy: PolicySpec,
    max_rounds: int | None = None,
    trace: bool = False,
    exclude_self: bool = False,
) -> Verdict:
    return dss_wl_test_bags(
        apply_policy(g1, policy), apply_policy(g2, policy), max_rounds, trace, exclude_self
    )


def dss_wl_test_bags(
    b1: Bag,
    b2: Bag,
    max_rounds: int | None = None,
    trace: bool = False,
    exclude_self: bool = False,
) -> Verdict:
    interner = ColorInterner()
    if max_rounds is None:
        max_rounds = _default_rounds(b1, b2)
    return run_lockstep(
        DSSState(b1, interner, exclude_self),
        DSSState(b2, interner, exclude_self),
        interner,
        max_rounds,
        trace,
    )


def ds_wl_test(
    g1: Graph,
    g2: Graph,
    policy: PolicySpec,
    base: Base = Base.WL1,
    max_rounds: int | None = None,
    trace: bool = False,
) -> Verdict:
    return ds_wl_test_bags(apply_policy(g1, policy), apply_policy(g2, policy), base, max_rounds, trace)


def ds_wl_test_bags(
    b1: Bag,
    b2: Bag,
    base: Base = Base.WL1,
    max_rounds: int | None = None,
    trace: bool = False,
) -> Verdict:
    interner = ColorInterner()
    if base is Base.WL1:
        if max_rounds is None:
            max_rounds = _default_rounds(b1, b2)
        left, right = DSState(b1, interner), DSState(b2, interner)
    else:
        if max_rounds is None:
            max_rounds = _default_rounds(b1, b2, max(b1.num_nodes, b2.num_nodes))
        left, right = DSFwl2State(b1, interner), DSFwl2State(b2, interner)
    return run_lockstep(left, right, interner, max_rounds, trace)


def dss_refine(
    bag: Bag,
    rounds: int,
    interner: ColorInterner | None = None,
    exclude_self: bool = False,
) -> list[BagColoring]:
    """DSS-WL colorings of a single bag for rounds ``0..rounds``."""
    interner = ColorInterner() if interner is None else interner
    state = DSSState(bag, interner, exclude_self)
    out = [state.snapshot(interner)]
    for _ in range(rounds):
        state.step(interner)
        out.append(state.snapshot(interner))
    return out


# --- tester configurations ----------------------------------------------------


@dataclass(frozen=True)
class Tester:
    """A named pairwise test: ``wl``, ``fwl2``, ``ds:<policy>[:fwl2]`` or ``dss:<policy>``."""

    __test__ = False  # keep pytest from collecting it

    variant: str
    policy: PolicySpec | None = None
    base: Base = Base.WL1
    exclude_self: bool = False

    @classmethod
    def parse(cls, text: str) -> Tester:
        s = text.strip().lower()
        if s in ("wl", "fwl2"):
            return cls(s)
        variant, sep, rest = s.partition(":")
        if variant not in ("ds", "dss") or not sep:
            raise UsageError(f"unknown tester {text!r}")
        base = Base.WL1
        exclude_self = False
        if variant == "ds" and rest.endswith(":fwl2"):
            base, rest = Base.FWL2, rest[: -len(":fwl2")]
        elif variant == "ds" and rest.endswith(":wl"):
            rest = rest[: -len(":wl")]
        if variant == "dss" and rest.endswith(":loo"):
            exclude_self, rest = True, rest[: -len(":loo")]
        return cls(variant, PolicySpec.parse(rest), base, exclude_self)

    def __str__(self) -> str:
        if self.policy is None:
            return self.variant
        s = f"{self.variant}:{self.policy}"
        if self.base is Base.FWL2:
            s += ":fwl2"
        if self.exclude_self:
            s += ":loo"
        return s

    def run(self, g1: Graph, g2: Graph, max_rounds: int | None = None, trace: bool = False) -> Verdict:
        if self.variant == "wl":
            return wl_test(g1, g2, max_rounds, trace)
        if self.variant == "fwl2":
            return fwl2_test(g1, g2, max_rounds, trace)
        return self.run_bags(apply_policy(g1, self.policy), apply_policy(g2, self.policy), max_rounds, trace)

    def state(self, g: Graph, interner: ColorInterner):
        """Fresh refinement state for ``g`` under ``interner``."""
        if self.variant == "wl":
            return WLState(g, interner)
        if self.variant == "fwl2":
            return FWL2State(g, interner)
        bag = apply_policy(g, self.policy)
        if self.variant == "dss":
            return DSSState(bag, interner, self.exclude_self)
        return DSState(bag, interner) if self.base is Base.WL1 else DSFwl2State(bag, interner)

    def run_bags(self, b1: Bag, b2: Bag, max_rounds: int | None = None, trace: bool = False) -> Verdict:
        if self.variant == "ds":
            return ds_wl_test_bags(b1, b2, self.base, max_rounds, trace)
        if self.variant == "dss":
            return dss_wl_test_bags(b1, b2, max_rounds, trace, self.exclude_self)
        raise UsageError(f"tester {self} does not operate on bags")


def power_matrix(
    graphs: Sequence[Graph], testers: Sequence[Tester | str], max_rounds: int | None = None
) -> dict[str, list[list[Verdict]]]:
    """Pairwise verdicts ``out[tester][i][j]`` for every tester; the diagonal is tested too."""
    if len(graphs) < 2:
        raise UsageError("power_matrix needs at least two graphs")
    out: dict[str, list[list[Verdict]]] = {}
    for t in testers:
        tester = Tester.parse(t) if isinstance(t, str) else t
        n = len(graphs)
        rows: list[list[Verdict | None]] = [[None] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                v = tester.run(graphs[i], graphs[j], max_rounds)
                rows[i][j] = rows[j][i] = v
        out[str(tester)] = rows  # type: ignore[assignment]
    return out


def corpus_classes(graphs: Sequence[Graph], tester: Tester | str) -> list[int]:
    """Group graphs the tester cannot tell apart; returns a class id per graph.

    Every graph is refined in lockstep under one interner until the joint
    partition over all of them is stable.  Restricted to any two graphs this
    is the pairwise test run past its own convergence, and refinement after
    convergence only renames colors, so ``ids[i] != ids[j]`` exactly when the
    pairwise test distinguishes graphs ``i`` and ``j``.
    """
    if isinstance(tester, str):
        tester = Tester.parse(tester)
    interner = ColorInterner()
    states = [tester.state(g, interner) for g in graphs]

    def class_count() -> int:
        seen: set[int] = set()
        for s in states:
            seen.update(s.item_colors())
        return len(seen)

    classes = class_count()
    while True:
        for s in states:
            s.step(interner)
        now = class_count()
        if now == classes:
            break
        classes = now
    keys: dict[tuple, int] = {}
    return [keys.setdefault((s.size, s.fingerprint(interner)), len(keys)) for s in states]

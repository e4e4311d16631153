"""Subgraph selection policies producing aligned bags of subgraphs.

Every subgraph in a bag lives on the full vertex set of its source graph:
node ``i`` of every subgraph is node ``i`` of the source.  Policies only
remove edges, so they are vertex-set preserving by construction.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Sequence
from dataclasses import dataclass
from enum import Enum

from .graph import Graph, UsageError, apply_permutation


class PolicyKind(Enum):
    ND = "nd"
    ED = "ed"
    EGO = "ego"
    EGO_PLUS = "ego+"
    SE = "se"


@dataclass(frozen=True)
class PolicySpec:
    kind: PolicyKind
    depth: int = 0
    augmented: bool = False

    def __post_init__(self) -> None:
        if self.kind in (PolicyKind.EGO, PolicyKind.EGO_PLUS):
            if self.depth < 1:
                raise UsageError(f"ego depth must be >= 1, got {self.depth}")
        elif self.depth:
            raise UsageError(f"policy {self.kind.value} takes no depth")

    @classmethod
    def parse(cls, text: str) -> PolicySpec:
        """Parse ``nd``, ``ed``, ``se``, ``ego:<d>``, ``ego+:<d>``, each optionally suffixed ``^``."""
        s = text.strip().lower()
        augmented = s.endswith("^")
        if augmented:
            s = s[:-1]
        name, _, arg = s.partition(":")
        try:
            kind = PolicyKind(name)
        except ValueError:
            raise UsageError(f"unknown policy {text!r}") from None
        depth = 0
        if kind in (PolicyKind.EGO, PolicyKind.EGO_PLUS):
            try:
                depth = int(arg)
            except ValueError:
                raise UsageError(f"policy {text!r} needs an integer depth") from None
        elif arg:
            raise UsageError(f"policy {name!r} takes no parameter")
        return cls(kind, depth, augmented)

    def __str__(self) -> str:
        base = self.kind.value
        if self.depth:
            base += f":{self.depth}"
        return base + ("^" if self.augmented else "")


ND = PolicySpec(PolicyKind.ND)
ED = PolicySpec(PolicyKind.ED)
SE = PolicySpec(PolicyKind.SE)


def ego(depth: int, plus: bool = False, augmented: bool = False) -> PolicySpec:
    return PolicySpec(PolicyKind.EGO_PLUS if plus else PolicyKind.EGO, depth, augmented)


@dataclass(frozen=True)
class Bag:
    """Ordered list of subgraphs on a shared vertex set.

    ``subgraphs`` carry the source labels, except under EGO+ where node
    ``v`` of subgraph ``i`` is labelled ``2 * source_label(v) + (v == roots[i])``
    so the root mark is a label channel disjoint from plain labels.  The
    augmented copy of the source graph under EGO+ has root ``-1``.

    ``source`` is the graph the bag was selected from, when known.
    """

    num_nodes: int
    subgraphs: tuple[Graph, ...]
    roots: tuple[int, ...] | None = None
    source: Graph | None = None

    @property
    def source_labels(self) -> tuple[int, ...] | None:
        return None if self.source is None else self.source.labels

    def __post_init__(self) -> None:
        for s in self.subgraphs:
            if s.num_nodes != self.num_nodes:
                raise UsageError("subgraph vertex set differs from the bag's")
        if self.source is not None and self.source.num_nodes != self.num_nodes:
            raise UsageError("source graph vertex set differs from the bag's")
        if self.roots is not None:
            if len(self.roots) != len(self.subgraphs):
                raise UsageError("one root per subgraph required")
            marked = [r for r in self.roots if r >= 0]
            if len(set(marked)) != len(marked):
                raise UsageError("roots must be distinct")

    def __len__(self) -> int:
        return len(self.subgraphs)

    def permuted(self, sigma: Sequence[int]) -> Bag:
        """Apply the node relabelling ``sigma`` to every subgraph (order unchanged)."""
        subs = tuple(apply_permutation(s, sigma) for s in self.subgraphs)
        roots = None
        if self.roots is not None:
            roots = tuple(sigma[r] if r >= 0 else -1 for r in self.roots)
        source = None if self.source is None else apply_permutation(self.source, sigma)
        return Bag(self.num_nodes, subs, roots, source)


def bfs_ball(g: Graph, root: int, depth: int) -> set[int]:
    seen = {root}
    frontier = deque([(root, 0)])
    while frontier:
        v, d = frontier.popleft()
        if d == depth:
            continue
        for w in g.adjacency[v]:
            if w not in seen:
                seen.add(w)
                frontier.append((w, d + 1))
    return seen


def _root_marked(g: Graph, root: int) -> Graph:
    labs = g.node_labels()
    return Graph(g.num_nodes, g.edges, tuple(2 * lab + (v == root) for v, lab in enumerate(labs)))


def apply_policy(g: Graph, p: PolicySpec) -> Bag:
    """Materialize the bag of subgraphs that policy ``p`` selects from ``g``."""
    if g.num_nodes < 1:
        raise UsageError("policies need a nonempty graph")
    roots: list[int] | None = None
    subs: list[Graph]
    if p.kind is PolicyKind.ND:
        # deleted node stays as an isolated vertex to keep the bag aligned
        subs = [g.with_edges(e for e in g.edges if v not in e) for v in range(g.num_nodes)]
    elif p.kind is PolicyKind.ED:
        subs = [g.with_edges(g.edges - {e}) for e in g.sorted_edges]
    elif p.kind is PolicyKind.SE:
        subs = [g.with_edges([e]) for e in g.sorted_edges]
    else:
        subs = []
        for v in range(g.num_nodes):
            ball = bfs_ball(g, v, p.depth)
            sub = g.with_edges(e for e in g.edges if e[0] in ball and e[1] in ball)
            subs.append(_root_marked(sub, v) if p.kind is PolicyKind.EGO_PLUS else sub)
        if p.kind is PolicyKind.EGO_PLUS:
            roots = list(range(g.num_nodes))
    if p.augmented:
        if roots is not None:
            subs.append(_root_marked(g, -1))
            roots.append(-1)
        else:
            subs.append(g)
    return Bag(
        g.num_nodes,
        tuple(subs),
        None if roots is None else tuple(roots),
        g,
    )


def union_edges(b: Bag) -> Graph:
    """Union of subgraph edge sets; an empty bag yields the edgeless graph."""
    edges: set[tuple[int, int]] = set()
    for s in b.subgraphs:
        edges |= s.edges
    return Graph(b.num_nodes, frozenset(edges), b.source_labels)


def neighborhood_graph(b: Bag) -> Graph:
    """Graph whose adjacency feeds the needle-neighbor term of DSS-WL.

    This is the source graph when the bag knows it.  For edge-covering
    policies it coincides with the union of the bag.
    """
    return b.source if b.source is not None else union_edges(b)


def union_adjacency(b: Bag) -> Graph:
    if not b.subgraphs:
        raise UsageError("union of an empty bag")
    return union_edges(b)


def is_edge_covering(b: Bag, g: Graph) -> bool:
    covered: set[tuple[int, int]] = set()
    for s in b.subgraphs:
        covered |= s.edges
    return g.edges <= covered

"""Simple undirected graphs, permutations, color interning and node partitions."""

from __future__ import annotations

from collections.abc import Hashable, Iterable, Sequence
from dataclasses import dataclass, field
from functools import cached_property


class UsageError(ValueError):
    """Raised when an operation receives arguments outside its domain."""


class ParseError(ValueError):
    """Raised when an edge-list document is malformed."""


def _norm(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Immutable simple undirected graph on nodes ``0..num_nodes-1``.

    ``labels`` is either ``None`` (every node carries the constant label 0)
    or a tuple with one small integer per node.
    """

    num_nodes: int
    edges: frozenset[tuple[int, int]]
    labels: tuple[int, ...] | None = None

    def __post_init__(self) -> None:
        if self.num_nodes < 0:
            raise UsageError(f"negative node count {self.num_nodes}")
        for u, v in self.edges:
            if u == v:
                raise UsageError(f"self-loop at node {u}")
            if not (0 <= u < v < self.num_nodes):
                raise UsageError(f"edge ({u}, {v}) not normalized or out of range")
        if self.labels is not None and len(self.labels) != self.num_nodes:
            raise UsageError(
                f"expected {self.num_nodes} labels, got {len(self.labels)}"
            )

    @classmethod
    def from_edges(
        cls,
        num_nodes: int,
        edges: Iterable[tuple[int, int]],
        labels: Sequence[int] | None = None,
    ) -> Graph:
        """Build a graph from arbitrary-order pairs; duplicate pairs collapse."""
        normed = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise UsageError(f"self-loop at node {u}")
            if not (0 <= u < num_nodes and 0 <= v < num_nodes):
                raise UsageError(f"edge ({u}, {v}) out of range for n={num_nodes}")
            normed.add(_norm(u, v))
        return cls(num_nodes, frozenset(normed), None if labels is None else tuple(labels))

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        """Sorted neighbor tuples, indexed by node."""
        nbrs: list[list[int]] = [[] for _ in range(self.num_nodes)]
        for u, v in self.edges:
            nbrs[u].append(v)
            nbrs[v].append(u)
        return tuple(tuple(sorted(ns)) for ns in nbrs)

    @cached_property
    def sorted_edges(self) -> tuple[tuple[int, int], ...]:
        return tuple(sorted(self.edges))

    def has_edge(self, u: int, v: int) -> bool:
        return _norm(u, v) in self.edges

    def label(self, v: int) -> int:
        return 0 if self.labels is None else self.labels[v]

    def node_labels(self) -> tuple[int, ...]:
        return self.labels if self.labels is not None else (0,) * self.num_nodes

    def degrees(self) -> list[int]:
        return [len(ns) for ns in self.adjacency]

    def with_edges(self, edges: Iterable[tuple[int, int]]) -> Graph:
        """Same vertex set and labels, different edge set."""
        return Graph(self.num_nodes, frozenset(edges), self.labels)


def degree(g: Graph, v: int) -> int:
    if not 0 <= v < g.num_nodes:
        raise UsageError(f"node {v} out of range for n={g.num_nodes}")
    return len(g.adjacency[v])


def check_permutation(sigma: Sequence[int], n: int) -> None:
    if len(sigma) != n or sorted(sigma) != list(range(n)):
        raise UsageError(f"not a permutation of 0..{n - 1}: {list(sigma)}")


def apply_permutation(g: Graph, sigma: Sequence[int]) -> Graph:
    """Relabel node ``i`` as ``sigma[i]``.

    This is the action ``(sigma . A)[i, j] = A[sigma^-1(i), sigma^-1(j)]``:
    the edge ``{u, v}`` becomes ``{sigma[u], sigma[v]}`` and node ``sigma[v]``
    of the result carries the label of node ``v``.
    """
    check_permutation(sigma, g.num_nodes)
    edges = frozenset(_norm(sigma[u], sigma[v]) for u, v in g.edges)
    labels = None
    if g.labels is not None:
        out = [0] * g.num_nodes
        for v, lab in enumerate(g.labels):
            out[sigma[v]] = lab
        labels = tuple(out)
    return Graph(g.num_nodes, edges, labels)


def inverse_permutation(sigma: Sequence[int]) -> list[int]:
    inv = [0] * len(sigma)
    for i, s in enumerate(sigma):
        inv[s] = i
    return inv


@dataclass
class ColorInterner:
    """Injective map from canonical keys to dense color ids.

    Keys are nested tuples of ints in which every multiset has already been
    sorted, so equal multisets produce equal keys.  Ids are handed out in
    first-seen order starting at 0.
    """

    table: dict[Hashable, int] = field(default_factory=dict)

    @property
    def next_id(self) -> int:
        return len(self.table)

    def intern(self, key: Hashable) -> int:
        cid = self.table.get(key)
        if cid is None:
            cid = len(self.table)
            self.table[key] = cid
        return cid

    def __len__(self) -> int:
        return len(self.table)


@dataclass(frozen=True)
class NodePartition:
    class_of: tuple[int, ...]

    @property
    def class_count(self) -> int:
        return len(set(self.class_of))

    @classmethod
    def from_colors(cls, colors: Sequence[int]) -> NodePartition:
        """Rename colors to 0..k-1 in first-occurrence order."""
        renum: dict[int, int] = {}
        return cls(tuple(renum.setdefault(c, len(renum)) for c in colors))


def partitions_equal(p: NodePartition | Sequence[int], q: NodePartition | Sequence[int]) -> bool:
    """True iff both colorings induce the same set partition of the nodes."""
    a = p.class_of if isinstance(p, NodePartition) else tuple(p)
    b = q.class_of if isinstance(q, NodePartition) else tuple(q)
    if len(a) != len(b):
        raise UsageError(f"partitions over {len(a)} and {len(b)} nodes")
    return NodePartition.from_colors(a) == NodePartition.from_colors(b)


# --- edge-list text format -------------------------------------------------


def parse_edge_list(text: str) -> Graph:
    """Parse ``n m``, then ``m`` lines ``u v``, then an optional ``labels:`` block."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise ParseError("empty document")
    try:
        n, m = (int(x) for x in lines[0].split())
    except ValueError:
        raise ParseError(f"line 1: expected 'n m', got {lines[0]!r}") from None
    if n < 0 or m < 0:
        raise ParseError("line 1: negative counts")
    if len(lines) < 1 + m:
        raise ParseError(f"expected {m} edge lines, found {len(lines) - 1}")
    edges = []
    for i, ln in enumerate(lines[1 : 1 + m], start=2):
        parts = ln.split()
        if len(parts) != 2:
            raise ParseError(f"edge line {i}: expected 'u v', got {ln!r}")
        try:
            edges.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise ParseError(f"edge line {i}: non-integer endpoint in {ln!r}") from None
    rest = lines[1 + m :]
    labels = None
    if rest:
        if rest[0] != "labels:":
            raise ParseError(f"unexpected trailing content {rest[0]!r}")
        try:
            labels = [int(x) for x in rest[1:]]
        except ValueError:
            raise ParseError("non-integer label") from None
        if len(labels) != n:
            raise ParseError(f"expected {n} labels, got {len(labels)}")
    try:
        g = Graph.from_edges(n, edges, labels)
    except UsageError as exc:
        raise ParseError(str(exc)) from None
    if g.num_edges != m:
        raise ParseError(f"duplicate edges: {m} declared, {g.num_edges} distinct")
    return g


def format_edge_list(g: Graph) -> str:
    out = [f"{g.num_nodes} {g.num_edges}"]
    out.extend(f"{u} {v}" for u, v in g.sorted_edges)
    if g.labels is not None:
        out.append("labels:")
        out.extend(str(lab) for lab in g.labels)
    return "\n".join(out) + "\n"

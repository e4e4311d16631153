"""Exact isomorphism for small graphs, bag matching and graph enumeration."""

from __future__ import annotations

from collections import defaultdict
from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from functools import cache
from itertools import combinations

from .graph import ColorInterner, Graph, UsageError
from .policies import Bag
from .wl import initial_colors, wl_step

MAX_ENUM_NODES = 7


@dataclass(frozen=True)
class IsoResult:
    isomorphic: bool
    witness: tuple[int, ...] | None = None

    def __bool__(self) -> bool:
        return self.isomorphic


def _stable_joint_colors(g1: Graph, g2: Graph) -> tuple[list[int], list[int]]:
    interner = ColorInterner()
    c1, c2 = initial_colors(g1, interner), initial_colors(g2, interner)
    classes = len(set(c1) | set(c2))
    while True:
        c1 = wl_step(g1.adjacency, c1, interner)
        c2 = wl_step(g2.adjacency, c2, interner)
        now = len(set(c1) | set(c2))
        if now == classes:
            return c1, c2
        classes = now


def _search_order(g: Graph, colors: Sequence[int]) -> list[int]:
    """Vertices in BFS order, each component started at its rarest color."""
    freq: dict[int, int] = defaultdict(int)
    for c in colors:
        freq[c] += 1
    seen: set[int] = set()
    order: list[int] = []
    for start in sorted(range(g.num_nodes), key=lambda v: (freq[colors[v]], -len(g.adjacency[v]), v)):
        if start in seen:
            continue
        seen.add(start)
        queue = [start]
        while queue:
            v = queue.pop(0)
            order.append(v)
            nbrs = sorted((w for w in g.adjacency[v] if w not in seen), key=lambda w: (freq[colors[w]], w))
            for w in nbrs:
                seen.add(w)
                queue.append(w)
    return order


def are_isomorphic(g1: Graph, g2: Graph) -> IsoResult:
    """Backtracking search restricted to matching stable 1-WL colors.

    The witness ``sigma`` satisfies ``apply_permutation(g1, sigma) == g2``.
    """
    n = g1.num_nodes
    if n != g2.num_nodes or g1.num_edges != g2.num_edges:
        return IsoResult(False)
    if n == 0:
        return IsoResult(True, ())
    c1, c2 = _stable_joint_colors(g1, g2)
    if sorted(c1) != sorted(c2):
        return IsoResult(False)
    by_color: dict[int, list[int]] = defaultdict(list)
    for v, c in enumerate(c2):
        by_color[c].append(v)
    order = _search_order(g1, c1)
    # earlier-placed neighbors of each vertex, to check adjacency incrementally
    position = {v: i for i, v in enumerate(order)}
    back = [[w for w in g1.adjacency[v] if position[w] < position[v]] for v in order]
    adj2 = [set(ns) for ns in g2.adjacency]
    mapping = [-1] * n
    used = [False] * n

    def extend(i: int) -> bool:
        if i == n:
            return True
        v = order[i]
        earlier = back[i]
        for u in by_color[c1[v]]:
            if used[u]:
                continue
            # adjacency to every already-mapped vertex must be preserved both ways
            if any(mapping[w] not in adj2[u] for w in earlier):
                continue
            if sum(1 for x in adj2[u] if used[x]) != len(earlier):
                continue
            mapping[v] = u
            used[u] = True
            if extend(i + 1):
                return True
            used[u] = False
            mapping[v] = -1
        return False

    if extend(0):
        return IsoResult(True, tuple(mapping))
    return IsoResult(False)


def _invariant(g: Graph) -> tuple:
    return (g.num_nodes, g.num_edges, tuple(sorted(g.degrees())), g.labels is None or tuple(sorted(g.labels)))


def bags_isomorphic(b1: Bag, b2: Bag) -> bool:
    """True iff the subgraphs of the two bags can be paired off isomorphically.

    Subgraphs are bucketed by cheap invariants, then isomorphism classes are
    formed inside each bucket and their multiplicities compared.  Because
    isomorphism is an equivalence relation this is the same as the existence
    of a perfect matching.
    """
    if len(b1) != len(b2):
        return False
    buckets: dict[tuple, list[tuple[Graph, list[int]]]] = defaultdict(list)
    for side, bag in enumerate((b1, b2)):
        for s in bag.subgraphs:
            reps = buckets[_invariant(s)]
            for rep, counts in reps:
                if are_isomorphic(rep, s):
                    counts[side] += 1
                    break
            else:
                counts = [0, 0]
                counts[side] = 1
                reps.append((s, counts))
    return all(c[0] == c[1] for reps in buckets.values() for _, c in reps)


def enumerate_graphs(n: int) -> Iterator[Graph]:
    """Yield one representative of every isomorphism class of simple graphs on ``n`` nodes.

    Classes on ``n`` nodes are grown from classes on ``n - 1`` nodes by adding
    a vertex joined to every possible neighbor subset, then deduplicated with
    the oracle inside invariant buckets.
    """
    if not 0 <= n <= MAX_ENUM_NODES:
        raise UsageError(f"enumerate_graphs supports 0 <= n <= {MAX_ENUM_NODES}, got {n}")
    yield from _classes(n)


@cache
def _classes(n: int) -> tuple[Graph, ...]:
    if n <= 1:
        return (Graph(n, frozenset()),)
    reps: list[Graph] = []
    buckets: dict[tuple, list[Graph]] = defaultdict(list)
    new = n - 1
    for base in _classes(n - 1):
        for size in range(n):
            for nbrs in combinations(range(new), size):
                g = Graph.from_edges(n, list(base.edges) + [(u, new) for u in nbrs])
                key = _invariant(g)
                if any(are_isomorphic(h, g) for h in buckets[key]):
                    continue
                buckets[key].append(g)
                reps.append(g)
    return tuple(reps)

"""Graph families used in the separation results, plus strong-regularity analysis."""

from __future__ import annotations

import random
from collections.abc import Sequence
from dataclasses import dataclass
from itertools import combinations

from .graph import Graph, UsageError


def cycle(n: int) -> Graph:
    if n < 3:
        raise UsageError(f"cycle needs n >= 3, got {n}")
    return Graph.from_edges(n, ((i, (i + 1) % n) for i in range(n)))


def disjoint_cycles(sizes: Sequence[int]) -> Graph:
    edges = []
    offset = 0
    for s in sizes:
        if s < 3:
            raise UsageError(f"cycle needs n >= 3, got {s}")
        edges.extend((offset + i, offset + (i + 1) % s) for i in range(s))
        offset += s
    return Graph.from_edges(offset, edges)


def path(n: int) -> Graph:
    if n < 1:
        raise UsageError(f"path needs n >= 1, got {n}")
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def star(k: int) -> Graph:
    """Center 0 joined to ``k`` leaves."""
    if k < 1:
        raise UsageError(f"star needs k >= 1, got {k}")
    return Graph.from_edges(k + 1, ((0, i) for i in range(1, k + 1)))


def complete(n: int) -> Graph:
    if n < 1:
        raise UsageError(f"complete graph needs n >= 1, got {n}")
    return Graph.from_edges(n, combinations(range(n), 2))


def empty(n: int) -> Graph:
    return Graph.from_edges(n, ())


def csl(n: int, k: int) -> Graph:
    """Circulant skip-link graph: an n-cycle plus chords ``i -- i+k mod n``."""
    if n < 7:
        raise UsageError(f"CSL needs n >= 7, got {n}")
    if not 2 <= k <= n - 2:
        raise UsageError(f"CSL skip must lie in [2, {n - 2}], got {k}")
    if k % n in (1, n - 1):
        raise UsageError(f"skip {k} coincides with cycle edges")
    edges = [(i, (i + 1) % n) for i in range(n)]
    edges += [(i, (i + k) % n) for i in range(n)]
    return Graph.from_edges(n, edges)


def _grid_index(x: int, y: int) -> int:
    # left to right, then top (y=3) to bottom: (0,3) -> 0, (1,3) -> 1, (0,2) -> 4
    return 4 * (3 - y) + x


def rooks4() -> Graph:
    """4x4 Rook's graph: grid points adjacent when they share a row or column."""
    pts = [(x, y) for y in range(4) for x in range(4)]
    edges = [
        (_grid_index(*p), _grid_index(*q))
        for p, q in combinations(pts, 2)
        if p[0] == q[0] or p[1] == q[1]
    ]
    return Graph.from_edges(16, edges)


def shrikhande() -> Graph:
    """Shrikhande graph on the 4x4 torus: offsets (0,+-1), (+-1,0), (1,-1), (-1,1).

    The diagonal orientation is the one under which deleting the edge between
    grid nodes (0,3) and (1,3) leaves (0,0) and (1,2) as their common
    neighbors, matching the reference edge-deletion coloring tables.
    """
    edges = []
    for y in range(4):
        for x in range(4):
            for dx, dy in ((1, 0), (0, 1), (1, -1)):
                edges.append((_grid_index(x, y), _grid_index((x + dx) % 4, (y + dy) % 4)))
    return Graph.from_edges(16, edges)


@dataclass(frozen=True)
class SrParams:
    n: int
    k: int
    lam: int
    mu: int

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.n, self.k, self.lam, self.mu)


def sr_parameters(g: Graph) -> SrParams | None:
    """Return ``(n, k, lambda, mu)`` if ``g`` is strongly regular, else ``None``.

    Complete and edgeless graphs leave one of lambda/mu undetermined and are
    reported as not strongly regular.
    """
    n = g.num_nodes
    if n < 2:
        return None
    degs = set(g.degrees())
    if len(degs) != 1:
        return None
    k = degs.pop()
    nbr = [set(ns) for ns in g.adjacency]
    lam: set[int] = set()
    mu: set[int] = set()
    for u, v in combinations(range(n), 2):
        common = len(nbr[u] & nbr[v])
        (lam if v in nbr[u] else mu).add(common)
        if len(lam) > 1 or len(mu) > 1:
            return None
    if not lam or not mu:
        return None
    return SrParams(n, k, lam.pop(), mu.pop())


# inline generator specs for the CLI: gen:<family>:<params>
FAMILIES = {
    "csl": (csl, 2),
    "cycle": (cycle, 1),
    "path": (path, 1),
    "star": (star, 1),
    "complete": (complete, 1),
    "empty": (empty, 1),
    "rooks4": (rooks4, 0),
    "shrikhande": (shrikhande, 0),
}


def from_spec(spec: str) -> Graph:
    """Build a graph from ``csl:12:3``, ``cycle:6``, ``2c3``, ``cycles:3,3``, ``rooks4`` ..."""
    parts = spec.split(":")
    name, args = parts[0].lower(), parts[1:]
    if name == "2c3" and not args:
        return disjoint_cycles([3, 3])
    if name == "cycles" and len(args) == 1:
        try:
            return disjoint_cycles([int(s) for s in args[0].split(",")])
        except ValueError:
            raise UsageError(f"bad cycle sizes in {spec!r}") from None
    if name not in FAMILIES:
        raise UsageError(f"unknown graph family {name!r}")
    fn, arity = FAMILIES[name]
    if len(args) != arity:
        raise UsageError(f"{name} takes {arity} parameter(s), got {len(args)}")
    try:
        ints = [int(a) for a in args]
    except ValueError:
        raise UsageError(f"non-integer parameter in {spec!r}") from None
    return fn(*ints)


def gnp(n: int, p: float, rng: random.Random) -> Graph:
    """Erdos-Renyi G(n, p) drawn from ``rng``."""
    return Graph.from_edges(n, [e for e in combinations(range(n), 2) if rng.random() < p])


def random_permutation(n: int, rng: random.Random) -> list[int]:
    sigma = list(range(n))
    rng.shuffle(sigma)
    return sigma

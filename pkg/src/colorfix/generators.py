"""Seeded random instances. Every function takes a ``random.Random``."""

from __future__ import annotations

import random

from .graph import Coloring, Graph
from .reductions import MsiInstance, PrExtInstance


def random_graph(n: int, p: float, rng: random.Random) -> Graph:
    edges = [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1) if rng.random() < p]
    return Graph(n, edges)


def random_coloring(n: int, r: int, rng: random.Random) -> Coloring:
    return Coloring(tuple(rng.randint(1, r) for _ in range(n)), r)


def random_tree(n: int, rng: random.Random) -> Graph:
    """Uniform random labelled tree via a random Pruefer sequence."""
    if n <= 1:
        return Graph(n)
    if n == 2:
        return Graph(2, [(1, 2)])
    seq = [rng.randint(1, n) for _ in range(n - 2)]
    degree = [1] * (n + 1)
    for x in seq:
        degree[x] += 1
    edges = []
    for x in seq:
        leaf = next(v for v in range(1, n + 1) if degree[v] == 1)
        edges.append((leaf, x))
        degree[leaf] -= 1
        degree[x] -= 1
    u, v = (w for w in range(1, n + 1) if degree[w] == 1)
    edges.append((u, v))
    return Graph(n, edges)


def random_bipartite(n: int, p: float, rng: random.Random) -> Graph:
    side = [rng.random() < 0.5 for _ in range(n + 1)]
    edges = [
        (u, v)
        for u in range(1, n + 1)
        for v in range(u + 1, n + 1)
        if side[u] != side[v] and rng.random() < p
    ]
    return Graph(n, edges)


def random_ktree(n: int, w: int, rng: random.Random) -> Graph:
    """Random w-tree on n >= w + 1 vertices (treewidth exactly w)."""
    if n < w + 1:
        raise ValueError(f"a {w}-tree needs at least {w + 1} vertices")
    cliques = [tuple(range(1, w + 2))]
    edges = [(a, b) for a in range(1, w + 2) for b in range(a + 1, w + 2)]
    for v in range(w + 2, n + 1):
        base = rng.choice(cliques)
        drop = rng.randrange(w + 1)
        keep = base[:drop] + base[drop + 1 :]
        edges += [(u, v) for u in keep]
        cliques.append(keep + (v,))
    return Graph(n, edges)


def random_preext(n: int, p: float, rng: random.Random, precolor_prob: float = 0.5) -> PrExtInstance:
    g = random_bipartite(n, p, rng)
    pre = {v: rng.randint(1, 3) for v in g.vertices if rng.random() < precolor_prob}
    return PrExtInstance(g, pre)


def random_msi(k: int, part_size: int, p: float, pattern: Graph, rng: random.Random) -> MsiInstance:
    """Host graph with ``k`` parts of ``part_size`` vertices; edges only along pattern edges."""
    parts = tuple(
        frozenset(range(i * part_size + 1, (i + 1) * part_size + 1)) for i in range(k)
    )
    edges = [
        (a, b)
        for i, j in pattern.edges
        for a in sorted(parts[i - 1])
        for b in sorted(parts[j - 1])
        if rng.random() < p
    ]
    return MsiInstance(Graph(k * part_size, edges), parts, pattern)

"""Closed-form solver for two colors.

A connected bipartite graph has exactly two proper 2-colorings, so the fix
value is a sum over components of the cheaper of the two orientations.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .errors import MalformedInputError
from .graph import Coloring, FixResult, Graph, Status


@dataclass(frozen=True)
class Bipartition:
    """Sides ``(X, Y)`` of every component; ``X`` holds the component's smallest vertex."""

    components: tuple[tuple[frozenset[int], frozenset[int]], ...]

    @property
    def x(self) -> frozenset[int]:
        return frozenset().union(*(x for x, _ in self.components))


@dataclass(frozen=True)
class NotBipartite:
    odd_cycle: tuple[int, ...]


def bipartition_classes(graph: Graph) -> Bipartition | NotBipartite:
    side = [-1] * (graph.n + 1)
    parent = [0] * (graph.n + 1)
    comps = []
    for s in graph.vertices:
        if side[s] >= 0:
            continue
        side[s] = 0
        members = [s]
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in sorted(graph.neighbors(u)):
                if side[w] < 0:
                    side[w] = 1 - side[u]
                    parent[w] = u
                    members.append(w)
                    queue.append(w)
                elif side[w] == side[u]:
                    return NotBipartite(_odd_cycle(parent, s, u, w))
        x = frozenset(v for v in members if side[v] == 0)
        comps.append((x, frozenset(members) - x))
    return Bipartition(tuple(comps))


def _odd_cycle(parent: list[int], root: int, u: int, w: int) -> tuple[int, ...]:
    def path(v):
        out = [v]
        while v != root:
            v = parent[v]
            out.append(v)
        return out

    pu, pw = path(u), path(w)
    on_pw = set(pw)
    lca = next(v for v in pu if v in on_pw)
    left = pu[: pu.index(lca) + 1]
    right = pw[: pw.index(lca)]
    return tuple(left + right[::-1])


def solve_bipartite(graph: Graph, phi: Coloring) -> FixResult:
    """Exact fix value for a 2-coloring.

    ``stats["components"]`` holds ``(a, b)`` per component: the cost of
    orienting it as X->1, Y->2 and as X->2, Y->1 respectively.
    """
    if phi.n != graph.n:
        raise MalformedInputError("coloring and graph sizes differ")
    bad = [v for v in graph.vertices if phi[v] not in (1, 2)]
    if bad:
        raise MalformedInputError(f"vertices {bad} use colors outside {{1, 2}}")
    parts = bipartition_classes(graph)
    if isinstance(parts, NotBipartite):
        return FixResult(Status.INFEASIBLE, solver="bipartite", stats={"odd_cycle": parts.odd_cycle})
    colors = list(phi.colors)
    total = 0
    costs = []
    for x, y in parts.components:
        flip_a = sorted([v for v in x if phi[v] != 1] + [v for v in y if phi[v] != 2])
        flip_b = sorted([v for v in x if phi[v] != 2] + [v for v in y if phi[v] != 1])
        costs.append((len(flip_a), len(flip_b)))
        if (len(flip_a), flip_a) <= (len(flip_b), flip_b):
            total += len(flip_a)
            for v in x:
                colors[v - 1] = 1
            for v in y:
                colors[v - 1] = 2
        else:
            total += len(flip_b)
            for v in x:
                colors[v - 1] = 2
            for v in y:
                colors[v - 1] = 1
    witness = Coloring(tuple(colors), phi.r)
    return FixResult(Status.OPTIMAL, total, witness, "bipartite", {"components": costs})

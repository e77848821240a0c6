"""Instance generators built from hardness gadgets.

Each generator returns a :class:`FixInstance` whose yes/no answer at its
budget matches the source instance. The tests check these equivalences
against brute force on small inputs.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .bipartite import Bipartition, bipartition_classes
from .errors import MalformedInputError
from .graph import Coloring, ColorLists, FixInstance, Graph

ListFixInstance = FixInstance


@dataclass(frozen=True)
class PrExtInstance:
    """Graph with some vertices precolored from 1..3.

    An improper precoloring is accepted and simply makes a no-instance.
    """

    graph: Graph
    precolored: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        pre = {int(v): int(c) for v, c in dict(self.precolored).items()}
        for v, c in pre.items():
            if not 1 <= v <= self.graph.n:
                raise MalformedInputError(f"precolored vertex {v} outside 1..{self.graph.n}")
            if not 1 <= c <= 3:
                raise MalformedInputError(f"precolor {c} of vertex {v} outside 1..3")
        object.__setattr__(self, "precolored", pre)

    @property
    def u(self) -> frozenset[int]:
        return frozenset(self.precolored)


@dataclass(frozen=True)
class MsiInstance:
    """Host graph whose vertices are split into independent parts, one per pattern vertex."""

    host: Graph
    parts: tuple[frozenset[int], ...]
    pattern: Graph

    def __post_init__(self) -> None:
        parts = tuple(frozenset(p) for p in self.parts)
        object.__setattr__(self, "parts", parts)
        if len(parts) != self.pattern.n:
            raise MalformedInputError(
                f"{len(parts)} parts for a pattern on {self.pattern.n} vertices"
            )
        owner: dict[int, int] = {}
        for i, part in enumerate(parts, start=1):
            if not part:
                raise MalformedInputError(f"part {i} is empty")
            for v in part:
                if not 1 <= v <= self.host.n:
                    raise MalformedInputError(f"part {i} holds {v} outside 1..{self.host.n}")
                if v in owner:
                    raise MalformedInputError(f"vertex {v} lies in parts {owner[v]} and {i}")
                owner[v] = i
        if len(owner) != self.host.n:
            raise MalformedInputError("parts do not cover the host graph")
        for a, b in self.host.edges:
            i, j = owner[a], owner[b]
            if i == j:
                raise MalformedInputError(f"part {i} is not independent: edge ({a}, {b})")
            if not self.pattern.has_edge(i, j):
                raise MalformedInputError(
                    f"host edge ({a}, {b}) joins parts {i} and {j}, which the pattern does not"
                )

    def owner(self) -> dict[int, int]:
        return {v: i for i, part in enumerate(self.parts, start=1) for v in part}


def vc_to_fix(graph: Graph, k: int) -> FixInstance:
    """Vertex cover of size k as a fix instance with ``r = k + 1``, all vertices colored ``k + 1``.

    Isolated vertices are dropped first since they never belong to a minimum cover.
    """
    if not 0 <= k <= graph.n:
        raise MalformedInputError(f"need 0 <= k <= n, got k={k}, n={graph.n}")
    core, relabel = graph.induced(v for v in graph.vertices if graph.degree(v) > 0)
    r = k + 1
    labels = {new: old for old, new in relabel.items()}
    return FixInstance(core, Coloring.uniform(core.n, r, r), r, k, labels=labels)


class _Builder:
    """Accumulates vertices, edges, colors and lists for a gadget graph."""

    def __init__(self) -> None:
        self.colors: list[int] = []
        self.lists: list[frozenset[int] | None] = []
        self.edges: list[tuple[int, int]] = []
        self.labels: dict[int, object] = {}

    def add(self, color: int, allowed=None, label=None) -> int:
        self.colors.append(color)
        self.lists.append(frozenset(allowed) if allowed is not None else None)
        v = len(self.colors)
        if label is not None:
            self.labels[v] = label
        return v

    def pendants(self, v: int, color: int, count: int) -> None:
        for _ in range(count):
            self.edges.append((v, self.add(color)))

    def build(self, r: int, k: int | None, with_lists: bool) -> FixInstance:
        n = len(self.colors)
        graph = Graph(n, self.edges)
        lists = None
        if with_lists:
            full = frozenset(range(1, r + 1))
            lists = ColorLists(tuple(s if s is not None else full for s in self.lists))
        return FixInstance(graph, Coloring(tuple(self.colors), r), r, k, lists, self.labels)


def preext_to_fix(inst: PrExtInstance, r: int) -> FixInstance:
    """Precoloring extension with three colors as a fix instance with budget n.

    The copy of G is colored 1. Groups of n+1 pendants pin colors 4..r away
    from every vertex, and two more groups block all but the precolor on
    each vertex of U.
    """
    if r < 3:
        raise MalformedInputError(f"need r >= 3, got {r}")
    g = inst.graph
    n = g.n
    b = _Builder()
    for v in g.vertices:
        b.add(1, label=v)
    b.edges.extend(g.edges)
    for v in g.vertices:
        for c in range(4, r + 1):
            b.pendants(v, c, n + 1)
    for u in sorted(inst.precolored):
        for c in sorted({1, 2, 3} - {inst.precolored[u]}):
            b.pendants(u, c, n + 1)
    return b.build(r, n, with_lists=False)


def listfix_to_fix(inst: ListFixInstance) -> FixInstance:
    """Replace lists by pendants: k+1 pendants of every color a vertex may not end with."""
    if inst.lists is None:
        raise MalformedInputError("list instance has no lists")
    if inst.k is None:
        raise MalformedInputError("list instance has no budget")
    g, r, k = inst.graph, inst.r, inst.k
    b = _Builder()
    for v in g.vertices:
        b.add(inst.coloring[v], label=inst.labels.get(v, v))
    b.edges.extend(g.edges)
    for v in g.vertices:
        for c in range(1, r + 1):
            if c not in inst.lists[v]:
                b.pendants(v, c, k + 1)
    return b.build(r, k, with_lists=False)


def msi_to_listfix(inst: MsiInstance) -> ListFixInstance:
    """Edge-gadget construction: a list instance that is yes iff H has a colorful copy of P.

    Host vertex ``v`` doubles as color ``v``; the extra color ``N + 1`` plays
    the role of the initial selector color. The budget is ``k + 2|E(P)|``.
    """
    host, pattern = inst.host, inst.pattern
    zero = host.n + 1
    r = zero
    b = _Builder()
    for i, part in enumerate(inst.parts, start=1):
        b.add(zero, part, label=("x", i))
    side: dict[tuple[int, int], dict[int, int]] = {}
    for i, j in pattern.edges:
        for a, c in ((i, j), (j, i)):
            side[a, c] = {}
            for v in sorted(inst.parts[a - 1]):
                allowed = {v} | (host.neighbors(v) & inst.parts[c - 1])
                x = b.add(v, allowed, label=("x", a, c, v))
                b.edges.append((a, x))
                side[a, c][v] = x
        for x in side[i, j].values():
            for y in side[j, i].values():
                b.edges.append((x, y))
    return b.build(r, pattern.n + 2 * pattern.m, with_lists=True)


def _rotate(color: int, shift: int) -> int:
    return (color - 1 + shift) % 3 + 1


def _instance_gadget(b: _Builder, v1: int, inst: PrExtInstance, shift: int, slot: int) -> None:
    """Attach the ten-node gadget (v1 already placed) plus a copy of G to the builder.

    ``shift`` rotates colors 1->2->3->1 that many times; the precolor classes
    rotate the same way so each class is still forced onto its own color.
    """
    g = inst.graph
    sides = bipartition_classes(g)
    if not isinstance(sides, Bipartition):
        raise MalformedInputError(f"instance {slot} is not bipartite")
    rot = lambda c: _rotate(c, shift)  # noqa: E731
    rotset = lambda s: {rot(c) for c in s}  # noqa: E731
    x_side = sides.x
    copy = {}
    for v in g.vertices:
        copy[v] = b.add(rot(1) if v in x_side else rot(2), label=("g", slot, v))
    b.edges.extend((copy[u], copy[v]) for u, v in g.edges)

    spec = {
        2: (2, {2, 3}),
        3: (2, {1, 2}),
        4: (1, {1, 3}),
        5: (3, {1, 3}),
        6: (3, {2, 3}),
        7: (3, {1, 3}),
        8: (3, {2, 3}),
        9: (3, {3}),
        10: (3, {3}),
    }
    node = {1: v1}
    for i, (color, allowed) in spec.items():
        node[i] = b.add(rot(color), rotset(allowed), label=("v", slot, i))
    for a, c in ((1, 2), (1, 3), (2, 5), (2, 6), (3, 4), (4, 7), (4, 8)):
        b.edges.append((node[a], node[c]))

    # Role j of the base gadget is played by the precolor class rot(j).
    classes = {j: [u for u, c in inst.precolored.items() if c == rot(j)] for j in (1, 2, 3)}
    for hubs, roles in (((5, 7), (2, 3)), ((6, 8), (1, 3)), ((9, 10), (1, 2))):
        for h in hubs:
            for j in roles:
                for u in classes[j]:
                    b.edges.append((node[h], copy[u]))


def cross_compose_lists(instances: Sequence[PrExtInstance]) -> ListFixInstance:
    """OR of bipartite three-color precoloring extension instances as one list instance.

    A complete binary tree of depth t selects one instance; the budget is t + n + 8.
    """
    if not instances:
        raise MalformedInputError("need at least one instance")
    n = instances[0].graph.n
    if any(inst.graph.n != n for inst in instances):
        raise MalformedInputError("instances must all have the same number of vertices")
    t = math.ceil(math.log2(len(instances))) if len(instances) > 1 else 0
    padded = list(instances) + [instances[-1]] * ((1 << t) - len(instances))

    b = _Builder()
    tree_color = {1: 1}
    for node in range(2, 1 << (t + 1)):
        parent_color = tree_color[node // 2]
        others = sorted({1, 2, 3} - {parent_color})
        tree_color[node] = others[node % 2]
    tree_id = {}
    leaves = range(1 << t, 1 << (t + 1))
    for node in range(1, 1 << (t + 1)):
        if node in leaves:
            allowed = {_rotate(1, tree_color[node] - 1), _rotate(2, tree_color[node] - 1)}
            if node == 1:
                allowed &= {2, 3}
        else:
            allowed = {2, 3} if node == 1 else {1, 2, 3}
        tree_id[node] = b.add(tree_color[node], allowed, label=("tree", node))
        if node > 1:
            b.edges.append((tree_id[node // 2], tree_id[node]))
    for slot, node in enumerate(leaves):
        _instance_gadget(b, tree_id[node], padded[slot], tree_color[node] - 1, slot)
    return b.build(3, t + n + 8, with_lists=True)


def cross_compose(instances: Sequence[PrExtInstance]) -> FixInstance:
    """:func:`cross_compose_lists` lowered to a plain fix instance."""
    return listfix_to_fix(cross_compose_lists(instances))


# Brute-force deciders for the source problems, used to check the gadgets.


def has_vertex_cover(graph: Graph, k: int) -> bool:
    for size in range(0, min(k, graph.n) + 1):
        for cover in itertools.combinations(graph.vertices, size):
            chosen = set(cover)
            if all(u in chosen or v in chosen for u, v in graph.edges):
                return True
    return False


def preext_extendable(inst: PrExtInstance, r: int = 3) -> bool:
    g = inst.graph
    free = [v for v in g.vertices if v not in inst.precolored]
    colors = dict(inst.precolored)
    for choice in itertools.product(range(1, r + 1), repeat=len(free)):
        colors.update(zip(free, choice))
        if all(colors[u] != colors[v] for u, v in g.edges):
            return True
    return False


def msi_has_embedding(inst: MsiInstance) -> bool:
    for pick in itertools.product(*(sorted(p) for p in inst.parts)):
        if all(inst.host.has_edge(pick[i - 1], pick[j - 1]) for i, j in inst.pattern.edges):
            return True
    return False

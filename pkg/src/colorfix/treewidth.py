"""Tree decompositions and the bag-coloring dynamic program.

Every node of a nice decomposition keeps a dense table indexed by the colors
of its bag vertices (one axis per vertex, in increasing vertex order). An
entry is the fewest recolorings among already-forgotten vertices that is
consistent with that bag coloring, or ``inf`` when the bag coloring is not a
proper list coloring. Recoloring cost is charged when a vertex is forgotten,
so a join is a plain sum of its two children.
"""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping

import networkx as nx
import numpy as np
from networkx.algorithms.approximation import treewidth_min_fill_in

from .errors import SizeGuardError, ValidationError
from .graph import Coloring, ColorLists, FixResult, Graph, Status

DEFAULT_STATE_GUARD = 10_000_000


@dataclass(frozen=True)
class TreeDecomposition:
    """Bags keyed by node id plus the tree edges between node ids."""

    bags: Mapping[int, frozenset[int]]
    edges: tuple[tuple[int, int], ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "bags", {int(k): frozenset(v) for k, v in sorted(self.bags.items())}
        )
        object.__setattr__(self, "edges", tuple(sorted((min(a, b), max(a, b)) for a, b in self.edges)))

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags.values()), default=0) - 1

    def neighbors(self) -> dict[int, list[int]]:
        nbrs: dict[int, list[int]] = {b: [] for b in self.bags}
        for a, b in self.edges:
            nbrs[a].append(b)
            nbrs[b].append(a)
        return nbrs

    def validate(self, graph: Graph) -> None:
        """Raise ValidationError naming the first violated condition."""
        ids = set(self.bags)
        for a, b in self.edges:
            if a not in ids or b not in ids:
                raise ValidationError(f"tree edge ({a}, {b}) references an unknown bag")
            if a == b:
                raise ValidationError(f"tree edge ({a}, {b}) is a loop")
        if len(set(self.edges)) != len(self.edges):
            raise ValidationError("tree has parallel edges")
        for node, bag in self.bags.items():
            bad = [v for v in bag if not 1 <= v <= graph.n]
            if bad:
                raise ValidationError(f"bag {node} contains vertices outside 1..{graph.n}: {bad}")
        if self.bags:
            if len(self.edges) != len(self.bags) - 1 or not _connected(ids, self.neighbors()):
                raise ValidationError("bags do not form a tree")
        elif graph.n:
            raise ValidationError(f"vertex coverage: no bags for {graph.n} vertices")

        holders: dict[int, list[int]] = defaultdict(list)
        for node, bag in self.bags.items():
            for v in bag:
                holders[v].append(node)
        missing = [v for v in graph.vertices if v not in holders]
        if missing:
            raise ValidationError(f"vertex coverage: vertices {missing} are in no bag")
        for u, v in graph.edges:
            if not any(u in self.bags[node] for node in holders[v]):
                raise ValidationError(f"edge coverage: edge ({u}, {v}) is in no bag")
        nbrs = self.neighbors()
        for v, nodes in holders.items():
            if not _connected(set(nodes), nbrs):
                raise ValidationError(f"connectivity: bags holding vertex {v} are not a subtree")


def _connected(nodes: set[int], nbrs: Mapping[int, list[int]]) -> bool:
    if not nodes:
        return True
    start = min(nodes)
    seen = {start}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for y in nbrs[x]:
            if y in nodes and y not in seen:
                seen.add(y)
                queue.append(y)
    return seen == nodes


def min_fill_decomposition(graph: Graph) -> TreeDecomposition:
    """Decomposition from a min-fill elimination ordering (upper bound on treewidth)."""
    if graph.n == 0:
        return TreeDecomposition({1: frozenset()})
    g = nx.Graph()
    g.add_nodes_from(graph.vertices)
    g.add_edges_from(graph.edges)
    _, tree = treewidth_min_fill_in(g)
    order = sorted(tree.nodes, key=lambda b: (len(b), sorted(b)))
    ids = {bag: i for i, bag in enumerate(order, start=1)}
    return TreeDecomposition(
        {i: bag for bag, i in ids.items()},
        tuple((ids[a], ids[b]) for a, b in tree.edges),
    )


@dataclass(frozen=True)
class NiceNode:
    kind: str  # "leaf" | "introduce" | "forget" | "join"
    bag: tuple[int, ...]
    vertex: int | None = None
    children: tuple[int, ...] = ()


@dataclass(frozen=True)
class NiceTreeDecomposition:
    """Nice decomposition stored in post-order: children precede parents, root is last."""

    nodes: tuple[NiceNode, ...]

    @property
    def root(self) -> int:
        return len(self.nodes) - 1

    @property
    def width(self) -> int:
        return max((len(nd.bag) for nd in self.nodes), default=0) - 1

    def count(self, kind: str) -> int:
        return sum(nd.kind == kind for nd in self.nodes)

    def check(self) -> None:
        """Assert the structural rules of a nice decomposition."""
        for i, nd in enumerate(self.nodes):
            bag = set(nd.bag)
            assert list(nd.bag) == sorted(bag), f"node {i}: bag not sorted"
            kids = [self.nodes[c] for c in nd.children]
            assert all(c < i for c in nd.children), f"node {i}: child after parent"
            if nd.kind == "leaf":
                assert not kids and not bag
            elif nd.kind == "introduce":
                assert len(kids) == 1 and bag == set(kids[0].bag) | {nd.vertex}
                assert nd.vertex not in kids[0].bag
            elif nd.kind == "forget":
                assert len(kids) == 1 and set(kids[0].bag) == bag | {nd.vertex}
                assert nd.vertex not in bag
            elif nd.kind == "join":
                assert len(kids) == 2 and all(set(k.bag) == bag for k in kids)
            else:
                raise AssertionError(f"node {i}: unknown kind {nd.kind}")
        assert self.nodes[self.root].bag == (), "root bag is not empty"


def make_nice(td: TreeDecomposition, graph: Graph | None = None) -> NiceTreeDecomposition:
    """Convert a decomposition into nice form of the same width.

    The tree is rooted at its smallest node id. With ``graph`` given the input
    is validated first.
    """
    if graph is not None:
        td.validate(graph)
    if not td.bags:
        return NiceTreeDecomposition((NiceNode("leaf", ()),))
    nbrs = td.neighbors()
    root = min(td.bags)
    parent = {root: None}
    order = [root]
    for x in order:
        for y in sorted(nbrs[x]):
            if y not in parent:
                parent[y] = x
                order.append(y)
    if len(order) != len(td.bags):
        raise ValidationError("bags do not form a tree")
    children: dict[int, list[int]] = defaultdict(list)
    for x in order[1:]:
        children[parent[x]].append(x)

    nodes: list[NiceNode] = []

    def add(kind: str, bag: Iterable[int], vertex=None, kids=()) -> int:
        nodes.append(NiceNode(kind, tuple(sorted(bag)), vertex, tuple(kids)))
        return len(nodes) - 1

    def transition(top: int, target: frozenset[int]) -> int:
        current = set(nodes[top].bag)
        for v in sorted(current - target):
            current.discard(v)
            top = add("forget", current, v, (top,))
        for v in sorted(target - current):
            current.add(v)
            top = add("introduce", current, v, (top,))
        return top

    top_of: dict[int, int] = {}
    for x in reversed(order):
        bag = td.bags[x]
        kids = [transition(top_of[c], bag) for c in children[x]]
        if not kids:
            kids = [transition(add("leaf", ()), bag)]
        top = kids[0]
        for other in kids[1:]:
            top = add("join", bag, None, (top, other))
        top_of[x] = top
    transition(top_of[root], frozenset())
    return NiceTreeDecomposition(tuple(nodes))


def _domains(graph: Graph, r: int, lists: ColorLists | None) -> list[np.ndarray]:
    doms = [np.arange(0)]
    for v in graph.vertices:
        allowed = range(1, r + 1) if lists is None else sorted(c for c in lists[v] if 1 <= c <= r)
        doms.append(np.fromiter(allowed, dtype=np.int64))
    return doms


def solve_treewidth(
    graph: Graph,
    phi: Coloring,
    r: int | None = None,
    lists: ColorLists | None = None,
    td: TreeDecomposition | None = None,
    *,
    state_guard: int = DEFAULT_STATE_GUARD,
    force: bool = False,
) -> FixResult:
    """Exact fix value by dynamic programming over a nice tree decomposition.

    Without ``td`` a min-fill decomposition is used. ``stats["bag_states"]``
    lists ``(bag_size, proper_states)`` for every node of the nice tree.
    """
    r = phi.r if r is None else r
    if phi.n != graph.n:
        raise ValidationError("coloring and graph sizes differ")
    if td is None:
        td = min_fill_decomposition(graph)
    else:
        td.validate(graph)
    nice = make_nice(td)
    doms = _domains(graph, r, lists)
    if any(len(doms[v]) == 0 for v in graph.vertices):
        return FixResult.infeasible("treewidth", width=td.width)
    largest = max(int(np.prod([len(doms[v]) for v in nd.bag])) for nd in nice.nodes)
    if largest > state_guard and not force:
        raise SizeGuardError(
            f"largest bag table has {largest} states (guard {state_guard}); use force"
        )

    tables: list[np.ndarray | None] = [None] * len(nice.nodes)
    choice: dict[int, np.ndarray] = {}
    bag_states: list[tuple[int, int]] = []
    for i, nd in enumerate(nice.nodes):
        if nd.kind == "leaf":
            table = np.zeros(())
        elif nd.kind == "introduce":
            v = nd.vertex
            child = tables[nd.children[0]]
            pos = nd.bag.index(v)
            table = np.repeat(np.expand_dims(child, pos), len(doms[v]), axis=pos)
            for q, u in enumerate(nd.bag):
                if u == v or not graph.has_edge(u, v):
                    continue
                clash = doms[v][:, None] == doms[u][None, :]
                if q < pos:
                    clash = clash.T
                shape = [1] * len(nd.bag)
                shape[pos], shape[q] = len(doms[v]), len(doms[u])
                table[np.broadcast_to(clash.reshape(shape), table.shape)] = np.inf
        elif nd.kind == "forget":
            v = nd.vertex
            child_node = nice.nodes[nd.children[0]]
            pos = child_node.bag.index(v)
            cost = (doms[v] != phi[v]).astype(float)
            shape = [1] * len(child_node.bag)
            shape[pos] = len(doms[v])
            scored = tables[nd.children[0]] + cost.reshape(shape)
            choice[i] = np.argmin(scored, axis=pos)
            table = np.min(scored, axis=pos)
        else:
            table = tables[nd.children[0]] + tables[nd.children[1]]
        for c in nd.children:
            tables[c] = None
        tables[i] = table
        bag_states.append((len(nd.bag), int(np.isfinite(table).sum())))

    stats = {
        "width": td.width,
        "nice_nodes": len(nice.nodes),
        "bag_states": bag_states,
        "max_states": max(s for _, s in bag_states),
    }
    best = float(tables[nice.root])
    if not np.isfinite(best):
        return FixResult(Status.INFEASIBLE, solver="treewidth", stats=stats)

    color: dict[int, int] = {}
    for i in range(nice.root, -1, -1):
        nd = nice.nodes[i]
        if nd.kind == "forget":
            idx = tuple(int(np.searchsorted(doms[u], color[u])) for u in nd.bag)
            color[nd.vertex] = int(doms[nd.vertex][choice[i][idx]])
    witness = Coloring(tuple(color[v] for v in graph.vertices), phi.r)
    return FixResult(Status.OPTIMAL, int(round(best)), witness, "treewidth", stats)

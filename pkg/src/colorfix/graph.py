"""Graphs, colorings, color lists, and the primitives every solver shares.

Vertices are the integers ``1..n`` and colors are the integers ``1..r``.
All types here are immutable once built.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import MalformedInputError

Edge = tuple[int, int]


class Graph:
    """Simple undirected graph on vertices ``1..n``.

    Duplicate edges are merged; self-loops and out-of-range endpoints raise
    :class:`MalformedInputError`.
    """

    def __init__(self, n: int, edges: Iterable[Sequence[int]] = ()) -> None:
        if n < 0:
            raise MalformedInputError(f"vertex count must be nonnegative, got {n}")
        normalized: set[Edge] = set()
        for e in edges:
            u, v = int(e[0]), int(e[1])
            if u == v:
                raise MalformedInputError(f"self-loop at vertex {u}")
            if not (1 <= u <= n and 1 <= v <= n):
                raise MalformedInputError(f"edge ({u}, {v}) has an endpoint outside 1..{n}")
            normalized.add((u, v) if u < v else (v, u))
        adj: list[set[int]] = [set() for _ in range(n + 1)]
        for u, v in normalized:
            adj[u].add(v)
            adj[v].add(u)
        self.n = n
        self.edges: tuple[Edge, ...] = tuple(sorted(normalized))
        self._adj: tuple[frozenset[int], ...] = tuple(frozenset(a) for a in adj)

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    def neighbors(self, v: int) -> frozenset[int]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj[u]

    @cached_property
    def neighbor_masks(self) -> tuple[int, ...]:
        """Bitmask of N(v) for each vertex, bit ``v - 1`` standing for vertex ``v``."""
        masks = [0] * self.n
        for u, v in self.edges:
            masks[u - 1] |= 1 << (v - 1)
            masks[v - 1] |= 1 << (u - 1)
        return tuple(masks)

    def components(self) -> list[list[int]]:
        """Connected components, each sorted, ordered by smallest vertex."""
        seen = [False] * (self.n + 1)
        comps = []
        for s in self.vertices:
            if seen[s]:
                continue
            seen[s] = True
            comp = [s]
            queue = deque([s])
            while queue:
                u = queue.popleft()
                for w in self._adj[u]:
                    if not seen[w]:
                        seen[w] = True
                        comp.append(w)
                        queue.append(w)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    def induced(self, keep: Iterable[int]) -> tuple["Graph", dict[int, int]]:
        """Induced subgraph relabelled to ``1..|keep|`` plus the old-to-new map."""
        order = sorted(set(keep))
        relabel = {v: i for i, v in enumerate(order, start=1)}
        edges = [(relabel[u], relabel[v]) for u, v in self.edges if u in relabel and v in relabel]
        return Graph(len(order), edges), relabel

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class Coloring:
    """Total assignment of colors ``1..r`` to vertices ``1..n`` (possibly improper)."""

    colors: tuple[int, ...]
    r: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "colors", tuple(int(c) for c in self.colors))
        if self.r < 1:
            raise MalformedInputError(f"palette size must be positive, got {self.r}")
        for v, c in enumerate(self.colors, start=1):
            if not 1 <= c <= self.r:
                raise MalformedInputError(f"vertex {v} has color {c} outside 1..{self.r}")

    @classmethod
    def from_mapping(cls, assignment: Mapping[int, int], n: int, r: int) -> "Coloring":
        missing = [v for v in range(1, n + 1) if v not in assignment]
        if missing:
            raise MalformedInputError(f"coloring misses vertices {missing}")
        return cls(tuple(assignment[v] for v in range(1, n + 1)), r)

    @classmethod
    def uniform(cls, n: int, r: int, color: int = 1) -> "Coloring":
        return cls((color,) * n, r)

    @property
    def n(self) -> int:
        return len(self.colors)

    def __getitem__(self, v: int) -> int:
        if v < 1:
            raise IndexError(v)
        return self.colors[v - 1]

    def __iter__(self) -> Iterator[int]:
        return iter(self.colors)

    def recolor(self, v: int, color: int) -> "Coloring":
        colors = list(self.colors)
        colors[v - 1] = color
        return Coloring(tuple(colors), self.r)

    def with_palette(self, r: int) -> "Coloring":
        return Coloring(self.colors, r)

    def as_dict(self) -> dict[int, int]:
        return {v: c for v, c in enumerate(self.colors, start=1)}


@dataclass(frozen=True)
class ColorLists:
    """Per-vertex sets of allowed final colors."""

    lists: tuple[frozenset[int], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "lists", tuple(frozenset(int(c) for c in s) for s in self.lists))
        for v, allowed in enumerate(self.lists, start=1):
            if not allowed:
                raise MalformedInputError(f"vertex {v} has an empty color list")

    @classmethod
    def full(cls, n: int, r: int) -> "ColorLists":
        return cls(tuple(frozenset(range(1, r + 1)) for _ in range(n)))

    @property
    def n(self) -> int:
        return len(self.lists)

    def __getitem__(self, v: int) -> frozenset[int]:
        return self.lists[v - 1]

    def max_color(self) -> int:
        return max((max(s) for s in self.lists), default=0)

    def restrict(self, r: int) -> "ColorLists":
        """Intersect every list with ``1..r``; fails if a list becomes empty."""
        return ColorLists(tuple(s & frozenset(range(1, r + 1)) for s in self.lists))


@dataclass(frozen=True)
class ConflictGraph:
    """The monochromatic edges of a coloring and the vertices they touch."""

    edges: tuple[Edge, ...]
    vertices: frozenset[int]

    def __len__(self) -> int:
        return len(self.edges)


class Status(enum.Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"


@dataclass(frozen=True)
class FixResult:
    """Outcome of an optimization solver.

    ``k_star`` and ``witness`` are set only when ``status`` is OPTIMAL.
    ``stats`` carries solver instrumentation (node counts, table sizes).
    """

    status: Status
    k_star: int | None = None
    witness: Coloring | None = None
    solver: str = ""
    stats: dict = field(default_factory=dict, compare=False)

    @property
    def optimal(self) -> bool:
        return self.status is Status.OPTIMAL

    @classmethod
    def infeasible(cls, solver: str, **stats) -> "FixResult":
        return cls(Status.INFEASIBLE, solver=solver, stats=stats)


def _check_domain(graph: Graph, phi: Coloring) -> None:
    if phi.n != graph.n:
        raise MalformedInputError(
            f"coloring covers {phi.n} vertices but the graph has {graph.n}"
        )


def _check_lists(graph: Graph, lists: ColorLists | None) -> None:
    if lists is not None and lists.n != graph.n:
        raise MalformedInputError(f"lists cover {lists.n} vertices but the graph has {graph.n}")


def is_proper(graph: Graph, phi: Coloring, lists: ColorLists | None = None) -> bool:
    """True iff no edge is monochromatic and every vertex respects its list."""
    _check_domain(graph, phi)
    _check_lists(graph, lists)
    c = phi.colors
    if any(c[u - 1] == c[v - 1] for u, v in graph.edges):
        return False
    if lists is not None:
        return all(c[v - 1] in lists.lists[v - 1] for v in graph.vertices)
    return True


def conflict_graph(graph: Graph, phi: Coloring) -> ConflictGraph:
    _check_domain(graph, phi)
    c = phi.colors
    edges = tuple((u, v) for u, v in graph.edges if c[u - 1] == c[v - 1])
    touched = frozenset(x for e in edges for x in e)
    return ConflictGraph(edges, touched)


def distance(phi: Coloring, other: Coloring) -> int:
    """Hamming distance: number of vertices whose colors differ."""
    if phi.n != other.n:
        raise MalformedInputError(f"colorings have different domains ({phi.n} vs {other.n})")
    return sum(a != b for a, b in zip(phi.colors, other.colors))


def changed_vertices(phi: Coloring, other: Coloring) -> frozenset[int]:
    if phi.n != other.n:
        raise MalformedInputError(f"colorings have different domains ({phi.n} vs {other.n})")
    return frozenset(v for v, (a, b) in enumerate(zip(phi.colors, other.colors), 1) if a != b)


def greedy_matching(edges: Iterable[Edge]) -> list[Edge]:
    """Maximal matching grown greedily in the given edge order."""
    used: set[int] = set()
    matching = []
    for u, v in edges:
        if u not in used and v not in used:
            used.add(u)
            used.add(v)
            matching.append((u, v))
    return matching


def matching_lower_bound(graph: Graph, phi: Coloring) -> int:
    """Size of a greedy maximal matching of the conflict graph.

    Every proper coloring must change at least one endpoint of each conflict
    edge, so the recolored set is a vertex cover of the conflict graph and is
    at least as large as any matching in it. A maximal (not maximum) matching
    keeps this cheap.
    """
    return len(greedy_matching(conflict_graph(graph, phi).edges))


def verify_witness(
    graph: Graph, phi: Coloring, result: FixResult, lists: ColorLists | None = None
) -> None:
    """Raise AssertionError unless an OPTIMAL result carries a consistent witness."""
    if not result.optimal:
        return
    w = result.witness
    assert w is not None, "optimal result without witness"
    assert is_proper(graph, w, lists), "witness is not a proper (list) coloring"
    assert w.r == phi.r, "witness uses a different palette"
    assert distance(phi, w) == result.k_star, (
        f"witness distance {distance(phi, w)} != k*={result.k_star}"
    )


@dataclass(frozen=True)
class FixInstance:
    """A graph with an initial coloring over ``1..r``, optional budget and lists."""

    graph: Graph
    coloring: Coloring
    r: int
    k: int | None = None
    lists: ColorLists | None = None
    labels: dict = field(default_factory=dict, compare=False)

    def __post_init__(self) -> None:
        _check_domain(self.graph, self.coloring)
        _check_lists(self.graph, self.lists)
        if self.coloring.r != self.r:
            object.__setattr__(self, "coloring", self.coloring.with_palette(self.r))
        if self.lists is not None and self.lists.max_color() > self.r:
            raise MalformedInputError(f"lists use colors above the palette size {self.r}")
        if self.k is not None and self.k < 0:
            raise MalformedInputError(f"budget must be nonnegative, got {self.k}")

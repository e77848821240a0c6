"""Fixing number: the worst fix value over all initial colorings.

Only colorings in canonical form are scanned (vertex 1 has color 1 and each
new color is the smallest unused one). Renaming colors in both the initial
coloring and its witness preserves distances, so this loses no maxima.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, NamedTuple

import numpy as np

from .bipartite import Bipartition, bipartition_classes
from .branching import fix_branching, solve_branching
from .errors import InfeasibleError, MalformedInputError, SizeGuardError
from .graph import Coloring, Graph
from .partition import chromatic_number

FIXNUM_GUARD = 100_000_000
TABLE_GUARD = 2_000_000
CHUNK = 4096


class WorstCase(NamedTuple):
    value: int
    coloring: Coloring
    solver: str = ""


@dataclass(frozen=True)
class FixingNumberReport:
    phi_r: int
    r: int
    phi: int
    chi: int
    upper: int
    lower: int | None
    worst_coloring: Coloring
    solver: str


def canonical_count(n: int, r: int) -> int:
    """Number of canonical colorings: set partitions of n items into at most r blocks."""
    if n == 0:
        return 1
    row = [1] + [0] * r  # Stirling numbers S(i, j) for the current i
    for _ in range(n):
        row = [0] + [j * row[j] + row[j - 1] for j in range(1, r + 1)]
    return sum(row)


def canonical_colorings(n: int, r: int) -> Iterator[tuple[int, ...]]:
    """Restricted growth strings of length n over colors 1..r, in lexicographic order."""
    if n == 0:
        yield ()
        return
    seq = [1] * n
    top = [1] * n  # top[i] = max(seq[:i + 1])
    while True:
        yield tuple(seq)
        i = n - 1
        while i > 0 and (seq[i] > top[i - 1] or seq[i] == r):
            i -= 1
        if i == 0:
            return
        seq[i] += 1
        top[i] = max(top[i - 1], seq[i])
        for j in range(i + 1, n):
            seq[j] = 1
            top[j] = top[i]


def proper_colorings(graph: Graph, r: int, limit: int = TABLE_GUARD) -> np.ndarray | None:
    """All proper r-colorings as rows of an array, or None once ``limit`` is exceeded."""
    table = np.zeros((1, 0), dtype=np.int8)
    for v in graph.vertices:
        grown = np.repeat(table, r, axis=0)
        new = np.tile(np.arange(1, r + 1, dtype=np.int8), len(table))
        ok = np.ones(len(grown), dtype=bool)
        for u in graph.neighbors(v):
            if u < v:
                ok &= grown[:, u - 1] != new
        table = np.column_stack([grown[ok], new[ok]]) if len(grown) else grown
        if len(table) > limit:
            return None
    return table


def _chunks(n: int, r: int) -> Iterator[np.ndarray]:
    buf = []
    for c in canonical_colorings(n, r):
        buf.append(c)
        if len(buf) == CHUNK:
            yield np.array(buf, dtype=np.int8).reshape(-1, n)
            buf = []
    if buf:
        yield np.array(buf, dtype=np.int8).reshape(-1, n)


def _onehot(rows: np.ndarray, r: int) -> np.ndarray:
    q, n = rows.shape
    out = np.zeros((q, n * r), dtype=np.float32)
    idx = np.arange(n) * r + (rows.astype(np.int64) - 1)
    out[np.arange(q)[:, None], idx] = 1.0
    return out


def _scan_vectorized(n: int, r: int, score) -> tuple[int, tuple[int, ...]]:
    best, arg = -1, None
    for rows in _chunks(n, r):
        values = score(rows)
        i = int(np.argmax(values))
        if values[i] > best:
            best, arg = int(values[i]), tuple(int(c) for c in rows[i])
    return best, arg


def _bipartite_scorer(graph: Graph, sides: Bipartition):
    xmask = np.zeros(graph.n, dtype=bool)
    comps = []
    for x, y in sides.components:
        for v in x:
            xmask[v - 1] = True
        comps.append(np.array(sorted(x | y)) - 1)

    def score(rows: np.ndarray) -> np.ndarray:
        mismatch = (rows == 1) != xmask
        total = np.zeros(len(rows), dtype=np.int64)
        for idx in comps:
            a = mismatch[:, idx].sum(axis=1)
            total += np.minimum(a, len(idx) - a)
        return total

    return score


def _table_scorer(graph: Graph, r: int, table: np.ndarray):
    proper_hot = _onehot(table, r)

    def score(rows: np.ndarray) -> np.ndarray:
        agree = proper_hot @ _onehot(rows, r).T
        return graph.n - agree.max(axis=0).astype(np.int64)

    return score


def fixing_number_r(graph: Graph, r: int, *, force: bool = False) -> WorstCase:
    """Exact maximum fix value over every r-coloring, with a worst coloring.

    The worst coloring is the lexicographically smallest canonical maximizer.
    """
    n = graph.n
    chi = chromatic_number(graph)
    if r < chi:
        raise InfeasibleError(f"r={r} is below the chromatic number {chi}")
    if n == 0:
        return WorstCase(0, Coloring((), r), "trivial")
    total = canonical_count(n, r)
    if total > FIXNUM_GUARD and not force:
        raise SizeGuardError(f"{total} canonical colorings exceed guard {FIXNUM_GUARD}; use force")

    sides = bipartition_classes(graph) if r == 2 else None
    if isinstance(sides, Bipartition):
        value, arg = _scan_vectorized(n, r, _bipartite_scorer(graph, sides))
        return WorstCase(value, Coloring(arg, r), "bipartite")
    table = proper_colorings(graph, r)
    if table is not None:
        value, arg = _scan_vectorized(n, r, _table_scorer(graph, r, table))
        return WorstCase(value, Coloring(arg, r), "table")

    # Budget-probe each coloring at the best value so far; only colorings
    # that beat it need an exact solve.
    best, arg = -1, None
    for colors in canonical_colorings(n, r):
        phi = Coloring(colors, r)
        if best >= 0 and fix_branching(graph, phi, r, best).yes:
            continue
        k = solve_branching(graph, phi, r).k_star
        if k > best:
            best, arg = k, phi
    return WorstCase(best, arg, "branching")


def upper_bound_chromatic(graph: Graph) -> int:
    chi = chromatic_number(graph)
    return graph.n * (chi - 1) // chi if chi else 0


def fixing_number(graph: Graph, r: int | None = None, *, force: bool = False) -> FixingNumberReport:
    """Full report; the fixing number itself is evaluated at r = chi(G)."""
    chi = chromatic_number(graph)
    at_chi = fixing_number_r(graph, chi, force=force) if graph.n else WorstCase(0, Coloring((), 1))
    if r is None or r == chi:
        at_r, r = at_chi, chi
    else:
        at_r = fixing_number_r(graph, r, force=force)
    upper = graph.n * (chi - 1) // chi if chi else 0
    lower = graph.n // 2 if graph.n >= 2 and graph.is_connected() else None
    return FixingNumberReport(
        phi_r=at_r.value,
        r=r,
        phi=at_chi.value,
        chi=chi,
        upper=upper,
        lower=lower,
        worst_coloring=at_r.coloring,
        solver=at_r.solver,
    )


def star_graph(k: int) -> Graph:
    """K_{1,k} with center 1 and leaves 2..k+1."""
    return Graph(k + 1, [(1, leaf) for leaf in range(2, k + 2)])


def worst_star_coloring(k: int) -> Coloring:
    """Center and ceil(k/2) leaves get color 1, the other floor(k/2) leaves color 2."""
    if k < 1:
        raise MalformedInputError("a star needs at least one leaf")
    ones = (k + 1) // 2
    return Coloring((1,) + (1,) * ones + (2,) * (k - ones), 2)


def _star_center(adj: dict[int, set[int]]) -> int | None:
    size = len(adj)
    for v in sorted(adj):
        if len(adj[v]) == size - 1:
            return v
    return None


def worst_tree_coloring(tree: Graph) -> Coloring:
    """2-coloring of a tree whose fix value is at least floor(n/2).

    Peels off the children of a deepest leaf's parent: an even number of
    leaves is split evenly between the colors, an odd bunch is colored
    together with its parent as a worst-case star. Whatever remains once the
    tree is a star gets the star coloring.
    """
    n = tree.n
    if n < 2:
        raise MalformedInputError("need a tree with at least two vertices")
    if tree.m != n - 1 or not tree.is_connected():
        raise MalformedInputError("graph is not a tree")
    adj = {v: set(tree.neighbors(v)) for v in tree.vertices}
    colors: dict[int, int] = {}

    def paint_star(center: int, leaves: list[int]) -> None:
        ones = (len(leaves) + 1) // 2
        colors[center] = 1
        for i, leaf in enumerate(sorted(leaves)):
            colors[leaf] = 1 if i < ones else 2

    def drop(vertices) -> None:
        for x in vertices:
            for y in adj.pop(x):
                if y in adj:
                    adj[y].discard(x)

    while True:
        center = _star_center(adj)
        if center is not None:
            paint_star(center, [v for v in adj if v != center])
            break
        root = min(adj)
        depth, parent, order = {root: 0}, {root: root}, [root]
        for x in order:
            for y in sorted(adj[x]):
                if y not in depth:
                    depth[y] = depth[x] + 1
                    parent[y] = x
                    order.append(y)
        deepest = min(order, key=lambda v: (-depth[v], v))
        v = parent[deepest]
        bunch = sorted(y for y in adj[v] if y != parent[v])
        if len(bunch) % 2 == 0:
            half = len(bunch) // 2
            for i, leaf in enumerate(bunch):
                colors[leaf] = 1 if i < half else 2
            drop(bunch)
        else:
            paint_star(v, bunch)
            drop(bunch + [v])
    return Coloring(tuple(colors[v] for v in tree.vertices), 2)


def hard_family(m: int, r: int) -> tuple[Graph, Coloring]:
    """m disjoint copies of K_r, every vertex colored 1."""
    if m < 1 or r < 2:
        raise MalformedInputError("need m >= 1 and r >= 2")
    edges = []
    for block in range(m):
        base = block * r
        edges += [(base + a, base + b) for a in range(1, r + 1) for b in range(a + 1, r + 1)]
    return Graph(m * r, edges), Coloring.uniform(m * r, r)

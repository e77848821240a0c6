"""Brute-force reference solvers used as ground truth in tests."""

from __future__ import annotations

import itertools
from typing import Iterator

from .errors import SizeGuardError
from .graph import Coloring, ColorLists, FixResult, Graph, Status, conflict_graph

ORACLE_MAX_N = 20
ENUMERATION_GUARD = 10_000_000


def subsets_colex(n: int, k: int) -> Iterator[int]:
    """All k-subsets of ``range(n)`` as bitmasks, in colexicographic order."""
    if k == 0:
        yield 0
        return
    if k > n:
        return
    s = (1 << k) - 1
    limit = 1 << n
    while s < limit:
        yield s
        low = s & -s
        ripple = s + low
        s = (((ripple ^ s) >> 2) // low) | ripple


def solve_oracle_subsets(
    graph: Graph,
    phi: Coloring,
    r: int | None = None,
    lists: ColorLists | None = None,
    *,
    force: bool = False,
) -> FixResult:
    """Try every vertex subset of size k = 0, 1, 2, ... and every recoloring of it.

    A subset is only expanded when it touches every conflict edge (and every
    vertex whose current color is off its list); any other subset leaves an
    edge monochromatic. Once some subset of size k works, the rest of that
    size is still scanned so the witness is the lexicographically least
    optimal one.
    """
    r = phi.r if r is None else r
    n = graph.n
    if n > ORACLE_MAX_N and not force:
        raise SizeGuardError(f"oracle refuses n={n} > {ORACLE_MAX_N}; use force")
    colors = [0, *phi.colors]
    allowed = [()] + [
        tuple(sorted(c for c in (lists[v] if lists else range(1, r + 1)) if 1 <= c <= r))
        for v in graph.vertices
    ]
    alternatives = [()] + [tuple(c for c in allowed[v] if c != colors[v]) for v in graph.vertices]
    required = 0
    for v in graph.vertices:
        if colors[v] not in allowed[v]:
            required |= 1 << (v - 1)
    conflict_masks = [(1 << (u - 1)) | (1 << (v - 1)) for u, v in conflict_graph(graph, phi).edges]
    nbrs = [()] + [tuple(graph.neighbors(v)) for v in graph.vertices]

    checked = 0
    for k in range(n + 1):
        best = None
        for mask in subsets_colex(n, k):
            if mask & required != required:
                continue
            if any(not (mask & e) for e in conflict_masks):
                continue
            chosen = [v for v in graph.vertices if mask >> (v - 1) & 1]
            for combo in itertools.product(*(alternatives[v] for v in chosen)):
                checked += 1
                trial = colors[:]
                for v, c in zip(chosen, combo):
                    trial[v] = c
                if all(trial[u] != trial[v] for v in chosen for u in nbrs[v]):
                    if best is None or trial[1:] < best:
                        best = trial[1:]
        if best is not None:
            witness = Coloring(tuple(best), phi.r)
            return FixResult(Status.OPTIMAL, k, witness, "oracle", {"checked": checked})
    return FixResult(Status.INFEASIBLE, solver="oracle", stats={"checked": checked})


def enumerate_all_colorings(
    graph: Graph, r: int, *, guard: int = ENUMERATION_GUARD, force: bool = False
) -> Iterator[Coloring]:
    """Every r-coloring of the graph exactly once, in lexicographic order."""
    total = r ** graph.n
    if total > guard and not force:
        raise SizeGuardError(f"{r}^{graph.n} = {total} colorings exceed guard {guard}; use force")
    for colors in itertools.product(range(1, r + 1), repeat=graph.n):
        yield Coloring(colors, r)

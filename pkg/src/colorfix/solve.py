"""Single entry point that picks a solver."""

from __future__ import annotations

from typing import Literal

from .bipartite import Bipartition, bipartition_classes, solve_bipartite
from .branching import solve_branching
from .errors import MalformedInputError
from .graph import Coloring, ColorLists, FixResult, Graph, Status
from .oracle import solve_oracle_subsets
from .partition import FAST_MAX_ENTRIES, solve_partition
from .treewidth import DEFAULT_STATE_GUARD, TreeDecomposition, min_fill_decomposition, solve_treewidth

SolverName = Literal["auto", "oracle", "partition", "partition-plain", "branching", "treewidth", "bipartite"]
SOLVERS = ("auto", "oracle", "partition", "partition-plain", "branching", "treewidth", "bipartite")
TW_THRESHOLD = 4


def choose_solver(
    graph: Graph,
    phi: Coloring,
    r: int,
    lists: ColorLists | None = None,
    td: TreeDecomposition | None = None,
    tw_threshold: int = TW_THRESHOLD,
) -> tuple[str, TreeDecomposition | None]:
    n = graph.n
    if r == 2 and lists is None and set(phi.colors) <= {1, 2}:
        if isinstance(bipartition_classes(graph), Bipartition):
            return "bipartite", None
    if td is None:
        td = min_fill_decomposition(graph)
        if td.width > tw_threshold or r ** (td.width + 1) > DEFAULT_STATE_GUARD:
            td = None
    if td is not None:
        return "treewidth", td
    if (n + 1) ** 2 << n <= FAST_MAX_ENTRIES:
        return "partition", None
    return "branching", None


def solve(
    graph: Graph,
    phi: Coloring,
    r: int | None = None,
    lists: ColorLists | None = None,
    *,
    solver: str = "auto",
    td: TreeDecomposition | None = None,
    force: bool = False,
) -> FixResult:
    """Minimum recoloring with any solver; ``auto`` only changes the running time."""
    r = phi.r if r is None else r
    if solver == "auto":
        solver, td = choose_solver(graph, phi, r, lists, td)
    if solver == "bipartite":
        if lists is not None:
            raise MalformedInputError("the bipartite solver does not take lists")
        if r != 2:
            raise MalformedInputError(f"the bipartite solver needs r=2, got r={r}")
        return solve_bipartite(graph, phi)
    if solver == "oracle":
        return solve_oracle_subsets(graph, phi, r, lists, force=force)
    if solver == "partition":
        return solve_partition(graph, phi, r, lists, "fast", force=force)
    if solver == "partition-plain":
        return solve_partition(graph, phi, r, lists, "plain", force=force)
    if solver == "branching":
        return solve_branching(graph, phi, r, lists)
    if solver == "treewidth":
        return solve_treewidth(graph, phi, r, lists, td, force=force)
    raise MalformedInputError(f"unknown solver {solver!r}; choose from {', '.join(SOLVERS)}")


def is_yes(result: FixResult, k: int) -> bool:
    return result.status is Status.OPTIMAL and result.k_star <= k

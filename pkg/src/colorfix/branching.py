"""Bounded search tree for the budgeted fix problem.

At each node pick a monochromatic edge ``xy``; some optimal witness differs
from the current coloring at ``x`` or at ``y``, so recoloring one of them to
each other allowed color gives at most ``2(r-1)`` children, each with one
less unit of budget.

With lists, a vertex whose color is off its list must change; it is branched
on alone (at most ``r-1`` children) before any edge.

Pruning (on by default, off to run the plain recursion):

* stop when a matching lower bound on the remaining recolorings exceeds the
  budget;
* never recolor a vertex twice on one root-to-leaf path. Moving a vertex
  straight to its color in a fixed witness already agrees with that witness
  there, so the witness stays reachable without revisiting it;
* a vertex with more than ``k`` conflict edges must change (otherwise all of
  its conflicting neighbors would), so it is branched on alone.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .graph import Coloring, ColorLists, FixResult, Graph, Status, greedy_matching


@dataclass
class SearchStats:
    nodes: int = 0
    leaves: int = 0
    max_depth: int = 0
    budget_cut: bool = False
    per_depth: dict[int, int] = field(default_factory=dict)


@dataclass(frozen=True)
class BranchOutcome:
    yes: bool
    witness: Coloring | None
    stats: SearchStats

    def __bool__(self) -> bool:
        return self.yes


class _Search:
    def __init__(self, graph: Graph, phi: Coloring, r: int, lists: ColorLists | None, prune: bool):
        self.graph = graph
        self.r = r
        self.prune = prune
        self.colors = [0, *phi.colors]
        self.allowed = [frozenset()] + [
            frozenset(c for c in (lists[v] if lists else range(1, r + 1)) if 1 <= c <= r)
            for v in graph.vertices
        ]
        self.frozen = [False] * (graph.n + 1)
        self.stats = SearchStats()
        col = self.colors
        self.off = {v for v in graph.vertices if col[v] not in self.allowed[v]}
        self.conflicts = {(u, v) for u, v in graph.edges if col[u] == col[v]}

    def _state(self):
        return sorted(self.off), sorted(self.conflicts)

    def _set(self, x: int, c: int) -> None:
        """Recolor x and update the off-list set and conflict edges incrementally."""
        col = self.colors
        old = col[x]
        for y in self.graph.neighbors(x):
            if col[y] == old:
                self.conflicts.discard((x, y) if x < y else (y, x))
            elif col[y] == c:
                self.conflicts.add((x, y) if x < y else (y, x))
        col[x] = c
        if c in self.allowed[x]:
            self.off.discard(x)
        else:
            self.off.add(x)

    @staticmethod
    def _degrees(conflicts) -> dict[int, int]:
        deg: dict[int, int] = {}
        for u, v in conflicts:
            deg[u] = deg.get(u, 0) + 1
            deg[v] = deg.get(v, 0) + 1
        return deg

    @staticmethod
    def _pick_edge(conflicts, deg):
        return max(conflicts, key=lambda e: (deg[e[0]] + deg[e[1]], -e[0], -e[1]))

    def _lower_bound(self, off_list, conflicts) -> int:
        bad = set(off_list)
        free = [(u, v) for u, v in conflicts if u not in bad and v not in bad]
        return len(bad) + len(greedy_matching(free))

    def run(self, k: int, depth: int = 0) -> bool:
        st = self.stats
        st.nodes += 1
        st.per_depth[depth] = st.per_depth.get(depth, 0) + 1
        st.max_depth = max(st.max_depth, depth)
        off_list, conflicts = self._state()
        if not off_list and not conflicts:
            st.leaves += 1
            return True
        if k == 0:
            st.leaves += 1
            st.budget_cut = True
            return False
        if self.prune and self._lower_bound(off_list, conflicts) > k:
            st.leaves += 1
            st.budget_cut = True
            return False

        if off_list:
            targets = [off_list[0]]
        else:
            deg = self._degrees(conflicts)
            heavy = [v for v, d in deg.items() if d > k] if self.prune else []
            if heavy:
                # The forcing depends on k, so a failure below it says nothing about larger budgets.
                st.budget_cut = True
            targets = [min(heavy)] if heavy else list(self._pick_edge(conflicts, deg))
        col = self.colors
        branched = False
        for x in targets:
            if self.prune and self.frozen[x]:
                continue
            old = col[x]
            for c in sorted(self.allowed[x] - {old}):
                branched = True
                self._set(x, c)
                self.frozen[x] = True
                found = self.run(k - 1, depth + 1)
                self.frozen[x] = False
                if found:
                    return True
                self._set(x, old)
        if not branched:
            st.leaves += 1
        return False


def fix_branching(
    graph: Graph,
    phi: Coloring,
    r: int | None,
    k: int,
    lists: ColorLists | None = None,
    *,
    prune: bool = True,
) -> BranchOutcome:
    """Decide whether some proper (list) coloring lies within distance ``k`` of ``phi``."""
    if k < 0:
        raise ValueError(f"budget must be nonnegative, got {k}")
    r = phi.r if r is None else r
    search = _Search(graph, phi, r, lists, prune)
    if search.run(k):
        witness = Coloring(tuple(search.colors[1:]), phi.r)
        return BranchOutcome(True, witness, search.stats)
    return BranchOutcome(False, None, search.stats)


def solve_branching(
    graph: Graph,
    phi: Coloring,
    r: int | None = None,
    lists: ColorLists | None = None,
    *,
    prune: bool = True,
) -> FixResult:
    """Raise the budget from the lower bound until the search says yes.

    A failed run that was never cut short by the budget proves that no
    larger budget can help, which ends the loop early on infeasible inputs.
    """
    r = phi.r if r is None else r
    probe = _Search(graph, phi, r, lists, prune)
    start = probe._lower_bound(*probe._state())
    total_nodes = 0
    for k in range(start, graph.n + 1):
        out = fix_branching(graph, phi, r, k, lists, prune=prune)
        total_nodes += out.stats.nodes
        if out.yes:
            return FixResult(Status.OPTIMAL, k, out.witness, "branching", {"nodes": total_nodes})
        if not out.stats.budget_cut:
            break
    return FixResult(Status.INFEASIBLE, solver="branching", stats={"nodes": total_nodes})

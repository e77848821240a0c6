"""Benchmark suites. Each returns rows of plain values ready for CSV output."""

from __future__ import annotations

import random
import time
from typing import Callable

from .branching import fix_branching, solve_branching
from .fixing import hard_family
from .generators import random_coloring, random_graph, random_ktree
from .graph import verify_witness
from .oracle import solve_oracle_subsets
from .partition import solve_partition
from .treewidth import min_fill_decomposition, solve_treewidth

Row = dict[str, object]


def _timed(fn: Callable):
    start = time.perf_counter()
    out = fn()
    return out, round(time.perf_counter() - start, 6)


def branching_growth(seed: int = 0, max_k: int = 8, palettes=(3, 4)) -> list[Row]:
    """Unpruned search trees on hard-family and seeded random instances.

    ``bound`` is ``b^k + 1`` with ``b = 2(r-1)``. ``tree_bound`` is the
    node count of a complete ``b``-ary tree of depth ``k``.
    """
    rng = random.Random(seed)
    rows = []
    for r in palettes:
        b = 2 * (r - 1)
        for k in range(max_k + 1):
            cases = []
            for m in (1, 2, 3):
                g, phi = hard_family(m, r)
                cases.append((f"hard-m{m}-r{r}", g, phi))
            g = random_graph(8, 0.4, rng)
            cases.append((f"random-s{seed}-r{r}-k{k}", g, random_coloring(8, r, rng)))
            for name, g, phi in cases:
                out, secs = _timed(lambda: fix_branching(g, phi, r, k, prune=False))
                st = out.stats
                rows.append(
                    {
                        "instance": name,
                        "r": r,
                        "k": k,
                        "answer": "yes" if out.yes else "no",
                        "nodes": st.nodes,
                        "leaves": st.leaves,
                        "max_depth": st.max_depth,
                        "bound": b**k + 1,
                        "tree_bound": sum(b**i for i in range(k + 1)),
                        "time": secs,
                    }
                )
    return rows


def solver_cross(seed: int = 0, count: int = 30, max_n: int = 8) -> list[Row]:
    rng = random.Random(seed)
    rows = []
    solvers = {
        "oracle": lambda g, phi: solve_oracle_subsets(g, phi),
        "partition-plain": lambda g, phi: solve_partition(g, phi, mode="plain"),
        "partition-fast": lambda g, phi: solve_partition(g, phi, mode="fast"),
        "branching": lambda g, phi: solve_branching(g, phi),
        "treewidth": lambda g, phi: solve_treewidth(g, phi),
    }
    for i in range(count):
        n = rng.randint(1, max_n)
        p = rng.choice((0.2, 0.5))
        r = rng.choice((2, 3, 4))
        g = random_graph(n, p, rng)
        phi = random_coloring(n, r, rng)
        results = {}
        for name, fn in solvers.items():
            res, secs = _timed(lambda: fn(g, phi))
            verify_witness(g, phi, res)
            results[name] = (res, secs)
        values = {res.k_star for res, _ in results.values()}
        for name, (res, secs) in results.items():
            rows.append(
                {
                    "instance": f"cross-{seed}-{i}-n{n}-r{r}",
                    "solver": name,
                    "k_star": "inf" if res.k_star is None else res.k_star,
                    "equal": len(values) == 1,
                    "time": secs,
                }
            )
    return rows


def tw_growth(seed: int = 0, widths=range(1, 6), palettes=(2, 3, 4), n: int = 10) -> list[Row]:
    """Treewidth DP on random w-trees; ``within_bound`` checks every bag against r^|bag| states."""
    rng = random.Random(seed)
    rows = []
    for w in widths:
        g = random_ktree(max(n, w + 1), w, rng)
        td = min_fill_decomposition(g)
        for r in palettes:
            phi = random_coloring(g.n, r, rng)
            res, secs = _timed(lambda: solve_treewidth(g, phi, r, td=td))
            bags = res.stats["bag_states"]
            within = all(states <= r**size for size, states in bags)
            rows.append(
                {
                    "instance": f"ktree-w{w}-n{g.n}",
                    "r": r,
                    "width": td.width,
                    "k_star": "inf" if res.k_star is None else res.k_star,
                    "nice_nodes": res.stats["nice_nodes"],
                    "max_states": res.stats["max_states"],
                    "state_bound": r ** (td.width + 1),
                    "within_bound": within,
                    "time": secs,
                }
            )
    return rows


SUITES = {
    "branching-growth": branching_growth,
    "solver-cross": solver_cross,
    "tw-growth": tw_growth,
}

"""Exact exponential solver through a max-weight partition encoding.

Colors are the parts of a partition of the vertex set. Part ``i`` scores
``-|S \\ phi^-1(i)|`` when ``S`` is independent (and every vertex of ``S`` may
take color ``i``), and a penalty of ``-r*n`` otherwise, so any partition with
a bad part scores below every all-good partition.

Two evaluation modes are provided:

* ``"plain"`` scans every subset/submask pair: ``O(3^n)`` per color.
* ``"fast"`` runs a subset convolution in the ranked zeta domain with one
  extra polynomial dimension for the cost, ``O(2^n poly(n))`` per color.
  Counts are kept modulo several primes whose product exceeds ``r^n``, which
  bounds every true count, so a zero residue vector means a true zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

from .errors import SizeGuardError
from .graph import Coloring, ColorLists, FixResult, Graph, Status

PARTITION_MAX_N = 26
FAST_MAX_ENTRIES = 1 << 27
PRIMES = (2_147_483_647, 2_147_483_629, 2_147_483_587, 2_147_483_579)
NEG = -(1 << 60)

Mode = Literal["fast", "plain"]


def popcounts(n: int) -> np.ndarray:
    pc = np.zeros(1 << n, dtype=np.int64)
    for b in range(n):
        pc[1 << b : 1 << (b + 1)] = pc[: 1 << b] + 1
    return pc


def independent_sets(graph: Graph) -> np.ndarray:
    """Boolean table over all bitmasks: True iff the vertex subset is independent."""
    n = graph.n
    indep = np.zeros(1 << n, dtype=bool)
    indep[0] = True
    masks = graph.neighbor_masks
    for b in range(n):
        block = np.arange(1 << b, 1 << (b + 1), dtype=np.int64)
        indep[block] = indep[block - (1 << b)] & ((block & masks[b]) == 0)
    return indep


@dataclass(frozen=True)
class PartitionWeights:
    """Weight tables ``weights[i - 1][S]`` for each color ``i`` and bitmask ``S``.

    ``valid[i - 1][S]`` records whether ``S`` may form color class ``i``
    (independent and list-compatible); invalid sets carry ``penalty``.
    """

    n: int
    d: int
    weights: tuple[np.ndarray, ...]
    valid: tuple[np.ndarray, ...]
    penalty: int

    def weight(self, color: int, vertices) -> int:
        mask = 0
        for v in vertices:
            mask |= 1 << (v - 1)
        return int(self.weights[color - 1][mask])


def build_partition_weights(
    graph: Graph, phi: Coloring, r: int | None = None, lists: ColorLists | None = None
) -> PartitionWeights:
    r = phi.r if r is None else r
    n = graph.n
    full = np.arange(1 << n, dtype=np.int64)
    indep = independent_sets(graph)
    pc = popcounts(n)
    penalty = -r * n
    weights, valid = [], []
    for i in range(1, r + 1):
        keep = sum(1 << (v - 1) for v in graph.vertices if phi[v] == i)
        ok = indep.copy()
        if lists is not None:
            allowed = sum(1 << (v - 1) for v in graph.vertices if i in lists[v])
            ok &= (full & ~allowed) == 0
        cost = pc[full & ~keep]
        weights.append(np.where(ok, -cost, penalty))
        valid.append(ok)
    return PartitionWeights(n, r, tuple(weights), tuple(valid), penalty)


def _plain_tables(W: PartitionWeights) -> list[np.ndarray]:
    size = 1 << W.n
    dp = np.full(size, NEG, dtype=np.int64)
    dp[0] = 0
    tables = [dp]
    for i in range(W.d):
        w = W.weights[i].tolist()
        prev = tables[-1].tolist()
        cur = [NEG] * size
        for s in range(size):
            best = NEG
            t = s
            while True:
                rest = prev[s ^ t]
                if rest != NEG:
                    val = rest + w[t]
                    if val > best:
                        best = val
                if t == 0:
                    break
                t = (t - 1) & s
            cur[s] = best
        tables.append(np.array(cur, dtype=np.int64))
    return tables


def _zeta(a: np.ndarray, n: int, p: int) -> None:
    """In-place subset-sum transform over the last axis, modulo p."""
    lead = a.shape[:-1]
    for b in range(n):
        view = a.reshape(*lead, -1, 2, 1 << b)
        view[..., 1, :] += view[..., 0, :]
        view[..., 1, :] %= p


def _mobius(a: np.ndarray, n: int, p: int) -> None:
    lead = a.shape[:-1]
    for b in range(n):
        view = a.reshape(*lead, -1, 2, 1 << b)
        view[..., 1, :] -= view[..., 0, :]
        view[..., 1, :] %= p


def _fast_tables(W: PartitionWeights, *, force: bool = False) -> list[np.ndarray]:
    n, size = W.n, 1 << W.n
    entries = (n + 1) * (n + 1) * size
    if entries > FAST_MAX_ENTRIES and not force:
        raise SizeGuardError(
            f"fast mode needs {entries} table entries (guard {FAST_MAX_ENTRIES}); use force or plain"
        )
    bound = W.d ** n
    primes = []
    prod = 1
    for p in PRIMES:
        primes.append(p)
        prod *= p
        if prod > bound:
            break
    if prod <= bound:
        raise SizeGuardError(f"count bound {W.d}^{n} exceeds the modulus product")

    pc = popcounts(n)
    subsets = np.arange(size)
    transformed_parts = []
    for i in range(W.d):
        cost = -W.weights[i]
        f = np.zeros((n + 1, n + 1, size), dtype=np.int64)
        ok = W.valid[i]
        f[cost[ok], pc[ok], subsets[ok]] = 1
        transformed_parts.append(f)

    accs = []
    for p in primes:
        acc = np.zeros((n + 1, n + 1, size), dtype=np.int64)
        acc[0, 0, 0] = 1
        _zeta(acc, n, p)
        accs.append(acc)

    tables = [np.where(subsets == 0, 0, NEG).astype(np.int64)]
    for i in range(W.d):
        found = np.zeros((n + 1, size), dtype=bool)
        for j, p in enumerate(primes):
            f = transformed_parts[i].copy()
            _zeta(f, n, p)
            acc = accs[j]
            out = np.zeros_like(acc)
            support = [(c, k) for c in range(n + 1) for k in range(c, n + 1) if f[c, k].any()]
            for c, k in support:
                out[c:, k:, :] += (f[c, k] * acc[: n + 1 - c, : n + 1 - k, :]) % p
                out[c:, k:, :] %= p
            accs[j] = out
            counts = out.copy()
            _mobius(counts, n, p)
            found |= counts[:, pc, subsets] != 0
        has = found.any(axis=0)
        best_cost = np.argmax(found, axis=0)
        tables.append(np.where(has, -best_cost, NEG).astype(np.int64))
    return tables


def _reconstruct(tables: list[np.ndarray], weights: list[np.ndarray], n: int) -> list[int]:
    """Walk back from the full set, giving color d its part first.

    Ties go to the numerically smallest submask, so higher colors take as
    little as possible and leftover vertices settle on lower colors.
    """
    subsets = np.arange(1 << n, dtype=np.int64)
    s = (1 << n) - 1
    parts = [0] * len(weights)
    for i in range(len(weights), 0, -1):
        target = tables[i][s]
        cand = subsets[(subsets & ~s) == 0]
        prev = tables[i - 1][s ^ cand]
        score = np.where(prev == NEG, NEG, prev + weights[i - 1][cand])
        t = int(cand[np.flatnonzero(score == target)[0]])
        parts[i - 1] = t
        s ^= t
    assert s == 0
    return parts


def max_weighted_partition(
    W: PartitionWeights, mode: Mode = "fast", *, force: bool = False
) -> tuple[int, tuple[frozenset[int], ...]]:
    """Maximum of ``sum_i w_i(S_i)`` over partitions into ``d`` possibly empty parts."""
    n = W.n
    if n > PARTITION_MAX_N and not force:
        raise SizeGuardError(f"partition solver refuses n={n} > {PARTITION_MAX_N}; use force")
    full = (1 << n) - 1
    if mode == "plain":
        tables = _plain_tables(W)
        weights = list(W.weights)
    elif mode == "fast":
        tables = _fast_tables(W, force=force)
        weights = [np.where(ok, w, NEG) for w, ok in zip(W.weights, W.valid)]
        if tables[-1][full] == NEG:
            # Only bad partitions remain; (N, {}, ..., {}) reaches the penalty exactly.
            parts = (frozenset(range(1, n + 1)),) + (frozenset(),) * (W.d - 1)
            return int(W.weights[0][full]), parts
    else:
        raise ValueError(f"unknown mode {mode!r}")
    value = int(tables[-1][full])
    masks = _reconstruct(tables, weights, n)
    parts = tuple(frozenset(v for v in range(1, n + 1) if m >> (v - 1) & 1) for m in masks)
    return value, parts


def solve_partition(
    graph: Graph,
    phi: Coloring,
    r: int | None = None,
    lists: ColorLists | None = None,
    mode: Mode = "fast",
    *,
    force: bool = False,
) -> FixResult:
    r = phi.r if r is None else r
    if graph.n > PARTITION_MAX_N and not force:
        raise SizeGuardError(f"partition solver refuses n={graph.n} > {PARTITION_MAX_N}; use force")
    W = build_partition_weights(graph, phi, r, lists)
    value, parts = max_weighted_partition(W, mode, force=force)
    solver = f"partition-{mode}"
    if graph.n and value <= W.penalty:
        return FixResult(Status.INFEASIBLE, solver=solver, stats={"value": value})
    colors = [0] * graph.n
    for i, part in enumerate(parts, start=1):
        for v in part:
            colors[v - 1] = i
    return FixResult(Status.OPTIMAL, -value, Coloring(tuple(colors), phi.r), solver, {"value": value})


def chromatic_number(graph: Graph, mode: Mode = "fast", *, force: bool = False) -> int:
    """Smallest r for which some r-coloring is proper (0 for the empty graph)."""
    if graph.n == 0:
        return 0
    if graph.m == 0:
        return 1
    for r in range(2, graph.n + 1):
        if solve_partition(graph, Coloring.uniform(graph.n, r), r, mode=mode, force=force).optimal:
            return r
    return graph.n

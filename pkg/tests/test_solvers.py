"""Examples and cross-checks for the five exact solvers."""

import itertools
import random

import pytest
from hypothesis import given, settings

from colorfix import (
    Coloring,
    ColorLists,
    Graph,
    SizeGuardError,
    Status,
    chromatic_number,
    fix_branching,
    is_proper,
    matching_lower_bound,
    max_weighted_partition,
    solve,
    solve_bipartite,
    solve_branching,
    solve_oracle_subsets,
    solve_partition,
    solve_treewidth,
    verify_witness,
)
from colorfix.oracle import enumerate_all_colorings, subsets_colex
from colorfix.partition import build_partition_weights

from .conftest import complete, cycle, instances, path

K3_ALL1 = (complete(3), Coloring.uniform(3, 3))


def all_solvers(g, phi, lists=None):
    return {
        "oracle": solve_oracle_subsets(g, phi, lists=lists),
        "plain": solve_partition(g, phi, lists=lists, mode="plain"),
        "fast": solve_partition(g, phi, lists=lists, mode="fast"),
        "branching": solve_branching(g, phi, lists=lists),
        "treewidth": solve_treewidth(g, phi, lists=lists),
    }


# oracle


def test_oracle_examples():
    g, phi = K3_ALL1
    assert solve_oracle_subsets(g, Coloring((1, 2, 3), 3)).k_star == 0
    assert solve_oracle_subsets(g, phi).k_star == 2
    assert solve_oracle_subsets(g, Coloring.uniform(3, 2)).status is Status.INFEASIBLE


def test_oracle_guard():
    with pytest.raises(SizeGuardError):
        solve_oracle_subsets(Graph(21), Coloring.uniform(21, 2))


def test_oracle_witness_lexicographically_least():
    g, phi = K3_ALL1
    assert solve_oracle_subsets(g, phi).witness.colors == (1, 2, 3)


def test_subsets_colex_order():
    assert list(subsets_colex(4, 2)) == [0b0011, 0b0101, 0b0110, 0b1001, 0b1010, 0b1100]
    assert list(subsets_colex(3, 0)) == [0]


@pytest.mark.parametrize("n, r, count", [(1, 2, 2), (2, 2, 4), (3, 3, 27)])
def test_enumerate_all_colorings(n, r, count):
    seen = [c.colors for c in enumerate_all_colorings(Graph(n), r)]
    assert len(seen) == count == len(set(seen))
    assert seen == sorted(seen)


def test_enumerate_guard():
    with pytest.raises(SizeGuardError):
        next(enumerate_all_colorings(Graph(30), 3))


# partition


def test_partition_weight_examples():
    k2 = Graph(2, [(1, 2)])
    W = build_partition_weights(k2, Coloring.uniform(2, 2), 2)
    assert W.weight(1, {1, 2}) == -2 * 2
    assert W.weight(1, {1}) == 0
    assert W.weight(2, {1}) == -1


@pytest.mark.parametrize("mode", ["plain", "fast"])
def test_max_weighted_partition_examples(mode):
    g, phi = K3_ALL1
    value, parts = max_weighted_partition(build_partition_weights(g, phi, 3), mode)
    assert value == -2
    assert sorted(len(p) for p in parts) == [1, 1, 1]
    proper = Coloring((1, 2, 3), 3)
    assert max_weighted_partition(build_partition_weights(g, proper, 3), mode)[0] == 0
    W = build_partition_weights(g, Coloring.uniform(3, 2), 2)
    assert max_weighted_partition(W, mode)[0] <= W.penalty


def test_penalty_separates_exhaustively():
    # Every partition with a dependent part scores below every independent one.
    rng = random.Random(3)
    for _ in range(20):
        n = rng.randint(2, 5)
        g = Graph(n, [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1) if rng.random() < 0.5])
        r = rng.randint(2, 3)
        phi = Coloring(tuple(rng.randint(1, r) for _ in range(n)), r)
        W = build_partition_weights(g, phi, r)
        good, bad = [], []
        for labels in itertools.product(range(1, r + 1), repeat=n):
            parts = [[v for v in g.vertices if labels[v - 1] == i] for i in range(1, r + 1)]
            score = sum(W.weight(i, p) for i, p in enumerate(parts, start=1))
            (good if is_proper(g, Coloring(labels, r)) else bad).append(score)
        if good and bad:
            assert max(bad) < min(good)


def test_solve_partition_examples():
    g, phi = K3_ALL1
    assert solve_partition(g, phi).k_star == 2
    assert solve_partition(cycle(5), Coloring.uniform(5, 3)).k_star == 3
    assert solve_partition(g, Coloring.uniform(3, 2)).status is Status.INFEASIBLE


@pytest.mark.parametrize("g, chi", [(Graph(4), 1), (complete(4), 4), (cycle(5), 3), (Graph(0), 0)])
def test_chromatic_number(g, chi):
    assert chromatic_number(g) == chi
    assert chromatic_number(g, "plain") == chi


def test_partition_guard():
    with pytest.raises(SizeGuardError):
        solve_partition(Graph(27), Coloring.uniform(27, 2))


@settings(max_examples=60, deadline=None)
@given(instances(max_n=7))
def test_partition_modes_agree(inst):
    g, phi = inst
    plain = solve_partition(g, phi, mode="plain")
    fast = solve_partition(g, phi, mode="fast")
    assert plain.k_star == fast.k_star
    verify_witness(g, phi, plain)
    verify_witness(g, phi, fast)
    if plain.optimal:
        assert -plain.stats["value"] == plain.k_star


# branching


def test_branching_examples():
    g, phi = K3_ALL1
    out = fix_branching(g, Coloring((1, 2, 3), 3), 3, 0)
    assert out.yes and out.witness == Coloring((1, 2, 3), 3)
    assert not fix_branching(g, phi, 3, 1).yes
    assert fix_branching(g, phi, 3, 2).yes
    two_edges = Graph(4, [(1, 2), (3, 4)])
    assert solve_branching(two_edges, Coloring.uniform(4, 2)).k_star == 2
    hard = Graph(6, [(1, 2), (1, 3), (2, 3), (4, 5), (4, 6), (5, 6)])
    assert solve_branching(hard, Coloring.uniform(6, 3)).k_star == 4


def test_branching_heavy_center_keeps_raising_budget():
    # Forcing the center at a small budget must not read as "no budget helps".
    star = Graph(6, [(i, 6) for i in range(1, 6)])
    phi = Coloring((1, 1, 2, 2, 2, 2), 2)
    res = solve_branching(star, phi)
    assert res.k_star == 3
    verify_witness(star, phi, res)


@pytest.mark.parametrize("prune", [True, False])
def test_branching_lists(prune):
    lists = ColorLists((frozenset({2}), frozenset({1, 2})))
    out = solve_branching(Graph(2, [(1, 2)]), Coloring((1, 2), 2), lists=lists, prune=prune)
    assert out.k_star == 2 and out.witness.colors == (2, 1)


@settings(max_examples=80, deadline=None)
@given(instances(max_n=6, max_r=4, min_r=2))
def test_branching_prune_matches_plain(inst):
    g, phi = inst
    limit = min(g.n, 4)
    for k in range(limit + 1):
        a = fix_branching(g, phi, phi.r, k, prune=True)
        b = fix_branching(g, phi, phi.r, k, prune=False)
        assert a.yes == b.yes


def test_branch_soundness_children():
    # A yes-instance with conflicts has a yes child among the 2(r-1) recolorings.
    rng = random.Random(11)
    checked = 0
    while checked < 40:
        n, r = rng.randint(2, 6), rng.randint(2, 4)
        g = Graph(n, [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1) if rng.random() < 0.5])
        phi = Coloring(tuple(rng.randint(1, r) for _ in range(n)), r)
        res = solve_oracle_subsets(g, phi)
        if not res.optimal or res.k_star == 0:
            continue
        checked += 1
        k = res.k_star
        for x, y in [e for e in g.edges if phi[e[0]] == phi[e[1]]]:
            children = [
                phi.recolor(z, c) for z in (x, y) for c in range(1, r + 1) if c != phi[z]
            ]
            assert len(children) == 2 * (r - 1)
            assert any(fix_branching(g, ch, r, k - 1).yes for ch in children)


def test_node_count_structure():
    g, phi = complete(3), Coloring.uniform(3, 3)
    out = fix_branching(g, phi, 3, 1, prune=False)
    assert not out.yes
    assert out.stats.nodes == 1 + 4 and out.stats.leaves == 4


# treewidth


def test_treewidth_examples():
    assert solve_treewidth(path(3), Coloring.uniform(3, 2), 2).k_star == 1
    tree = Graph(5, [(1, 2), (1, 3), (3, 4), (3, 5)])
    assert solve_treewidth(tree, Coloring((1, 2, 2, 1, 1), 2)).k_star == 0
    from colorfix import TreeDecomposition

    g, phi = K3_ALL1
    single = TreeDecomposition({1: frozenset({1, 2, 3})})
    assert solve_treewidth(g, phi, td=single).k_star == 2


# bipartite


def test_bipartite_examples():
    assert solve_bipartite(Graph(2, [(1, 2)]), Coloring((1, 1), 2)).k_star == 1
    assert solve_bipartite(cycle(4), Coloring.uniform(4, 2)).k_star == 2
    two = Graph(4, [(1, 2), (3, 4)])
    res = solve_bipartite(two, Coloring.uniform(4, 2))
    assert res.k_star == 2 and res.stats["components"] == [(1, 1), (1, 1)]


def test_bipartite_classes():
    from colorfix.bipartite import NotBipartite, bipartition_classes

    c4 = bipartition_classes(cycle(4))
    assert [(len(x), len(y)) for x, y in c4.components] == [(2, 2)]
    tri = bipartition_classes(complete(3))
    assert isinstance(tri, NotBipartite) and sorted(tri.odd_cycle) == [1, 2, 3]
    two = bipartition_classes(Graph(4, [(1, 2), (3, 4)]))
    assert [(len(x), len(y)) for x, y in two.components] == [(1, 1), (1, 1)]


def test_bipartite_rejects_third_color():
    from colorfix import MalformedInputError

    with pytest.raises(MalformedInputError):
        solve_bipartite(path(2), Coloring((1, 3), 3))


def test_bipartite_tie_prefers_smaller_flip_set():
    res = solve_bipartite(path(2), Coloring((1, 1), 2))
    assert res.witness.colors == (2, 1)


def test_bipartite_component_bound():
    rng = random.Random(5)
    for _ in range(50):
        from colorfix.generators import random_bipartite, random_coloring

        g = random_bipartite(10, 0.3, rng)
        phi = random_coloring(10, 2, rng)
        res = solve_bipartite(g, phi)
        for comp, (a, b) in zip(g.components(), res.stats["components"]):
            assert a + b == len(comp) and min(a, b) <= len(comp) // 2


# cross-solver


@settings(max_examples=120, deadline=None)
@given(instances(max_n=7, max_r=4))
def test_all_solvers_agree(inst):
    g, phi = inst
    results = all_solvers(g, phi)
    values = {res.k_star for res in results.values()}
    assert len(values) == 1, {name: res.k_star for name, res in results.items()}
    lb = matching_lower_bound(g, phi)
    for res in results.values():
        verify_witness(g, phi, res)
        if res.optimal:
            assert res.k_star >= lb


@settings(max_examples=60, deadline=None)
@given(instances(max_n=6, max_r=4, min_r=2))
def test_all_solvers_agree_with_lists(inst):
    g, phi = inst
    rng = random.Random(hash(g.edges) ^ g.n)
    lists = ColorLists(
        tuple(frozenset(rng.sample(range(1, phi.r + 1), rng.randint(1, phi.r))) for _ in g.vertices)
    )
    results = all_solvers(g, phi, lists)
    assert len({res.k_star for res in results.values()}) == 1
    for res in results.values():
        verify_witness(g, phi, res, lists)


def test_auto_dispatch_matches_oracle():
    rng = random.Random(8)
    from colorfix.generators import random_coloring, random_graph

    for _ in range(40):
        n, r = rng.randint(1, 8), rng.randint(2, 4)
        g, phi = random_graph(n, 0.4, rng), random_coloring(n, r, rng)
        assert solve(g, phi).k_star == solve_oracle_subsets(g, phi).k_star


def test_k_star_monotone_in_palette():
    # Embedding an r-coloring into palette r+1 can only help.
    rng = random.Random(9)
    from colorfix.generators import random_coloring, random_graph

    for _ in range(40):
        n, r = rng.randint(2, 7), rng.randint(2, 3)
        g, phi = random_graph(n, 0.5, rng), random_coloring(n, r, rng)
        small = solve_partition(g, phi)
        big = solve_partition(g, phi.with_palette(r + 1))
        if small.optimal:
            assert big.optimal and big.k_star <= small.k_star

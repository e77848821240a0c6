import random

import networkx as nx
import pytest
from hypothesis import given, settings

from colorfix import (
    Coloring,
    Graph,
    SizeGuardError,
    TreeDecomposition,
    ValidationError,
    make_nice,
    min_fill_decomposition,
    solve_oracle_subsets,
    solve_treewidth,
    verify_witness,
)
from colorfix.generators import random_coloring, random_ktree, random_tree

from .conftest import complete, cycle, instances, path


@pytest.mark.parametrize(
    "g, width",
    [
        (Graph(5, [(1, 2), (2, 3), (2, 4), (4, 5)]), 1),
        (complete(4), 3),
        (cycle(4), 2),
    ],
)
def test_min_fill_widths(g, width):
    td = min_fill_decomposition(g)
    td.validate(g)
    assert td.width == width


def test_nice_single_bag():
    nice = make_nice(TreeDecomposition({1: frozenset({1, 2})}))
    kinds = [nd.kind for nd in nice.nodes]
    assert kinds == ["leaf", "introduce", "introduce", "forget", "forget"]
    assert nice.nodes[nice.root].bag == ()
    nice.check()


def test_nice_path_decomposition_of_p3():
    td = TreeDecomposition({1: frozenset({1, 2}), 2: frozenset({2, 3})}, ((1, 2),))
    nice = make_nice(td, path(3))
    nice.check()
    kinds = [nd.kind for nd in nice.nodes]
    assert nice.count("join") == 0
    # Descending from bag {2,3} to bag {1,2}: forget 3 before introducing 1.
    first_forget = kinds.index("forget")
    assert nice.nodes[first_forget].vertex == 3
    assert kinds[first_forget + 1] == "introduce"
    assert nice.width == 1


def test_join_free_input_gives_no_joins():
    bags = {i: frozenset({i, i + 1}) for i in range(1, 6)}
    td = TreeDecomposition(bags, tuple((i, i + 1) for i in range(1, 5)))
    assert make_nice(td, path(6)).count("join") == 0


@settings(max_examples=60, deadline=None)
@given(instances(max_n=9))
def test_nice_form_is_valid(inst):
    g, _ = inst
    td = min_fill_decomposition(g)
    nice = make_nice(td, g)
    nice.check()
    assert nice.width == td.width


def _is_valid(bags: dict, edges, g: Graph) -> bool:
    """Independent check of the three decomposition conditions with networkx."""
    tree = nx.Graph()
    tree.add_nodes_from(bags)
    tree.add_edges_from(edges)
    if not nx.is_tree(tree):
        return False
    if any(not any(v in b for b in bags.values()) for v in g.vertices):
        return False
    if any(not any(u in b and v in b for b in bags.values()) for u, v in g.edges):
        return False
    return all(
        nx.is_connected(tree.subgraph([n for n, b in bags.items() if v in b])) for v in g.vertices
    )


def test_validator_matches_independent_check_under_mutation():
    rng = random.Random(4)
    rejected = 0
    for _ in range(30):
        g = random_ktree(7, 2, rng)
        td = min_fill_decomposition(g)
        td.validate(g)
        for node, bag in td.bags.items():
            mutants = [bag - {v} for v in bag] + [bag | {v} for v in g.vertices if v not in bag]
            for new in mutants:
                bags = {**td.bags, node: new}
                expected = _is_valid(bags, td.edges, g)
                try:
                    TreeDecomposition(bags, td.edges).validate(g)
                    ok = True
                except ValidationError:
                    ok = False
                    rejected += 1
                assert ok == expected
    assert rejected > 0


def test_validator_named_conditions():
    g = path(3)
    with pytest.raises(ValidationError, match="vertex coverage"):
        TreeDecomposition({1: frozenset({1, 2})}).validate(g)
    with pytest.raises(ValidationError, match="edge coverage"):
        TreeDecomposition({1: frozenset({1, 2}), 2: frozenset({3})}, ((1, 2),)).validate(g)
    with pytest.raises(ValidationError, match="connectivity"):
        TreeDecomposition(
            {1: frozenset({1, 2}), 2: frozenset({2, 3}), 3: frozenset({1})}, ((1, 2), (2, 3))
        ).validate(g)
    with pytest.raises(ValidationError, match="tree"):
        TreeDecomposition({1: frozenset({1, 2}), 2: frozenset({2, 3})}).validate(g)


def test_invalid_td_rejected_by_solver():
    with pytest.raises(ValidationError):
        solve_treewidth(path(3), Coloring.uniform(3, 2), td=TreeDecomposition({1: frozenset({1, 2})}))


def test_state_guard():
    g = complete(8)
    with pytest.raises(SizeGuardError):
        solve_treewidth(g, Coloring.uniform(8, 8), state_guard=1000)


def test_tables_within_palette_power():
    rng = random.Random(2)
    for w in range(1, 6):
        g = random_ktree(9, w, rng)
        for r in (2, 3, 4):
            res = solve_treewidth(g, random_coloring(9, r, rng), r)
            assert all(states <= r**size for size, states in res.stats["bag_states"])


def test_supplied_and_heuristic_decompositions_agree():
    rng = random.Random(6)
    for _ in range(40):
        n = rng.randint(2, 8)
        g = random_tree(n, rng)
        phi = random_coloring(n, rng.randint(2, 4), rng)
        single = TreeDecomposition({1: frozenset(g.vertices)})
        a = solve_treewidth(g, phi, td=single)
        b = solve_treewidth(g, phi)
        c = solve_oracle_subsets(g, phi)
        assert a.k_star == b.k_star == c.k_star
        verify_witness(g, phi, a)
        verify_witness(g, phi, b)

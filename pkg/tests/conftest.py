from __future__ import annotations

import random
from functools import lru_cache

import networkx as nx
import pytest
from hypothesis import strategies as st

from colorfix import Coloring, Graph

ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def record(criterion: int, ok: bool, detail: str) -> None:
    ACCEPTANCE[criterion] = (ok, detail)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}")


def to_graph(g: nx.Graph) -> Graph:
    order = {v: i for i, v in enumerate(sorted(g.nodes), start=1)}
    return Graph(len(order), [(order[u], order[v]) for u, v in g.edges])


@lru_cache(maxsize=None)
def atlas(max_n: int = 7, connected: bool = False) -> tuple[Graph, ...]:
    """Every graph up to isomorphism with 1..max_n vertices (networkx atlas covers n <= 7)."""
    out = []
    for g in nx.graph_atlas_g():
        if 1 <= g.number_of_nodes() <= max_n and (not connected or nx.is_connected(g)):
            out.append(to_graph(g))
    return tuple(out)


def path(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(1, n)])


def cycle(n: int) -> Graph:
    return Graph(n, [(i, i % n + 1) for i in range(1, n + 1)])


def complete(n: int) -> Graph:
    return Graph(n, [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)])


@st.composite
def instances(draw, max_n: int = 7, max_r: int = 4, min_r: int = 1):
    n = draw(st.integers(0, max_n))
    pairs = [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    r = draw(st.integers(min_r, max_r))
    colors = draw(st.lists(st.integers(1, r), min_size=n, max_size=n))
    return Graph(n, edges), Coloring(tuple(colors), r)


@pytest.fixture
def rng():
    return random.Random(12345)

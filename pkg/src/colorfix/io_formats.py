"""Line-oriented text formats for graphs, colorings, lists and tree decompositions.

Graph::

    c optional comment
    p edge <n> <m>
    e <u> <v>

Coloring (header, budget and list lines are optional)::

    p color <n> <r>
    k <budget>
    v <vertex> <color>
    l <vertex> <c1> <c2> ...

In coloring files a line ``c <vertex> <color>`` with exactly two integers is
read as an assignment too; any other ``c`` line is a comment.

Tree decomposition::

    s td <bags> <width + 1> <n>
    b <id> <v1> <v2> ...
    <id1> <id2>
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ParseError
from .graph import Coloring, ColorLists, FixInstance, Graph
from .treewidth import TreeDecomposition

InstanceFile = FixInstance


def _lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split()
        if tokens:
            yield lineno, tokens


def _ints(tokens: list[str], lineno: int) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise ParseError(f"expected integers, got {' '.join(tokens)!r}", lineno) from None


def parse_graph(text: str) -> Graph:
    header = None
    edges: list[tuple[int, int]] = []
    for lineno, tok in _lines(text):
        kind = tok[0]
        if kind == "c":
            continue
        if kind == "p":
            if header is not None:
                raise ParseError("duplicate header", lineno)
            if len(tok) != 4 or tok[1] != "edge":
                raise ParseError("header must read 'p edge <n> <m>'", lineno)
            n, m = _ints(tok[2:], lineno)
            if n < 0 or m < 0:
                raise ParseError("negative counts in header", lineno)
            header = (n, m)
        elif kind == "e":
            if header is None:
                raise ParseError("edge line before header", lineno)
            if len(tok) != 3:
                raise ParseError("edge line must read 'e <u> <v>'", lineno)
            u, v = _ints(tok[1:], lineno)
            n = header[0]
            if not (1 <= u <= n and 1 <= v <= n):
                raise ParseError(f"vertex index out of range 1..{n} in edge ({u}, {v})", lineno)
            if u == v:
                raise ParseError(f"self-loop at vertex {u}", lineno)
            edges.append((u, v))
        else:
            raise ParseError(f"unknown line type {kind!r}", lineno)
    if header is None:
        raise ParseError("missing 'p edge' header")
    n, m = header
    if len(edges) != m:
        raise ParseError(f"header declares {m} edges but {len(edges)} edge lines follow")
    return Graph(n, edges)


def serialize_graph(graph: Graph) -> str:
    out = [f"p edge {graph.n} {graph.m}"]
    out += [f"e {u} {v}" for u, v in graph.edges]
    return "\n".join(out) + "\n"


@dataclass(frozen=True)
class ColoringFile:
    coloring: Coloring
    r: int
    k: int | None = None
    lists: ColorLists | None = None


def parse_coloring_file(text: str, n: int, r: int | None = None) -> ColoringFile:
    """Parse a coloring file for a graph on ``n`` vertices.

    The palette size comes from ``r`` if given, else from the header, else
    from the largest color or list entry seen.
    """
    assigned: dict[int, int] = {}
    lists: dict[int, frozenset[int]] = {}
    header_r = k = None
    where: dict[int, int] = {}

    def vertex(v: int, lineno: int) -> int:
        if not 1 <= v <= n:
            raise ParseError(f"vertex {v} outside 1..{n}", lineno)
        return v

    for lineno, tok in _lines(text):
        kind = tok[0]
        if kind == "c" and not (len(tok) == 3 and all(t.lstrip("-").isdigit() for t in tok[1:])):
            continue
        if kind in ("v", "c"):
            if len(tok) != 3:
                raise ParseError("assignment must read 'v <vertex> <color>'", lineno)
            v, c = _ints(tok[1:], lineno)
            if vertex(v, lineno) in assigned:
                raise ParseError(f"vertex {v} assigned twice", lineno)
            assigned[v] = c
            where[v] = lineno
        elif kind == "l":
            if len(tok) < 3:
                raise ParseError("list line needs a vertex and at least one color", lineno)
            v, *cs = _ints(tok[1:], lineno)
            if vertex(v, lineno) in lists:
                raise ParseError(f"vertex {v} has two list lines", lineno)
            lists[v] = frozenset(cs)
            where.setdefault(v, lineno)
        elif kind == "k":
            if len(tok) != 2 or k is not None:
                raise ParseError("budget line must read 'k <budget>' and appear once", lineno)
            (k,) = _ints(tok[1:], lineno)
            if k < 0:
                raise ParseError("budget must be nonnegative", lineno)
        elif kind == "p":
            if len(tok) != 4 or tok[1] != "color" or header_r is not None:
                raise ParseError("header must read 'p color <n> <r>' and appear once", lineno)
            hn, header_r = _ints(tok[2:], lineno)
            if hn != n:
                raise ParseError(f"header declares {hn} vertices but the graph has {n}", lineno)
        else:
            raise ParseError(f"unknown line type {kind!r}", lineno)

    missing = [v for v in range(1, n + 1) if v not in assigned]
    if missing:
        raise ParseError(f"no color given for vertices {missing}")
    if r is None:
        r = header_r
    if r is None:
        used = list(assigned.values()) + [c for s in lists.values() for c in s]
        r = max(used, default=1)
    for v, c in assigned.items():
        if not 1 <= c <= r:
            raise ParseError(f"color {c} of vertex {v} outside 1..{r}", where[v])
    for v, s in lists.items():
        bad = sorted(c for c in s if not 1 <= c <= r)
        if bad:
            raise ParseError(f"list of vertex {v} has colors outside 1..{r}: {bad}", where[v])
    color_lists = None
    if lists:
        full = frozenset(range(1, r + 1))
        color_lists = ColorLists(tuple(lists.get(v, full) for v in range(1, n + 1)))
    return ColoringFile(Coloring.from_mapping(assigned, n, r), r, k, color_lists)


def parse_coloring(text: str, n: int, r: int) -> Coloring:
    return parse_coloring_file(text, n, r).coloring


def serialize_coloring(
    coloring: Coloring, lists: ColorLists | None = None, k: int | None = None
) -> str:
    out = [f"p color {coloring.n} {coloring.r}"]
    if k is not None:
        out.append(f"k {k}")
    out += [f"v {v} {c}" for v, c in enumerate(coloring.colors, start=1)]
    if lists is not None:
        out += [
            f"l {v} " + " ".join(map(str, sorted(s))) for v, s in enumerate(lists.lists, start=1)
        ]
    return "\n".join(out) + "\n"


def read_instance(graph_text: str, coloring_text: str, r: int | None = None) -> InstanceFile:
    graph = parse_graph(graph_text)
    cf = parse_coloring_file(coloring_text, graph.n, r)
    return InstanceFile(graph, cf.coloring, cf.r, cf.k, cf.lists)


def write_instance(inst: InstanceFile) -> tuple[str, str]:
    return serialize_graph(inst.graph), serialize_coloring(inst.coloring, inst.lists, inst.k)


def parse_tree_decomposition(text: str, graph: Graph) -> TreeDecomposition:
    """Parse and validate a decomposition of ``graph``."""
    header = None
    bags: dict[int, frozenset[int]] = {}
    edges: list[tuple[int, int]] = []
    for lineno, tok in _lines(text):
        kind = tok[0]
        if kind == "c":
            continue
        if kind == "s":
            if len(tok) != 5 or tok[1] != "td" or header is not None:
                raise ParseError("header must read 's td <bags> <width+1> <n>' and appear once", lineno)
            header = _ints(tok[2:], lineno)
            if header[2] != graph.n:
                raise ParseError(f"header declares {header[2]} vertices but the graph has {graph.n}", lineno)
        elif header is None:
            raise ParseError("line before 's td' header", lineno)
        elif kind == "b":
            if len(tok) < 2:
                raise ParseError("bag line must read 'b <id> <vertices...>'", lineno)
            node, *vs = _ints(tok[1:], lineno)
            if node in bags:
                raise ParseError(f"bag {node} declared twice", lineno)
            if not 1 <= node <= header[0]:
                raise ParseError(f"bag id {node} outside 1..{header[0]}", lineno)
            bags[node] = frozenset(vs)
        else:
            if len(tok) != 2:
                raise ParseError("tree edge line must read '<id1> <id2>'", lineno)
            a, b = _ints(tok, lineno)
            edges.append((a, b))
    if header is None:
        raise ParseError("missing 's td' header")
    if len(bags) != header[0]:
        raise ParseError(f"header declares {header[0]} bags but {len(bags)} are given")
    td = TreeDecomposition(bags, tuple(edges))
    if td.width + 1 != header[1]:
        raise ParseError(f"header declares bag size {header[1]} but the largest bag has {td.width + 1}")
    td.validate(graph)
    return td


def serialize_tree_decomposition(td: TreeDecomposition, n: int) -> str:
    """Write ``td``; bag ids are renumbered ``1..#bags`` in sorted order."""
    ids = {node: i for i, node in enumerate(sorted(td.bags), start=1)}
    out = [f"s td {len(ids)} {td.width + 1} {n}"]
    for node, bag in td.bags.items():
        out.append(" ".join(["b", str(ids[node]), *map(str, sorted(bag))]))
    out += [f"{ids[a]} {ids[b]}" for a, b in td.edges]
    return "\n".join(out) + "\n"

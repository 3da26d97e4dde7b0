"""Finite directed multigraphs and their gauge-invariant ideal data.

Graphs are immutable, with vertex order fixed by declaration order; that
order is what pins down the row and column conventions of the incidence
map used for K-theory.  The text format is line oriented:

    # comment
    vertex v
    vertex w
    edge e v v
    edge f v w

Sinks are allowed.  Multi-edges are allowed and distinguished by edge
name.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .ktheory import IntegerMatrix


class GraphError(ValueError):
    """Invalid graph construction or text input."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


@dataclass(frozen=True)
class Edge:
    name: str
    source: str
    range: str


@dataclass(frozen=True)
class Graph:
    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]

    def __post_init__(self):
        seen = set()
        for v in self.vertices:
            if v in seen:
                raise GraphError(f"duplicate vertex {v!r}")
            seen.add(v)
        enames = set()
        for e in self.edges:
            if e.name in enames:
                raise GraphError(f"duplicate edge {e.name!r}")
            enames.add(e.name)
            if e.source not in seen:
                raise GraphError(f"edge {e.name!r} has undeclared source {e.source!r}")
            if e.range not in seen:
                raise GraphError(f"edge {e.name!r} has undeclared target {e.range!r}")

    def vertex_index(self, name: str) -> int:
        try:
            return self.vertices.index(name)
        except ValueError:
            raise GraphError(f"unknown vertex {name!r}") from None

    def out_edges(self, vertex: str) -> tuple[Edge, ...]:
        return tuple(e for e in self.edges if e.source == vertex)

    def edge_count(self, source: str, range_: str) -> int:
        return sum(1 for e in self.edges
                   if e.source == source and e.range == range_)


@dataclass(frozen=True)
class VertexSet:
    """An ordered subset of a graph's vertices."""

    graph: Graph
    names: tuple[str, ...]

    def __post_init__(self):
        order = {v: i for i, v in enumerate(self.graph.vertices)}
        for v in self.names:
            if v not in order:
                raise GraphError(f"vertex {v!r} not in graph")
        object.__setattr__(self, "names",
                           tuple(sorted(set(self.names), key=order.__getitem__)))

    def __contains__(self, name: str) -> bool:
        return name in self.names

    def __len__(self) -> int:
        return len(self.names)

    def __le__(self, other: "VertexSet") -> bool:
        return set(self.names) <= set(other.names)

    def __str__(self):
        return "{" + ", ".join(self.names) + "}"


def parse_graph(text: str) -> Graph:
    """Parse the line-oriented graph format; errors carry line numbers."""
    vertices: list[str] = []
    edges: list[Edge] = []
    vertex_set: set[str] = set()
    edge_names: set[str] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        kind = fields[0]
        if kind == "vertex":
            if len(fields) != 2:
                raise GraphError("expected: vertex <name>", lineno)
            name = fields[1]
            if name in vertex_set:
                raise GraphError(f"duplicate vertex {name!r}", lineno)
            vertex_set.add(name)
            vertices.append(name)
        elif kind == "edge":
            if len(fields) != 4:
                raise GraphError("expected: edge <name> <source> <target>", lineno)
            name, src, rng = fields[1:]
            if name in edge_names:
                raise GraphError(f"duplicate edge {name!r}", lineno)
            if src not in vertex_set:
                raise GraphError(f"undeclared vertex {src!r}", lineno)
            if rng not in vertex_set:
                raise GraphError(f"undeclared vertex {rng!r}", lineno)
            edge_names.add(name)
            edges.append(Edge(name, src, rng))
        else:
            raise GraphError(f"unknown directive {kind!r}", lineno)
    return Graph(tuple(vertices), tuple(edges))


def render(g: Graph) -> str:
    """Canonical text form; parse_graph(render(g)) reproduces g."""
    lines = [f"vertex {v}" for v in g.vertices]
    lines.extend(f"edge {e.name} {e.source} {e.range}" for e in g.edges)
    return "\n".join(lines) + "\n"


BUILTIN_GRAPHS = ("G1", "G2", "G3")


def builtin_graph(name: str) -> Graph:
    """The three standard graphs.

    G1: loop at v plus edges to two sinks w1, w2 (quantum sphere).
    G2: loop at v plus one edge to the sink w (quantum disc).
    G3: loop at v plus a doubled edge to the sink w (quantum projective
    plane).
    """
    if name == "G1":
        return Graph(("v", "w1", "w2"),
                     (Edge("e", "v", "v"),
                      Edge("f1", "v", "w1"),
                      Edge("f2", "v", "w2")))
    if name == "G2":
        return Graph(("v", "w"),
                     (Edge("e", "v", "v"), Edge("f", "v", "w")))
    if name == "G3":
        return Graph(("v", "w"),
                     (Edge("e", "v", "v"),
                      Edge("g1", "v", "w"),
                      Edge("g2", "v", "w")))
    raise GraphError(f"unknown builtin graph {name!r}")


def emitters(g: Graph) -> VertexSet:
    """Vertices that emit at least one edge, in graph order."""
    sources = {e.source for e in g.edges}
    return VertexSet(g, tuple(v for v in g.vertices if v in sources))


def build_ag(g: Graph) -> IntegerMatrix:
    """Incidence map of the graph as a matrix Z^emitters -> Z^vertices.

    Column v (an emitter) is (sum of ranges of edges out of v) minus v;
    entry (w, v) = #(edges v -> w) - [w == v].
    """
    cols = emitters(g).names
    entries = []
    for w in g.vertices:
        for v in cols:
            entries.append(g.edge_count(v, w) - (1 if w == v else 0))
    return IntegerMatrix(len(g.vertices), len(cols), tuple(entries))


def is_hereditary(g: Graph, subset) -> bool:
    """Every edge with source in the subset has its range in the subset."""
    names = set(subset.names if isinstance(subset, VertexSet) else subset)
    return all(e.range in names for e in g.edges if e.source in names)


def is_saturated(g: Graph, subset) -> bool:
    """Every emitter whose edges all land in the subset lies in the subset."""
    names = set(subset.names if isinstance(subset, VertexSet) else subset)
    for v in g.vertices:
        out = g.out_edges(v)
        if out and v not in names and all(e.range in names for e in out):
            return False
    return True


def hereditary_saturated_sets(g: Graph) -> tuple[VertexSet, ...]:
    """All hereditary saturated vertex sets, by brute force.

    Ordered by size then by vertex order, so the output is deterministic.
    Always contains the empty set and the full vertex set.
    """
    out = []
    n = len(g.vertices)
    for size in range(n + 1):
        for combo in itertools.combinations(range(n), size):
            names = tuple(g.vertices[i] for i in combo)
            if is_hereditary(g, names) and is_saturated(g, names):
                out.append(VertexSet(g, names))
    return tuple(out)


def lattices_isomorphic(sets_a, sets_b) -> bool:
    """Poset isomorphism of two inclusion-ordered families, brute force."""
    n = len(sets_a)
    if n != len(sets_b):
        return False
    rel_a = [[set(x.names) <= set(y.names) for y in sets_a] for x in sets_a]
    rel_b = [[set(x.names) <= set(y.names) for y in sets_b] for x in sets_b]
    for perm in itertools.permutations(range(n)):
        if all(rel_a[i][j] == rel_b[perm[i]][perm[j]]
               for i in range(n) for j in range(n)):
            return True
    return False

"""Simple undirected graphs: triangles, degrees, exact colouring, cut checks."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import BudgetExceeded, FormatError

DEFAULT_COLOURING_NODE_BUDGET = 10_000_000


class Graph:
    """Undirected simple graph on vertices 1..num_vertices.

    Edges are stored as a frozenset of (u, v) pairs with u < v, plus
    per-vertex adjacency sets.  Instances are immutable after construction.
    """

    __slots__ = ("num_vertices", "edges", "adj")

    def __init__(self, num_vertices: int, edges=()):
        if num_vertices < 0:
            raise ValueError("vertex count must be non-negative")
        normal = set()
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (1 <= u <= num_vertices and 1 <= v <= num_vertices):
                raise ValueError(f"edge ({u},{v}) out of range 1..{num_vertices}")
            normal.add((u, v) if u < v else (v, u))
        self.num_vertices = num_vertices
        self.edges = frozenset(normal)
        adj = {v: set() for v in range(1, num_vertices + 1)}
        for u, v in normal:
            adj[u].add(v)
            adj[v].add(u)
        self.adj = {v: frozenset(s) for v, s in adj.items()}

    def has_edge(self, u: int, v: int) -> bool:
        return ((u, v) if u < v else (v, u)) in self.edges

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def neighbours(self, v: int) -> frozenset[int]:
        return self.adj[v]

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def with_edge(self, u: int, v: int) -> "Graph":
        return Graph(self.num_vertices, list(self.edges) + [(u, v)])

    def without_edge(self, u: int, v: int) -> "Graph":
        e = (u, v) if u < v else (v, u)
        return Graph(self.num_vertices, self.edges - {e})

    def __eq__(self, other):
        return (
            isinstance(other, Graph)
            and self.num_vertices == other.num_vertices
            and self.edges == other.edges
        )

    def __hash__(self):
        return hash((self.num_vertices, self.edges))

    def __repr__(self):
        return f"Graph({self.num_vertices} vertices, {len(self.edges)} edges)"


@dataclass(frozen=True)
class Cut:
    """A bipartition of the vertex set; validity is checked by the verifier."""

    side_a: frozenset[int]
    side_b: frozenset[int]

    def swapped(self) -> "Cut":
        return Cut(self.side_b, self.side_a)


@dataclass(frozen=True)
class Colouring:
    """Vertex -> colour map using colours 1..k."""

    colours: dict[int, int]
    k: int


def complete_graph(n: int) -> Graph:
    return Graph(n, itertools.combinations(range(1, n + 1), 2))


def parse_graph(text: str | bytes) -> Graph:
    """Parse a DIMACS-col style graph: `p edge <n> <m>` header, `e <u> <v>` lines."""
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    header = None
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if header is not None:
                raise FormatError("duplicate 'p edge' header")
            if len(parts) != 4 or parts[1] != "edge":
                raise FormatError(f"malformed header: {line!r}")
            try:
                header = (int(parts[2]), int(parts[3]))
            except ValueError:
                raise FormatError(f"malformed header: {line!r}") from None
            if header[0] < 0 or header[1] < 0:
                raise FormatError(f"malformed header: {line!r}")
            continue
        if parts[0] == "e":
            if header is None:
                raise FormatError("edge line before 'p edge' header")
            if len(parts) != 3:
                raise FormatError(f"malformed edge line: {line!r}")
            try:
                u, v = int(parts[1]), int(parts[2])
            except ValueError:
                raise FormatError(f"malformed edge line: {line!r}") from None
            if u == v:
                raise FormatError(f"self-loop at vertex {u}")
            n = header[0]
            if not (1 <= u <= n and 1 <= v <= n):
                raise FormatError(f"edge ({u},{v}) out of range 1..{n}")
            e = (u, v) if u < v else (v, u)
            if e in seen:
                raise FormatError(f"duplicate edge ({e[0]},{e[1]})")
            seen.add(e)
            edges.append(e)
            continue
        raise FormatError(f"unrecognized line: {line!r}")
    if header is None:
        raise FormatError("missing 'p edge' header")
    if len(edges) != header[1]:
        raise FormatError(f"header promises {header[1]} edges, found {len(edges)}")
    return Graph(header[0], edges)


def emit_graph(g: Graph) -> str:
    lines = [f"p edge {g.num_vertices} {len(g.edges)}"]
    lines.extend(f"e {u} {v}" for u, v in g.sorted_edges())
    return "\n".join(lines) + "\n"


def parse_colouring(text: str | bytes) -> Colouring:
    """Parse a colouring certificate: `k <k>` header, then `<vertex> <colour>` lines."""
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    k = None
    colours: dict[int, int] = {}
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "k":
            if k is not None:
                raise FormatError("duplicate 'k' header")
            if len(parts) != 2:
                raise FormatError(f"malformed colour header: {line!r}")
            try:
                k = int(parts[1])
            except ValueError:
                raise FormatError(f"malformed colour header: {line!r}") from None
            continue
        if k is None:
            raise FormatError("colour line before 'k' header")
        if len(parts) != 2:
            raise FormatError(f"malformed colour line: {line!r}")
        try:
            v, c = int(parts[0]), int(parts[1])
        except ValueError:
            raise FormatError(f"malformed colour line: {line!r}") from None
        if v in colours:
            raise FormatError(f"vertex {v} coloured twice")
        colours[v] = c
    if k is None:
        raise FormatError("missing 'k' header")
    return Colouring(colours, k)


def emit_colouring(c: Colouring) -> str:
    lines = [f"k {c.k}"]
    lines.extend(f"{v} {c.colours[v]}" for v in sorted(c.colours))
    return "\n".join(lines) + "\n"


def enumerate_triangles(g: Graph) -> list[tuple[int, int, int]]:
    """All 3-cliques of g as sorted triples (u < v < w), in lexicographic order.

    Iterates edges and intersects the endpoints' neighbour sets, keeping only
    w > v so each triangle is reported exactly once.
    """
    out = []
    for u, v in g.sorted_edges():
        for w in sorted(g.adj[u] & g.adj[v]):
            if w > v:
                out.append((u, v, w))
    out.sort()
    return out


def max_degree(g: Graph) -> int:
    return max((len(s) for s in g.adj.values()), default=0)


def find_k_colouring(
    g: Graph, k: int, node_budget: int = DEFAULT_COLOURING_NODE_BUDGET
) -> Colouring | None:
    """Exact backtracking search for a proper k-colouring.

    Vertices are processed in id order and colours tried in increasing order,
    with vertex 1 pinned to colour 1 (a safe symmetry break), so the result is
    deterministic.  Raises BudgetExceeded after `node_budget` attempted
    assignments; that is distinct from returning None (no colouring exists).
    """
    if k < 1:
        raise ValueError("colour count must be at least 1")
    n = g.num_vertices
    colours: dict[int, int] = {}
    nodes = 0

    def extend(v: int) -> bool:
        nonlocal nodes
        if v > n:
            return True
        limit = 1 if v == 1 else k
        for c in range(1, limit + 1):
            nodes += 1
            if nodes > node_budget:
                raise BudgetExceeded(
                    f"colouring search exceeded {node_budget} nodes"
                )
            if all(colours.get(u) != c for u in g.adj[v]):
                colours[v] = c
                if extend(v + 1):
                    return True
                del colours[v]
        return False

    if extend(1):
        return Colouring(dict(colours), k)
    return None


def verify_colouring(g: Graph, c: Colouring) -> bool:
    """True iff c is a total proper colouring of g with colours in 1..k."""
    for v in range(1, g.num_vertices + 1):
        col = c.colours.get(v)
        if col is None or not (1 <= col <= c.k):
            return False
    return all(c.colours[u] != c.colours[v] for u, v in g.edges)


def find_monochromatic_triangle(g: Graph, cut: Cut) -> tuple[int, int, int] | None:
    """First triangle of g lying wholly inside one side of the cut, if any."""
    side_a = cut.side_a
    for u, v, w in enumerate_triangles(g):
        if (u in side_a) == (v in side_a) == (w in side_a):
            return (u, v, w)
    return None


def verify_cut_triangle_free(g: Graph, cut: Cut) -> bool:
    """True iff cut is a partition of V into two non-empty, triangle-free sides."""
    if not cut.side_a or not cut.side_b:
        return False
    if cut.side_a & cut.side_b:
        return False
    if cut.side_a | cut.side_b != frozenset(range(1, g.num_vertices + 1)):
        return False
    return find_monochromatic_triangle(g, cut) is None

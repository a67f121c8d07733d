"""Undirected graphs and the generators used by the QUBO builders.

Vertices are integers 0..n-1. Edges are unordered pairs stored as sorted
tuples. Adjacency is kept as one bitmask int per vertex, which is what the
search code wants for O(1) membership tests and mask algebra.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import ValidationError


class Graph:
    """Immutable undirected simple graph.

    Parameters
    ----------
    num_vertices : int
        Number of vertices, >= 0. Vertices are 0..num_vertices-1.
    edges : iterable of (int, int)
        Unordered edges. Self-loops and out-of-range endpoints are rejected,
        duplicates (in either orientation) collapse to one edge.
    labels : sequence of str, optional
        One display label per vertex, e.g. hypercube coordinate strings.
    """

    __slots__ = ("num_vertices", "edges", "adjacency", "labels")

    def __init__(self, num_vertices, edges=(), labels=None):
        if not isinstance(num_vertices, int) or isinstance(num_vertices, bool):
            raise ValidationError("num_vertices must be an int")
        if num_vertices < 0:
            raise ValidationError("num_vertices must be >= 0, got %d" % num_vertices)
        n = num_vertices
        seen = set()
        adjacency = [0] * n
        for e in edges:
            u, v = e
            if not (0 <= u < n and 0 <= v < n):
                raise ValidationError("edge (%r, %r) out of range for %d vertices" % (u, v, n))
            if u == v:
                raise ValidationError("self-loop at vertex %d" % u)
            if u > v:
                u, v = v, u
            if (u, v) in seen:
                continue
            seen.add((u, v))
            adjacency[u] |= 1 << v
            adjacency[v] |= 1 << u
        if labels is not None:
            labels = tuple(str(x) for x in labels)
            if len(labels) != n:
                raise ValidationError(
                    "expected %d labels, got %d" % (n, len(labels)))
        object.__setattr__(self, "num_vertices", n)
        object.__setattr__(self, "edges", tuple(sorted(seen)))
        object.__setattr__(self, "adjacency", tuple(adjacency))
        object.__setattr__(self, "labels", labels)

    def __setattr__(self, name, value):
        raise AttributeError("Graph is immutable")

    @property
    def num_edges(self):
        return len(self.edges)

    def is_edge(self, u, v):
        """True iff {u, v} is an edge. Raises on out-of-range vertices."""
        if not (0 <= u < self.num_vertices and 0 <= v < self.num_vertices):
            raise ValidationError("vertex pair (%r, %r) out of range" % (u, v))
        return bool(self.adjacency[u] >> v & 1)

    def neighbors(self, u):
        """Sorted list of neighbors of u."""
        mask = self.adjacency[u]
        return [v for v in range(self.num_vertices) if mask >> v & 1]

    def degree(self, u):
        return bin(self.adjacency[u]).count("1")

    def label_of(self, v):
        """Display label for v (falls back to the decimal index)."""
        if self.labels is not None:
            return self.labels[v]
        return str(v)

    def to_json_dict(self):
        d = {"num_vertices": self.num_vertices,
             "edges": [list(e) for e in self.edges]}
        if self.labels is not None:
            d["labels"] = list(self.labels)
        return d

    @classmethod
    def from_json_dict(cls, d):
        try:
            n = d["num_vertices"]
            edges = [tuple(e) for e in d["edges"]]
        except (KeyError, TypeError) as exc:
            raise ValidationError("graph JSON needs num_vertices and edges") from exc
        return cls(n, edges, labels=d.get("labels"))

    def __repr__(self):
        return "Graph(%d vertices, %d edges)" % (self.num_vertices, self.num_edges)

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return (self.num_vertices == other.num_vertices
                and self.edges == other.edges
                and self.labels == other.labels)

    def __hash__(self):
        return hash((self.num_vertices, self.edges, self.labels))


def hypercube_graph(n):
    """The n-dimensional hypercube Q_n.

    Vertex v is the integer whose n-bit binary expansion (most significant
    bit first) is the vertex label; u and v are adjacent iff their labels
    differ in exactly one bit. 2^n vertices, n * 2^(n-1) edges.
    """
    if not isinstance(n, int) or isinstance(n, bool) or not 1 <= n <= 12:
        raise ValidationError("hypercube dimension must be an int in 1..12, got %r" % (n,))
    size = 1 << n
    edges = []
    for v in range(size):
        for b in range(n):
            w = v ^ (1 << b)
            if w > v:
                edges.append((v, w))
    labels = [format(v, "0%db" % n) for v in range(size)]
    return Graph(size, edges, labels=labels)


def path_graph(k):
    """Path on k >= 1 vertices: edges {i, i+1}."""
    if not isinstance(k, int) or isinstance(k, bool) or k < 1:
        raise ValidationError("path length must be an int >= 1, got %r" % (k,))
    return Graph(k, [(i, i + 1) for i in range(k - 1)])


def cycle_graph(k):
    """Cycle on k >= 3 vertices: path edges plus the closing edge {k-1, 0}."""
    if not isinstance(k, int) or isinstance(k, bool) or k < 3:
        raise ValidationError("cycle length must be an int >= 3, got %r" % (k,))
    edges = [(i, i + 1) for i in range(k - 1)] + [(0, k - 1)]
    return Graph(k, edges)


@dataclass(frozen=True)
class CitbHostGraph:
    """Pattern graph for fixed-length-free cycle search.

    The undirected graph consists of a backbone path 1..T-1 plus one extra
    vertex (1,k) for each k in 3..T-1, adjacent to both endpoints 1 and k.
    Selecting backbone prefix 1..m together with (1,m) yields a cycle of
    m+1 vertices, so cycles of every size 4..T are represented.

    Indices: backbone vertex j is index j-1, vertex (1,k) is index
    (T-1) + (k-3). `successors` orients the search: j -> j+1 along the
    backbone and k -> (1,k) -> 1 around each closing vertex; only backbone
    vertices have outgoing edges listed (the closing hop into vertex 1 is
    implied by the undirected edge).

    Attributes
    ----------
    graph : Graph
        The undirected host graph (with human-readable labels).
    target_size : int
        T, the number of vertices of the graph being searched.
    path_vertices : tuple of int
        Indices of backbone vertices 1..T-1, in order.
    cycle_vertices : tuple of int
        Indices of the closing vertices (1,3)..(1,T-1), in order.
    successors : tuple of tuple of int
        successors[i] lists the directed out-neighbors of path_vertices[i].
    """

    graph: Graph
    target_size: int
    path_vertices: tuple
    cycle_vertices: tuple
    successors: tuple

    def cycle_vertex_for(self, m):
        """Index of the closing vertex (1,m), for 3 <= m <= T-1."""
        if not 3 <= m <= self.target_size - 1:
            raise ValidationError("no closing vertex (1,%d) in host of size %d"
                                  % (m, self.target_size))
        return (self.target_size - 1) + (m - 3)


def cycle_search_host(target_size):
    """Build the CitbHostGraph for searching cycles in a T-vertex graph."""
    if not isinstance(target_size, int) or isinstance(target_size, bool) or target_size < 3:
        raise ValidationError("target size must be an int >= 3, got %r" % (target_size,))
    t = target_size
    n_path = t - 1
    n_cycle = max(t - 3, 0)
    path_vertices = tuple(range(n_path))
    cycle_vertices = tuple(range(n_path, n_path + n_cycle))

    edges = [(j - 1, j) for j in range(1, n_path)]
    labels = [str(j) for j in range(1, t)]
    for k in range(3, t):
        c = (t - 1) + (k - 3)
        edges.append((0, c))        # {1, (1,k)}
        edges.append((k - 1, c))    # {k, (1,k)}
        labels.append("(1,%d)" % k)
    graph = Graph(n_path + n_cycle, edges, labels=labels)

    successors = []
    for j in range(1, t):           # backbone vertex j, index j-1
        out = []
        if j <= t - 2:
            out.append(j)           # j -> j+1
        if j >= 3:
            out.append((t - 1) + (j - 3))  # j -> (1,j)
        successors.append(tuple(out))
    return CitbHostGraph(graph=graph, target_size=t,
                         path_vertices=path_vertices,
                         cycle_vertices=cycle_vertices,
                         successors=tuple(successors))


def citb_host_graph(n):
    """Cycle-search host for the n-dimensional hypercube (n >= 2)."""
    if not isinstance(n, int) or isinstance(n, bool) or not 2 <= n <= 12:
        raise ValidationError("hypercube dimension must be an int in 2..12, got %r" % (n,))
    return cycle_search_host(1 << n)

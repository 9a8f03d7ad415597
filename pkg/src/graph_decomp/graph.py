"""Immutable graph, digraph and multigraph values.

Vertices are the dense integers 0..n-1. Undirected edges are stored with the
smaller endpoint first, so edge-set equality is structural.
"""

import logging
from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from functools import cached_property

import networkx as nx

from graph_decomp.errors import UsageError
from graph_decomp.models import DegreeProfile

logger = logging.getLogger(__name__)

Edge = tuple[int, int]


def canonical(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


def _check_vertices(vertices: Iterable[int], n: int) -> None:
    for v in vertices:
        if not 0 <= v < n:
            raise UsageError(f"vertex {v} outside 0..{n - 1}")


@dataclass(frozen=True)
class Graph:
    n: int
    """Number of vertices"""

    edges: frozenset[Edge]
    """Undirected edges, each stored as (min, max)"""

    def __post_init__(self):
        if self.n < 0:
            raise UsageError(f"vertex count must be non-negative, got {self.n}")
        for u, v in self.edges:
            if not 0 <= u < v < self.n:
                raise UsageError(f"edge {u}-{v} is not canonical on {self.n} vertices")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Edge]) -> "Graph":
        result = set()
        for u, v in edges:
            if u == v:
                raise UsageError(f"self-loop at vertex {u}")
            e = canonical(u, v)
            if e in result:
                raise UsageError(f"parallel edge {e[0]}-{e[1]}")
            result.add(e)
        return cls(n, frozenset(result))

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, frozenset())

    @classmethod
    def complete(cls, n: int) -> "Graph":
        return cls(n, frozenset((u, v) for u in range(n) for v in range(u + 1, n)))

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        return cls.from_edges(n, ((i, (i + 1) % n) for i in range(n)))

    @classmethod
    def path(cls, n: int) -> "Graph":
        return cls.from_edges(n, ((i, i + 1) for i in range(n - 1)))

    @classmethod
    def from_networkx(cls, graph: nx.Graph) -> "Graph":
        labels = {v: i for i, v in enumerate(sorted(graph.nodes))}
        return cls.from_edges(
            len(labels), ((labels[u], labels[v]) for u, v in graph.edges)
        )

    @cached_property
    def adjacency(self) -> tuple[frozenset[int], ...]:
        nbrs: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            nbrs[u].add(v)
            nbrs[v].add(u)
        return tuple(frozenset(s) for s in nbrs)

    @property
    def vertices(self) -> range:
        return range(self.n)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def neighbors(self, v: int) -> frozenset[int]:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def degrees(self) -> list[int]:
        return [len(s) for s in self.adjacency]

    def has_edge(self, u: int, v: int) -> bool:
        return u != v and canonical(u, v) in self.edges

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def edges_between(self, s: Iterable[int], t: Iterable[int]) -> int:
        """e_G(S,T): edges with one end in S and the other in T."""
        t_set = set(t)
        return sum(len(self.adjacency[v] & t_set) for v in set(s))

    def remove_edges(self, edges: Iterable[Edge]) -> "Graph":
        to_remove = {canonical(u, v) for u, v in edges}
        missing = to_remove - self.edges
        if missing:
            u, v = min(missing)
            raise UsageError(f"cannot remove absent edge {u}-{v}")
        return Graph(self.n, self.edges - to_remove)

    def add_edges(self, edges: Iterable[Edge]) -> "Graph":
        to_add = set()
        for u, v in edges:
            if u == v:
                raise UsageError(f"self-loop at vertex {u}")
            to_add.add(canonical(u, v))
        present = to_add & self.edges
        if present:
            u, v = min(present)
            raise UsageError(f"edge {u}-{v} already present")
        return Graph(self.n, self.edges | to_add)

    def with_vertices(self, extra: int) -> "Graph":
        """Same edges on n + extra vertices; the new ones are isolated."""
        return Graph(self.n + extra, self.edges)

    def induced(self, vertices: Iterable[int]) -> tuple["Graph", list[int]]:
        """Induced subgraph relabelled to 0..k-1, with labels[i] = original id."""
        labels = sorted(set(vertices))
        _check_vertices(labels, self.n)
        index = {v: i for i, v in enumerate(labels)}
        edges = frozenset(
            (index[u], index[v])
            for u, v in self.edges
            if u in index and v in index
        )
        return Graph(len(labels), edges), labels

    def induced_subgraph(self, vertices: Iterable[int]) -> "Graph":
        return self.induced(vertices)[0]

    def complement(self) -> "Graph":
        return Graph(
            self.n,
            frozenset(
                (u, v)
                for u in range(self.n)
                for v in range(u + 1, self.n)
                if (u, v) not in self.edges
            ),
        )

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(self.n))
        graph.add_edges_from(self.sorted_edges())
        return graph


@dataclass(frozen=True)
class Digraph:
    n: int
    """Number of vertices"""

    arcs: frozenset[Edge]
    """Ordered pairs (tail, head); both orientations of a pair may coexist"""

    def __post_init__(self):
        if self.n < 0:
            raise UsageError(f"vertex count must be non-negative, got {self.n}")
        for u, v in self.arcs:
            if u == v or not (0 <= u < self.n and 0 <= v < self.n):
                raise UsageError(f"arc {u}->{v} is invalid on {self.n} vertices")

    @classmethod
    def from_arcs(cls, n: int, arcs: Iterable[Edge]) -> "Digraph":
        result = set()
        for u, v in arcs:
            if (u, v) in result:
                raise UsageError(f"parallel arc {u}->{v}")
            result.add((u, v))
        return cls(n, frozenset(result))

    @classmethod
    def symmetric(cls, graph: Graph) -> "Digraph":
        """Both orientations of every edge of graph."""
        arcs = set()
        for u, v in graph.edges:
            arcs.add((u, v))
            arcs.add((v, u))
        return cls(graph.n, frozenset(arcs))

    @classmethod
    def complete(cls, n: int) -> "Digraph":
        return cls.symmetric(Graph.complete(n))

    @classmethod
    def cycle(cls, n: int) -> "Digraph":
        return cls.from_arcs(n, ((i, (i + 1) % n) for i in range(n)))

    @cached_property
    def out_adjacency(self) -> tuple[frozenset[int], ...]:
        nbrs: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.arcs:
            nbrs[u].add(v)
        return tuple(frozenset(s) for s in nbrs)

    @cached_property
    def in_adjacency(self) -> tuple[frozenset[int], ...]:
        nbrs: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.arcs:
            nbrs[v].add(u)
        return tuple(frozenset(s) for s in nbrs)

    @property
    def vertices(self) -> range:
        return range(self.n)

    @property
    def edge_count(self) -> int:
        return len(self.arcs)

    def out_neighbors(self, v: int) -> frozenset[int]:
        return self.out_adjacency[v]

    def in_neighbors(self, v: int) -> frozenset[int]:
        return self.in_adjacency[v]

    def out_degree(self, v: int) -> int:
        return len(self.out_adjacency[v])

    def in_degree(self, v: int) -> int:
        return len(self.in_adjacency[v])

    def degree(self, v: int) -> int:
        return self.out_degree(v) + self.in_degree(v)

    def degrees(self) -> list[int]:
        return [self.degree(v) for v in range(self.n)]

    def min_semidegree(self) -> int:
        if self.n == 0:
            return 0
        return min(
            min(self.out_degree(v), self.in_degree(v)) for v in range(self.n)
        )

    def has_arc(self, u: int, v: int) -> bool:
        return (u, v) in self.arcs

    def sorted_arcs(self) -> list[Edge]:
        return sorted(self.arcs)

    def edges_between(self, s: Iterable[int], t: Iterable[int]) -> int:
        """Arcs from S into T."""
        t_set = set(t)
        return sum(len(self.out_adjacency[v] & t_set) for v in set(s))

    def remove_arcs(self, arcs: Iterable[Edge]) -> "Digraph":
        to_remove = set(arcs)
        missing = to_remove - self.arcs
        if missing:
            u, v = min(missing)
            raise UsageError(f"cannot remove absent arc {u}->{v}")
        return Digraph(self.n, self.arcs - to_remove)

    def add_arcs(self, arcs: Iterable[Edge]) -> "Digraph":
        to_add = set(arcs)
        present = to_add & self.arcs
        if present:
            u, v = min(present)
            raise UsageError(f"arc {u}->{v} already present")
        return Digraph(self.n, self.arcs | to_add)

    def with_vertices(self, extra: int) -> "Digraph":
        return Digraph(self.n + extra, self.arcs)

    def induced(self, vertices: Iterable[int]) -> tuple["Digraph", list[int]]:
        labels = sorted(set(vertices))
        _check_vertices(labels, self.n)
        index = {v: i for i, v in enumerate(labels)}
        arcs = frozenset(
            (index[u], index[v]) for u, v in self.arcs if u in index and v in index
        )
        return Digraph(len(labels), arcs), labels

    def induced_subgraph(self, vertices: Iterable[int]) -> "Digraph":
        return self.induced(vertices)[0]

    def underlying(self) -> Graph:
        """Underlying simple graph; raises if some pair carries both arcs."""
        edges = set()
        for u, v in self.arcs:
            e = canonical(u, v)
            if e in edges:
                raise UsageError(f"pair {e[0]}-{e[1]} is oriented both ways")
            edges.add(e)
        return Graph(self.n, frozenset(edges))

    def reverse(self) -> "Digraph":
        return Digraph(self.n, frozenset((v, u) for u, v in self.arcs))

    def to_networkx(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        graph.add_nodes_from(range(self.n))
        graph.add_edges_from(self.sorted_arcs())
        return graph


@dataclass(frozen=True)
class Multigraph:
    n: int
    """Number of vertices"""

    multiplicities: tuple[tuple[Edge, int], ...]
    """Sorted (edge, multiplicity) entries, multiplicity >= 1"""

    def __post_init__(self):
        for (u, v), m in self.multiplicities:
            if not 0 <= u < v < self.n:
                raise UsageError(f"edge {u}-{v} is not canonical on {self.n} vertices")
            if m < 1:
                raise UsageError(f"edge {u}-{v} has multiplicity {m}")

    @classmethod
    def from_counts(cls, n: int, counts: Mapping[Edge, int]) -> "Multigraph":
        merged: dict[Edge, int] = {}
        for (u, v), m in counts.items():
            if m <= 0:
                continue
            e = canonical(u, v)
            merged[e] = merged.get(e, 0) + m
        return cls(n, tuple(sorted(merged.items())))

    def multiplicity(self, u: int, v: int) -> int:
        return dict(self.multiplicities).get(canonical(u, v), 0)

    def degrees(self) -> list[int]:
        result = [0] * self.n
        for (u, v), m in self.multiplicities:
            result[u] += m
            result[v] += m
        return result

    def degree(self, v: int) -> int:
        return self.degrees()[v]

    @property
    def edge_count(self) -> int:
        return sum(m for _, m in self.multiplicities)

    def edge_copies(self) -> list[Edge]:
        """Every parallel copy listed separately, in canonical order."""
        return [e for e, m in self.multiplicities for _ in range(m)]

    def relabel(self, labels: list[int], n: int) -> "Multigraph":
        """Map vertex i to labels[i] on a host with n vertices."""
        counts: dict[Edge, int] = {}
        for (u, v), m in self.multiplicities:
            e = canonical(labels[u], labels[v])
            counts[e] = counts.get(e, 0) + m
        return Multigraph.from_counts(n, counts)


AnyGraph = Graph | Digraph


def degree_profile(graph: AnyGraph) -> DegreeProfile:
    degrees = graph.degrees()
    if not degrees:
        return DegreeProfile(0, 0, 0, frozenset(), frozenset())
    max_degree = max(degrees)
    odd_set = frozenset(v for v, d in enumerate(degrees) if d % 2 == 1)
    return DegreeProfile(
        max_degree=max_degree,
        min_degree=min(degrees),
        odd_count=len(odd_set),
        odd_set=odd_set,
        max_degree_vertices=frozenset(
            v for v, d in enumerate(degrees) if d == max_degree
        ),
    )


def is_eulerian(graph: AnyGraph) -> bool:
    """Even degrees (graphs) or balanced in/out degrees (digraphs).

    Connectivity is not required.
    """
    if isinstance(graph, Digraph):
        return all(graph.in_degree(v) == graph.out_degree(v) for v in graph.vertices)
    return all(d % 2 == 0 for d in graph.degrees())


def is_regular(graph: AnyGraph) -> bool:
    return len(set(graph.degrees())) <= 1


def remove_edges(graph: Graph, edges: Iterable[Edge]) -> Graph:
    return graph.remove_edges(edges)


def induced_subgraph(graph: AnyGraph, vertices: Iterable[int]) -> AnyGraph:
    return graph.induced_subgraph(vertices)


def complement(graph: Graph) -> Graph:
    return graph.complement()


def sequence_edges(sequence: list[int], closed: bool) -> list[Edge]:
    """Consecutive pairs of a vertex sequence, in walk order."""
    pairs = list(zip(sequence, sequence[1:], strict=False))
    if closed and len(sequence) > 1:
        pairs.append((sequence[-1], sequence[0]))
    return pairs

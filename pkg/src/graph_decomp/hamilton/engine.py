import logging

import networkx as nx
import numpy as np

from graph_decomp.errors import NotFoundError, UsageError
from graph_decomp.graph import AnyGraph, Digraph, Edge, Graph, canonical, sequence_edges
from graph_decomp.hamilton.base import HamiltonSearch
from graph_decomp.hamilton.directed import DirectedSearch
from graph_decomp.hamilton.factors import (
    merge_factors,
    one_factorization,
    two_factorization,
)
from graph_decomp.hamilton.undirected import PosaSearch

logger = logging.getLogger(__name__)


class _BudgetExceeded(Exception):
    pass


def create_search(
    graph: AnyGraph, rng: np.random.Generator, step_factor: int = 50
) -> HamiltonSearch:
    # Searches are tried in order.
    searches = [
        PosaSearch(rng, step_factor),
        DirectedSearch(rng, step_factor),
    ]
    for search in searches:
        if search.detect(graph):
            return search
    raise UsageError(f"no Hamilton search handles {type(graph).__name__}")


def _out(graph: AnyGraph):
    return graph.out_adjacency if isinstance(graph, Digraph) else graph.adjacency


def _seq_edges(graph: AnyGraph, seq: list[int], closed: bool) -> list[Edge]:
    pairs = sequence_edges(seq, closed)
    if isinstance(graph, Digraph):
        return pairs
    return [canonical(u, v) for u, v in pairs]


def _restore(graph: AnyGraph, seq: list[int]) -> AnyGraph:
    if isinstance(graph, Digraph):
        return graph.add_arcs(sequence_edges(seq, True))
    return graph.add_edges(sequence_edges(seq, True))


def _remove(graph: AnyGraph, seq: list[int]) -> AnyGraph:
    if isinstance(graph, Digraph):
        return graph.remove_arcs(sequence_edges(seq, True))
    return graph.remove_edges(sequence_edges(seq, True))


class HamiltonEngine:
    """Hamilton cycles, paths and decompositions with bounded, seeded search.

    Orders up to exact_max_n are searched exhaustively, so a NotFoundError
    there means no cycle (or decomposition) exists. Larger inputs use
    randomized search with retry_budget restarts, and a NotFoundError only
    means the search gave up.
    """

    def __init__(
        self,
        rng: np.random.Generator,
        retry_budget: int = 100,
        backtrack_depth: int = 3,
        exact_max_n: int = 10,
        step_factor: int = 50,
        exact_node_budget: int = 200_000,
    ):
        self.rng = rng
        self.retry_budget = retry_budget
        self.backtrack_depth = backtrack_depth
        self.exact_max_n = exact_max_n
        self.step_factor = step_factor
        self.exact_node_budget = exact_node_budget

    def _impossible(self, graph: AnyGraph) -> str | None:
        n = graph.n
        if isinstance(graph, Digraph):
            if n < 2:
                return "fewer than two vertices"
            if graph.min_semidegree() < 1:
                return "a vertex has no in- or out-arc"
            if not nx.is_strongly_connected(graph.to_networkx()):
                return "not strongly connected"
        else:
            if n < 3:
                return "fewer than three vertices"
            if min(graph.degrees()) < 2:
                return "a vertex has degree below two"
            if not nx.is_connected(graph.to_networkx()):
                return "not connected"
        return None

    def _check(self, graph: AnyGraph, seq: list[int], closed: bool, spanning: bool):
        if spanning and sorted(seq) != list(range(graph.n)):
            raise NotFoundError("search returned a non-spanning sequence", "invalid")
        if len(set(seq)) != len(seq):
            raise NotFoundError("search returned a repeated vertex", "invalid")
        for u, v in sequence_edges(seq, closed):
            present = graph.has_arc(u, v) if isinstance(graph, Digraph) else graph.has_edge(u, v)
            if not present:
                raise NotFoundError(f"search used a missing edge {u}-{v}", "invalid")

    def _dfs_cycles(
        self,
        graph: AnyGraph,
        first: int,
        second: int | None,
        shuffle: bool,
        budget: list[int],
    ):
        """Yield Hamilton cycles starting at first (then second, if given).

        budget is a one-element list shared across calls; every expanded node
        spends one unit and an empty budget raises _BudgetExceeded.
        """
        n = graph.n
        out_adj = _out(graph)
        path = [first] if second is None else [first, second]
        on_path = set(path)

        def options(v: int) -> list[int]:
            result = [u for u in sorted(out_adj[v]) if u not in on_path]
            if shuffle and len(result) > 1:
                result = [result[i] for i in self.rng.permutation(len(result))]
            return result

        def extend():
            budget[0] -= 1
            if budget[0] < 0:
                raise _BudgetExceeded()
            if len(path) == n:
                if first in out_adj[path[-1]]:
                    yield list(path)
                return
            for u in options(path[-1]):
                path.append(u)
                on_path.add(u)
                yield from extend()
                on_path.discard(path.pop())

        yield from extend()

    def _exact_cycle(self, graph: AnyGraph) -> list[int] | None:
        try:
            budget = [self.exact_node_budget]
            for cycle in self._dfs_cycles(graph, 0, None, True, budget):
                if isinstance(graph, Graph) and cycle[1] > cycle[-1]:
                    cycle = [cycle[0]] + cycle[1:][::-1]
                return cycle
        except _BudgetExceeded:
            raise NotFoundError(
                f"exact Hamilton search exceeded {self.exact_node_budget} nodes"
            ) from None
        return None

    def hamilton_cycle(self, graph: AnyGraph) -> list[int]:
        reason = self._impossible(graph)
        if reason:
            raise NotFoundError(f"no Hamilton cycle: {reason}", reason="no_hamilton_cycle")
        if graph.n <= self.exact_max_n:
            cycle = self._exact_cycle(graph)
            if cycle is None:
                raise NotFoundError(
                    "no Hamilton cycle (exhaustive search)", reason="no_hamilton_cycle"
                )
        else:
            search = create_search(graph, self.rng, self.step_factor)
            cycle = search.find_cycle(graph, self.retry_budget)
            if cycle is None:
                raise NotFoundError(
                    f"{search.display_name} found no Hamilton cycle in {self.retry_budget} restarts"
                )
        self._check(graph, cycle, closed=True, spanning=True)
        return cycle

    def hamilton_path(self, graph: Graph, a: int, b: int) -> list[int]:
        if a == b or not (0 <= a < graph.n and 0 <= b < graph.n):
            raise UsageError(f"invalid endpoints {a}, {b} on {graph.n} vertices")
        if graph.n == 2:
            if not graph.has_edge(a, b):
                raise NotFoundError("no edge between the only two vertices", "no_hamilton_path")
            return [a, b]
        if graph.n <= self.exact_max_n:
            path = self._exact_path(graph, a, b)
        else:
            search = create_search(graph, self.rng, self.step_factor)
            path = search.find_path(graph, a, b, self.retry_budget)
            if path is None:
                raise NotFoundError(
                    f"no Hamilton path {a}-{b} in {self.retry_budget} restarts"
                )
        self._check(graph, path, closed=False, spanning=True)
        return path

    def _exact_path(self, graph: Graph, a: int, b: int) -> list[int]:
        # A Hamilton a-b path is a Hamilton cycle of G + ab through the edge ba.
        closed = graph if graph.has_edge(a, b) else graph.add_edges([(a, b)])
        try:
            budget = [self.exact_node_budget]
            for cycle in self._dfs_cycles(closed, b, a, True, budget):
                path = cycle[1:] + cycle[:1]
                if all(graph.has_edge(u, v) for u, v in sequence_edges(path, False)):
                    return path
        except _BudgetExceeded:
            raise NotFoundError("exact Hamilton path search exceeded its budget") from None
        raise NotFoundError(
            f"no Hamilton path {a}-{b} (exhaustive search)", reason="no_hamilton_path"
        )

    def hamilton_path_via_contraction(self, graph: Graph, a: int, b: int) -> list[int]:
        """Hamilton a-b path from a directed Hamilton cycle of the contraction.

        {a, b} becomes one vertex c with arcs c->x for x in N(a) and x->c for x
        in N(b); every other edge is doubled into two opposite arcs.
        """
        if a == b:
            raise UsageError("endpoints must differ")
        if graph.n == 2:
            return self.hamilton_path(graph, a, b)
        others = [v for v in graph.vertices if v not in (a, b)]
        index = {v: i + 1 for i, v in enumerate(others)}
        arcs = set()
        for u, v in graph.edges:
            if u in index and v in index:
                arcs.add((index[u], index[v]))
                arcs.add((index[v], index[u]))
        arcs.update((0, index[x]) for x in graph.neighbors(a) if x != b)
        arcs.update((index[x], 0) for x in graph.neighbors(b) if x != a)
        cycle = self.hamilton_cycle(Digraph(len(others) + 1, frozenset(arcs)))
        start = cycle.index(0)
        rotated = cycle[start + 1 :] + cycle[:start]
        path = [a] + [others[i - 1] for i in rotated] + [b]
        self._check(graph, path, closed=False, spanning=True)
        return path

    def perfect_matching_even_set(self, graph: Graph) -> list[Edge]:
        if graph.n % 2:
            raise UsageError(f"perfect matching needs an even vertex count, got {graph.n}")
        if graph.n == 0:
            return []
        try:
            cycle = self.hamilton_cycle(graph)
            return sorted(canonical(cycle[i], cycle[i + 1]) for i in range(0, graph.n, 2))
        except NotFoundError as e:
            logger.debug(f"matching via Hamilton cycle failed ({e}); using maximum matching")
        matching = nx.max_weight_matching(graph.to_networkx(), maxcardinality=True)
        if 2 * len(matching) != graph.n:
            raise NotFoundError(
                f"maximum matching covers {2 * len(matching)} of {graph.n} vertices",
                reason="no_perfect_matching",
            )
        return sorted(canonical(u, v) for u, v in matching)

    def covering_cycle(self, graph: AnyGraph, required: frozenset[int]) -> list[int]:
        """Any cycle of length >= 3 through every vertex of required."""
        if not required:
            raise UsageError("covering_cycle needs at least one required vertex")
        out_adj = _out(graph)
        first = min(required)
        path = [first]
        on_path = {first}
        budget = [self.exact_node_budget]

        def options(v: int) -> list[int]:
            result = [u for u in sorted(out_adj[v]) if u not in on_path]
            noise = self.rng.random(len(result))
            return [
                u
                for _, _, u in sorted(
                    zip((u not in required for u in result), noise.tolist(), result, strict=True)
                )
            ]

        def extend() -> bool:
            budget[0] -= 1
            if budget[0] < 0:
                raise _BudgetExceeded()
            tail = path[-1]
            if len(path) >= 3 and first in out_adj[tail] and required <= on_path:
                return True
            for u in options(tail):
                path.append(u)
                on_path.add(u)
                if extend():
                    return True
                on_path.discard(path.pop())
            return False

        try:
            found = extend()
        except _BudgetExceeded:
            found = False
        if not found:
            raise NotFoundError(
                f"no cycle through all of {sorted(required)}", reason="no_covering_cycle"
            )
        self._check(graph, path, closed=True, spanning=False)
        return path

    def _exact_decompose(self, graph: AnyGraph) -> list[list[int]] | None:
        directed = isinstance(graph, Digraph)
        n = graph.n
        budget = [self.exact_node_budget]

        def solve(current: AnyGraph) -> list[list[int]] | None:
            items = current.arcs if directed else current.edges
            if not items:
                return []
            u, v = min(items)
            for cycle in self._dfs_cycles(current, u, v, False, budget):
                rest = solve(_remove(current, cycle))
                if rest is not None:
                    return [cycle] + rest
            return None

        if n < (2 if directed else 3):
            return None
        return solve(graph)

    def _heuristic_decompose(self, graph: AnyGraph) -> list[list[int]]:
        directed = isinstance(graph, Digraph)
        n = graph.n
        search = create_search(graph, self.rng, self.step_factor)
        stop_degree = 2 if directed else 4

        for restart in range(max(1, self.retry_budget // 20)):
            cycles: list[list[int]] = []
            current = graph
            while current.degrees()[0] > stop_degree:
                cycle = search.find_cycle(current, restarts=5)
                if cycle is None:
                    break
                cycles.append(cycle)
                current = _remove(current, cycle)

            for depth in range(min(self.backtrack_depth, len(cycles)) + 1):
                kept = cycles[: len(cycles) - depth]
                rest = current
                for cycle in cycles[len(cycles) - depth :]:
                    rest = _restore(rest, cycle)
                factors = [frozenset(_seq_edges(graph, c, True)) for c in kept]
                factors += one_factorization(rest) if directed else two_factorization(rest)
                merged = merge_factors(n, factors, self.rng, directed=directed)
                if merged is not None:
                    logger.debug(
                        f"decomposed after {restart + 1} restarts, {len(kept)} greedy cycles, backtrack depth {depth}"
                    )
                    return merged
        raise NotFoundError(f"no Hamilton decomposition found on {n} vertices")

    def _decompose(self, graph: AnyGraph, cycles_expected: int) -> list[list[int]]:
        if cycles_expected == 0:
            return []
        cycles = None
        if graph.n <= self.exact_max_n:
            try:
                cycles = self._exact_decompose(graph)
            except _BudgetExceeded:
                logger.debug("exact decomposition exceeded its budget, trying heuristics")
            else:
                if cycles is None:
                    raise NotFoundError(
                        "no Hamilton decomposition (exhaustive search)",
                        reason="no_decomposition",
                    )
        if cycles is None:
            cycles = self._heuristic_decompose(graph)

        used: set[Edge] = set()
        for cycle in cycles:
            self._check(graph, cycle, closed=True, spanning=True)
            used.update(_seq_edges(graph, cycle, True))
        total = graph.arcs if isinstance(graph, Digraph) else graph.edges
        if len(cycles) != cycles_expected or used != total:
            raise NotFoundError("decomposition does not partition the edges", "invalid")
        return cycles

    def hamilton_decompose(self, graph: Graph) -> list[list[int]]:
        degrees = set(graph.degrees())
        if len(degrees) > 1 or any(d % 2 for d in degrees):
            raise UsageError("hamilton_decompose needs an even-regular graph")
        r = degrees.pop() if degrees else 0
        return self._decompose(graph, r // 2)

    def hamilton_decompose_digraph(self, digraph: Digraph) -> list[list[int]]:
        outs = {digraph.out_degree(v) for v in digraph.vertices}
        ins = {digraph.in_degree(v) for v in digraph.vertices}
        if len(outs) > 1 or outs != ins:
            raise UsageError("hamilton_decompose_digraph needs a regular digraph")
        r = outs.pop() if outs else 0
        return self._decompose(digraph, r)

    def two_factorization(self, graph: Graph) -> list[frozenset[Edge]]:
        return two_factorization(graph)

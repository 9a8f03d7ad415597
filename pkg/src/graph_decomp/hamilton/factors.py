"""Regular factorizations and merging of factors into Hamilton cycles.

A 2k-regular graph splits into k spanning 2-factors by orienting an Eulerian
circuit of each component and peeling k perfect matchings off the out/in
double cover. Regular digraphs split into 1-factors the same way. The merge
step turns a factorization into a Hamilton decomposition by swapping the two
colour classes of an alternating 4-cycle, which joins or splits cycles of the
two factors involved.
"""

import logging
import math

import networkx as nx
import numpy as np

from graph_decomp.errors import NotFoundError, UsageError
from graph_decomp.graph import Digraph, Edge, Graph, canonical

logger = logging.getLogger(__name__)


def _peel_matchings(n: int, arcs: list[Edge], rounds: int) -> list[list[Edge]]:
    top = [("out", v) for v in range(n)]
    double_cover = nx.Graph()
    double_cover.add_nodes_from(top, bipartite=0)
    double_cover.add_nodes_from((("in", v) for v in range(n)), bipartite=1)
    double_cover.add_edges_from((("out", u), ("in", v)) for u, v in arcs)

    factors = []
    for i in range(rounds):
        matching = nx.bipartite.hopcroft_karp_matching(double_cover, top_nodes=top)
        factor = sorted(
            (side[1], mate[1]) for side, mate in matching.items() if side[0] == "out"
        )
        if len(factor) != n:
            raise NotFoundError(
                f"double cover has no perfect matching in round {i + 1}",
                reason="no_perfect_matching",
            )
        double_cover.remove_edges_from((("out", u), ("in", v)) for u, v in factor)
        factors.append(factor)
    return factors


def two_factorization(graph: Graph) -> list[frozenset[Edge]]:
    degrees = set(graph.degrees())
    if len(degrees) > 1 or any(d % 2 for d in degrees):
        raise UsageError("two_factorization needs an even-regular graph")
    r = degrees.pop() if degrees else 0
    if r == 0:
        return []

    nx_graph = graph.to_networkx()
    arcs: list[Edge] = []
    for component in sorted(nx.connected_components(nx_graph), key=min):
        if len(component) > 1:
            circuit = nx.eulerian_circuit(
                nx_graph.subgraph(component), source=min(component)
            )
            arcs.extend(circuit)
    factors = _peel_matchings(graph.n, arcs, r // 2)
    return [frozenset(canonical(u, v) for u, v in factor) for factor in factors]


def one_factorization(digraph: Digraph) -> list[frozenset[Edge]]:
    outs = {digraph.out_degree(v) for v in digraph.vertices}
    ins = {digraph.in_degree(v) for v in digraph.vertices}
    if len(outs) > 1 or outs != ins:
        raise UsageError("one_factorization needs a regular digraph")
    r = outs.pop() if outs else 0
    if r == 0:
        return []
    factors = _peel_matchings(digraph.n, digraph.sorted_arcs(), r)
    return [frozenset(factor) for factor in factors]


def factor_cycles(n: int, edges: frozenset[Edge]) -> list[list[int]]:
    """Vertex sequences of the cycles of a spanning 2-regular edge set."""
    nbr: list[list[int]] = [[] for _ in range(n)]
    for u, v in sorted(edges):
        nbr[u].append(v)
        nbr[v].append(u)
    return _walk_cycles(
        n, lambda prev, v: nbr[v][0] if nbr[v][0] != prev else nbr[v][1]
    )


def arc_cycles(n: int, arcs: frozenset[Edge]) -> list[list[int]]:
    """Vertex sequences of the cycles of a spanning 1-factor."""
    succ = dict(arcs)
    return _walk_cycles(n, lambda prev, v: succ[v])


def _walk_cycles(n: int, step) -> list[list[int]]:
    seen = [False] * n
    cycles = []
    for start in range(n):
        if seen[start]:
            continue
        cycle = [start]
        seen[start] = True
        prev, v = -1, start
        while True:
            nxt = step(prev, v)
            if nxt == start:
                break
            cycle.append(nxt)
            seen[nxt] = True
            prev, v = v, nxt
        cycles.append(cycle)
    return cycles


class _UndirectedFactors:
    def __init__(self, n: int, factors: list[frozenset[Edge]]):
        self.n = n
        self.nbr = []
        for edges in factors:
            table: list[list[int]] = [[] for _ in range(n)]
            for u, v in sorted(edges):
                table[u].append(v)
                table[v].append(u)
            self.nbr.append(table)

    def _walk(self, f: int) -> list[list[int]]:
        table = self.nbr[f]
        return _walk_cycles(
            self.n, lambda p, v: table[v][0] if table[v][0] != p else table[v][1]
        )

    def count(self, f: int) -> int:
        return len(self._walk(f))

    def candidates(self, f: int, a: int, b: int) -> list[tuple[int, int, int]]:
        """Alternating 4-cycles a-b-c-d with ab, cd in f and bc, da in g."""
        found = []
        in_f = self.nbr[f]
        for g in range(len(self.nbr)):
            if g == f:
                continue
            in_g = self.nbr[g]
            for d in in_g[a]:
                for c in in_g[b]:
                    if c not in (a, d) and c in in_f[d]:
                        found.append((g, c, d))
        return found

    def swap(self, f: int, g: int, a: int, b: int, c: int, d: int) -> None:
        for table, removed, added in (
            (self.nbr[f], ((a, b), (c, d)), ((b, c), (d, a))),
            (self.nbr[g], ((b, c), (d, a)), ((a, b), (c, d))),
        ):
            for u, v in removed:
                table[u].remove(v)
                table[v].remove(u)
            for u, v in added:
                table[u].append(v)
                table[v].append(u)

    def swap_back(self, f: int, g: int, a: int, b: int, c: int, d: int) -> None:
        self.swap(g, f, a, b, c, d)

    def first_edge(self, f: int, a: int) -> int:
        return self.nbr[f][a][0]

    def cycle(self, f: int) -> list[int]:
        return self._walk(f)[0]


class _DirectedFactors:
    def __init__(self, n: int, factors: list[frozenset[Edge]]):
        self.n = n
        self.succ = [dict(arcs) for arcs in factors]
        self.pred = [{v: u for u, v in arcs} for arcs in factors]

    def count(self, f: int) -> int:
        succ = self.succ[f]
        return len(_walk_cycles(self.n, lambda p, v: succ[v]))

    def candidates(self, f: int, a: int, b: int) -> list[tuple[int, int, int]]:
        """a->b, c->d in f and a->d, c->b in g."""
        found = []
        for g in range(len(self.succ)):
            if g == f:
                continue
            d = self.succ[g][a]
            c = self.pred[f][d]
            if c != a and self.succ[g][c] == b:
                found.append((g, c, d))
        return found

    def _set(self, f: int, u: int, v: int) -> None:
        self.succ[f][u] = v
        self.pred[f][v] = u

    def swap(self, f: int, g: int, a: int, b: int, c: int, d: int) -> None:
        self._set(f, a, d)
        self._set(f, c, b)
        self._set(g, a, b)
        self._set(g, c, d)

    def swap_back(self, f: int, g: int, a: int, b: int, c: int, d: int) -> None:
        self._set(f, a, b)
        self._set(f, c, d)
        self._set(g, a, d)
        self._set(g, c, b)

    def first_edge(self, f: int, a: int) -> int:
        return self.succ[f][a]

    def cycle(self, f: int) -> list[int]:
        succ = self.succ[f]
        return _walk_cycles(self.n, lambda p, v: succ[v])[0]


def merge_factors(
    n: int,
    factors: list[frozenset[Edge]],
    rng: np.random.Generator,
    directed: bool = False,
    max_iters: int | None = None,
) -> list[list[int]] | None:
    """Swap alternating 4-cycles until every factor is a single Hamilton cycle.

    Moves that do not increase the total cycle count are always taken; others
    are taken with a probability that decays over the run. Returns None when
    the iteration budget runs out.
    """
    if not factors:
        return []
    state = _DirectedFactors(n, factors) if directed else _UndirectedFactors(n, factors)
    k = len(factors)
    counts = [state.count(f) for f in range(k)]
    if max_iters is None:
        max_iters = 40 * n * k + 1000

    for it in range(max_iters):
        if sum(counts) == k:
            break
        broken = [f for f in range(k) if counts[f] > 1]
        f = broken[int(rng.integers(len(broken)))]
        a = int(rng.integers(n))
        b = state.first_edge(f, a)
        if not directed and rng.random() < 0.5:
            b = state.nbr[f][a][1]
        options = state.candidates(f, a, b)
        if not options:
            continue
        g, c, d = options[int(rng.integers(len(options)))]
        state.swap(f, g, a, b, c, d)
        new_f, new_g = state.count(f), state.count(g)
        delta = new_f + new_g - counts[f] - counts[g]
        temperature = max(0.02, 1.0 - it / max_iters)
        if delta <= 0 or rng.random() < math.exp(-delta / temperature):
            counts[f], counts[g] = new_f, new_g
        else:
            state.swap_back(f, g, a, b, c, d)

    if sum(counts) != k:
        logger.debug(f"factor merging stopped with {sum(counts)} cycles for {k} factors")
        return None
    logger.debug(f"merged {k} factors into Hamilton cycles")
    return [state.cycle(f) for f in range(k)]

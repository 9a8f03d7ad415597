"""Matching-respecting splits, degree-prescribed subdigraphs and Eulerian orientations."""

import logging
import math

import networkx as nx
import numpy as np

from graph_decomp.errors import (
    HypothesisViolatedError,
    InfeasibleError,
    RetryExhaustedError,
    UsageError,
)
from graph_decomp.graph import AnyGraph, Digraph, Edge, Graph, canonical, is_eulerian
from graph_decomp.models import (
    DegreePrescription,
    OrientationConfig,
    PairList,
    QuasirandomParams,
    SplitPartition,
)

logger = logging.getLogger(__name__)


def _directed_view(graph: AnyGraph) -> tuple[tuple[frozenset[int], ...], tuple[frozenset[int], ...]]:
    if isinstance(graph, Digraph):
        return graph.out_adjacency, graph.in_adjacency
    return graph.adjacency, graph.adjacency


def split_violation(
    graph: AnyGraph, members: frozenset[int], pairs: PairList, alpha: float
) -> str | None:
    """Describe the first split condition that fails, or None if all hold."""
    n = graph.n
    if not n / 3 <= len(members) <= 2 * n / 3:
        return f"|S| = {len(members)} outside [{n / 3:.2f}, {2 * n / 3:.2f}]"
    split = pairs.separated_by(members)
    if split is not None:
        return f"pair {split} is separated"
    need = math.ceil(alpha * n / 6 - 1e-9)
    outside = frozenset(range(n)) - members
    out_adj, in_adj = _directed_view(graph)
    for v in range(n):
        for label, side in (("S", members), ("complement", outside)):
            if len(out_adj[v] & side) < need:
                return f"vertex {v} has fewer than {need} out-neighbours in {label}"
            if len(in_adj[v] & side) < need:
                return f"vertex {v} has fewer than {need} in-neighbours in {label}"
    return None


def split_partition(
    graph: AnyGraph,
    pairs: PairList,
    alpha: float,
    rng: np.random.Generator,
    retry_budget: int = 100,
) -> SplitPartition:
    """Random S that keeps every pair together and sees every vertex from both sides.

    The pairs are extended to cover all but at most one vertex, then one fair
    coin per pair decides whether both endpoints join S.
    """
    n = graph.n
    blocks = [tuple(pair) for pair in pairs]
    loose = np.array(sorted(set(range(n)) - pairs.vertices), dtype=int)
    for attempt in range(retry_budget):
        order = rng.permutation(loose).tolist()
        extended = blocks + [tuple(order[i : i + 2]) for i in range(0, len(order), 2)]
        coins = rng.integers(0, 2, size=len(extended))
        members = frozenset(v for block, coin in zip(extended, coins, strict=True) if coin for v in block)
        problem = split_violation(graph, members, pairs, alpha)
        if problem is None:
            logger.debug(f"split of {n} vertices found on attempt {attempt + 1}")
            return SplitPartition(members, n)
        logger.debug(f"split attempt {attempt + 1} rejected: {problem}")
    raise RetryExhaustedError(f"no valid split of {n} vertices in {retry_budget} attempts")


def degree_prescribed_subdigraph(digraph: Digraph, presc: DegreePrescription) -> Digraph:
    """Spanning subdigraph with out-degree n_plus[v] and in-degree n_minus[v].

    Solved as an integral max-flow: source -> v_out (capacity n_plus[v]),
    u_out -> v_in for each arc (capacity 1), v_in -> sink (capacity n_minus[v]).
    """
    n = digraph.n
    if len(presc.n_plus) != n:
        raise UsageError(f"prescription covers {len(presc.n_plus)} vertices, digraph has {n}")
    for v in range(n):
        if presc.n_plus[v] > digraph.out_degree(v) or presc.n_minus[v] > digraph.in_degree(v):
            raise InfeasibleError(
                f"vertex {v} is prescribed more than its degree", condition="degree"
            )
    total = sum(presc.n_plus)
    if total == 0:
        return Digraph(n, frozenset())

    network = nx.DiGraph()
    network.add_node("source")
    network.add_node("sink")
    for v in range(n):
        if presc.n_plus[v]:
            network.add_edge("source", ("out", v), capacity=presc.n_plus[v])
        if presc.n_minus[v]:
            network.add_edge(("in", v), "sink", capacity=presc.n_minus[v])
    for u, v in digraph.sorted_arcs():
        network.add_edge(("out", u), ("in", v), capacity=1)

    value, flow = nx.maximum_flow(network, "source", "sink")
    if value < total:
        raise InfeasibleError(
            f"max flow {value} falls short of the prescribed {total} arcs",
            condition="flow",
        )
    arcs = frozenset(
        (u, v)
        for u, v in digraph.sorted_arcs()
        if flow.get(("out", u), {}).get(("in", v), 0) == 1
    )
    return Digraph(n, arcs)


def cycle_peel_orientation(graph: Graph) -> Digraph:
    """Orient an even-degree graph by peeling cycles off a walk."""
    if not is_eulerian(graph):
        raise UsageError("cycle peeling needs every degree to be even")
    remaining = [set(s) for s in graph.adjacency]
    arcs: list[Edge] = []
    for start in range(graph.n):
        walk = [start]
        index = {start: 0}
        while remaining[start] or len(walk) > 1:
            tail = walk[-1]
            nxt = min(remaining[tail])
            remaining[tail].discard(nxt)
            remaining[nxt].discard(tail)
            if nxt in index:
                cut = index[nxt]
                cycle = walk[cut:]
                arcs.extend(zip(cycle, cycle[1:] + [nxt], strict=True))
                for v in walk[cut + 1 :]:
                    del index[v]
                del walk[cut + 1 :]
            else:
                index[nxt] = len(walk)
                walk.append(nxt)
    return Digraph(graph.n, frozenset(arcs))


def _prescriptions(
    imbalance: list[int], base: int
) -> DegreePrescription:
    return DegreePrescription(
        n_plus=tuple(base + max(0, -d) for d in imbalance),
        n_minus=tuple(base + max(0, d) for d in imbalance),
    )


def eulerian_orientation_quasirandom(
    graph: Graph,
    params: QuasirandomParams | None,
    config: OrientationConfig,
    rng: np.random.Generator,
    strict: bool = True,
) -> Digraph:
    """Balanced orientation of an even-degree graph built from random halves.

    Every edge is oriented at random and put into G1 or G2 by a fair coin.
    Inside G2 a degree-prescribed subdigraph cancels G1's imbalance on top of
    a common base degree; the edges of neither part form an even-degree
    leftover that is oriented by cycle peeling. When no split yields a
    feasible prescription, strict mode raises RetryExhaustedError and best-effort
    mode orients the whole graph by cycle peeling.
    """
    if not is_eulerian(graph):
        raise HypothesisViolatedError("orientation needs every degree to be even")
    n = graph.n
    edges = graph.sorted_edges()
    if not edges:
        return Digraph(n, frozenset())
    if params is not None and min(graph.degrees()) < params.alpha * n:
        logger.debug(f"minimum degree below {params.alpha:.2f}n; split may be lopsided")

    for attempt in range(config.retry_budget):
        coins = rng.integers(0, 2, size=(len(edges), 2))
        g1: list[Edge] = []
        g2: list[Edge] = []
        for (u, v), (flip, part) in zip(edges, coins.tolist(), strict=True):
            arc = (v, u) if flip else (u, v)
            (g1 if part else g2).append(arc)
        g2_digraph = Digraph(n, frozenset(g2))
        imbalance = [0] * n
        for u, v in g1:
            imbalance[u] += 1
            imbalance[v] -= 1

        chosen = None
        for base in range(math.ceil(config.xi * n), -1, -1):
            presc = _prescriptions(imbalance, base)
            try:
                chosen = degree_prescribed_subdigraph(g2_digraph, presc)
                break
            except InfeasibleError:
                continue
        if chosen is None:
            logger.debug(f"orientation attempt {attempt + 1}: no feasible prescription")
            continue

        used = {canonical(u, v) for u, v in g1} | {canonical(u, v) for u, v in chosen.arcs}
        leftover = Graph(n, frozenset(e for e in edges if e not in used))
        arcs = set(g1) | set(chosen.arcs) | set(cycle_peel_orientation(leftover).arcs)
        result = Digraph(n, frozenset(arcs))
        if not is_eulerian(result):
            raise HypothesisViolatedError("orientation came out unbalanced")
        logger.debug(f"balanced orientation found on attempt {attempt + 1}")
        return result

    if strict:
        raise RetryExhaustedError(
            f"no split of {len(edges)} edges admitted a feasible prescription "
            f"in {config.retry_budget} attempts"
        )
    logger.warning("no feasible random split; orienting by cycle peeling instead")
    return cycle_peel_orientation(graph)

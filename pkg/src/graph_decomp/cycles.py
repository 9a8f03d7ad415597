"""Decompositions into Δ/2 cycles consistent with a pair list.

The working graph loses one cycle per round. Each round's cycle is a Hamilton
cycle of the working graph induced on one side of a fixed split together with
every current maximum-degree vertex, so Δ drops by exactly two per round while
the sides alternate. Once the working graph is regular the rest is a Hamilton
decomposition.
"""

import logging
import math

import numpy as np

from graph_decomp.errors import (
    HypothesisViolatedError,
    IterationOverflowError,
    NotFoundError,
    RetryExhaustedError,
    UsageError,
)
from graph_decomp.graph import (
    AnyGraph,
    Digraph,
    Edge,
    Graph,
    canonical,
    degree_profile,
    is_eulerian,
    is_regular,
    sequence_edges,
)
from graph_decomp.hamilton import HamiltonEngine
from graph_decomp.models import (
    Decomposition,
    DecompositionKind,
    OrientationConfig,
    PairList,
    QuasirandomParams,
)
from graph_decomp.orientation import eulerian_orientation_quasirandom, split_partition

logger = logging.getLogger(__name__)


def engine_for(
    params: QuasirandomParams, rng: np.random.Generator, engine: HamiltonEngine | None
) -> HamiltonEngine:
    if engine is not None:
        return engine
    return HamiltonEngine(rng, params.retry_budget, params.backtrack_depth)


def _remove_cycle(graph: AnyGraph, cycle: list[int]) -> AnyGraph:
    if isinstance(graph, Digraph):
        return graph.remove_arcs(sequence_edges(cycle, True))
    return graph.remove_edges(sequence_edges(cycle, True))


def _hypothesis(strict: bool, message: str) -> None:
    if strict:
        raise HypothesisViolatedError(message)
    logger.warning(f"{message}; continuing without the count guarantee")


def cycle_decomposition(
    graph: AnyGraph,
    pairs: PairList,
    params: QuasirandomParams,
    rng: np.random.Generator,
    engine: HamiltonEngine | None = None,
    strict: bool = True,
) -> Decomposition:
    """Shared extraction loop for graphs and digraphs.

    In best-effort mode (strict=False) hypothesis failures are logged, the
    round cap is Δ/2, and rounds fall back to any cycle through the current
    maximum-degree vertices when no split or induced Hamilton cycle exists.
    """
    engine = engine_for(params, rng, engine)
    directed = isinstance(graph, Digraph)
    n = graph.n
    if not is_eulerian(graph):
        raise HypothesisViolatedError(
            "input is not Eulerian" if directed else "input has odd-degree vertices"
        )
    profile = degree_profile(graph)
    delta = profile.max_degree
    best_effort = False
    if profile.spread > params.eta * n:
        _hypothesis(strict, f"degree spread {profile.spread} exceeds {params.eta}n")
        best_effort = True
    if delta == 0:
        return _as_decomposition(n, [], directed, best_effort)

    pairs = pairs.oriented(graph.degrees())
    cycles: list[list[int]] = []
    current = graph

    if not is_regular(current):
        sides = None
        try:
            split = split_partition(graph, pairs, params.alpha, rng, params.retry_budget)
            sides = (split.members, split.complement)
        except RetryExhaustedError:
            if strict:
                raise
            logger.warning("no balanced split; extracting cycles through the maximum-degree vertices")
            best_effort = True

        cap = math.floor(2 * params.eta * n) if strict else delta // 2
        round_no = 1
        while not is_regular(current):
            if round_no > cap:
                raise IterationOverflowError(
                    f"still irregular after {cap} extractions; input is outside the regime"
                )
            before = degree_profile(current)
            top = before.max_degree_vertices
            cycle = None
            side = None
            if sides is not None:
                side = (sides[0] if round_no % 2 else sides[1]) | top
            # A two-vertex round would be a directed 2-cycle; leave those to
            # the covering search, which only returns cycles of length >= 3.
            if side is not None and len(side) >= 3:
                sub, labels = current.induced(side)
                try:
                    cycle = [labels[v] for v in engine.hamilton_cycle(sub)]
                except NotFoundError:
                    if strict:
                        raise
                    best_effort = True
            if cycle is None:
                cycle = engine.covering_cycle(current, top)
            cycles.append(cycle)
            current = _remove_cycle(current, cycle)

            after = degree_profile(current)
            if after.max_degree != delta - 2 * round_no:
                raise HypothesisViolatedError(
                    f"maximum degree is {after.max_degree} after {round_no} extractions, "
                    f"expected {delta - 2 * round_no}"
                )
            if after.min_degree < profile.min_degree - (round_no + 1):
                _hypothesis(
                    strict,
                    f"minimum degree fell to {after.min_degree} after {round_no} extractions",
                )
                best_effort = True
            round_no += 1
        logger.debug(f"{len(cycles)} extraction rounds left a {current.degrees()[0]}-regular remainder")

    if current.edge_count:
        if directed:
            cycles.extend(engine.hamilton_decompose_digraph(current))
        else:
            cycles.extend(engine.hamilton_decompose(current))

    if len(cycles) != delta // 2:
        raise HypothesisViolatedError(f"produced {len(cycles)} cycles, expected {delta // 2}")
    for cycle in cycles:
        bad = pairs.inconsistency(frozenset(cycle))
        if bad is not None:
            _hypothesis(strict, f"cycle contains {bad[0]} but not its partner {bad[1]}")
            best_effort = True
    return _as_decomposition(n, cycles, directed, best_effort)


def _as_decomposition(
    n: int, cycles: list[list[int]], directed: bool, best_effort: bool
) -> Decomposition:
    parts = []
    for cycle in cycles:
        pairs = sequence_edges(cycle, True)
        parts.append(frozenset(pairs if directed else (canonical(u, v) for u, v in pairs)))
    return Decomposition(
        kind=DecompositionKind.CYCLES,
        parts=tuple(parts),
        n=n,
        directed=directed,
        sequences=tuple(tuple(c) for c in cycles),
        best_effort=best_effort,
    )


def decompose_cycles_directed(
    digraph: Digraph,
    pairs: PairList,
    params: QuasirandomParams,
    rng: np.random.Generator,
    engine: HamiltonEngine | None = None,
    strict: bool = True,
) -> Decomposition:
    return cycle_decomposition(digraph, pairs, params, rng, engine, strict)


def decompose_cycles_undirected(
    graph: Graph,
    pairs: PairList,
    params: QuasirandomParams,
    rng: np.random.Generator,
    engine: HamiltonEngine | None = None,
    strict: bool = True,
    route: str = "direct",
    config: OrientationConfig | None = None,
) -> Decomposition:
    """Δ/2 cycles; route "direct" runs the loop on G, "oriented" on an orientation."""
    if route == "direct":
        return cycle_decomposition(graph, pairs, params, rng, engine, strict)
    if route != "oriented":
        raise UsageError(f"unknown route {route!r}, expected direct or oriented")
    oriented = eulerian_orientation_quasirandom(
        graph, params, config or OrientationConfig(), rng, strict=strict
    )
    directed = cycle_decomposition(oriented, pairs, params, rng, engine, strict)
    return Decomposition(
        kind=DecompositionKind.CYCLES,
        parts=tuple(frozenset(canonical(u, v) for u, v in part) for part in directed.parts),
        n=graph.n,
        sequences=directed.sequences,
        best_effort=directed.best_effort,
    )


def decompose_cycles_plus_matching(
    graph: Graph,
    params: QuasirandomParams,
    rng: np.random.Generator,
    engine: HamiltonEngine | None = None,
    strict: bool = True,
) -> Decomposition:
    """⌊Δ/2⌋ cycles plus a perfect matching of the odd-degree vertices."""
    engine = engine_for(params, rng, engine)
    profile = degree_profile(graph)
    target = 2 * (profile.max_degree // 2)
    odd, labels = graph.induced(profile.odd_set)
    for attempt in range(params.retry_budget):
        matching: list[Edge] = sorted(
            canonical(labels[u], labels[v]) for u, v in engine.perfect_matching_even_set(odd)
        )
        rest = graph.remove_edges(matching)
        if degree_profile(rest).max_degree != target:
            logger.debug(f"matching attempt {attempt + 1} left the wrong maximum degree")
            continue
        cycles = decompose_cycles_undirected(rest, PairList(), params, rng, engine, strict)
        return Decomposition(
            kind=DecompositionKind.CYCLES,
            parts=cycles.parts,
            n=graph.n,
            sequences=cycles.sequences,
            matching=tuple(matching),
            best_effort=cycles.best_effort,
        )
    raise HypothesisViolatedError(
        f"no matching of the odd vertices left maximum degree {target}"
    )

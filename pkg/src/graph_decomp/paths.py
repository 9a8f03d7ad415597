"""Path and linear-forest decompositions, and linear arboricity of dense regular graphs.

Both decompositions pair up the odd-degree vertices and add one auxiliary
vertex w that every cycle of an auxiliary cycle decomposition passes through;
deleting w from each cycle leaves one path. When odd(G) >= Δ(G) the pairs are
joined to w directly; otherwise the graph is oriented first and w is spliced
into arcs, with extra antiparallel arc pairs from w to anchor vertices to lift
its degree to the maximum.
"""

import logging
import math

import networkx as nx
import numpy as np

from graph_decomp.cycles import (
    decompose_cycles_directed,
    decompose_cycles_undirected,
    engine_for,
)
from graph_decomp.errors import (
    HypothesisViolatedError,
    InsertionFailedError,
    InsufficientAnchorsError,
    MatchingDeficientError,
    UsageError,
)
from graph_decomp.graph import Digraph, Edge, Graph, canonical, degree_profile
from graph_decomp.hamilton import HamiltonEngine
from graph_decomp.models import (
    Decomposition,
    DecompositionKind,
    OddPairing,
    OrientationConfig,
    PairList,
    QuasirandomParams,
)
from graph_decomp.orientation import eulerian_orientation_quasirandom

logger = logging.getLogger(__name__)

CASE_ODD = "odd"
CASE_UNIQUE_EVEN = "unique-even"
CASE_GENERAL = "general"


def path_case(graph: Graph) -> str:
    """Which construction applies: odd >= Δ, unique max with Δ even, or neither."""
    profile = degree_profile(graph)
    if profile.odd_count >= profile.max_degree:
        return CASE_ODD
    if profile.unique_max and profile.max_degree % 2 == 0:
        return CASE_UNIQUE_EVEN
    return CASE_GENERAL


def path_count_target(graph: Graph) -> int:
    profile = degree_profile(graph)
    if profile.max_degree == 0:
        return 0
    case = path_case(graph)
    if case == CASE_ODD:
        return profile.odd_count // 2
    if case == CASE_UNIQUE_EVEN:
        return profile.max_degree // 2
    return math.ceil((profile.max_degree + 1) / 2)


def forest_count_target(graph: Graph) -> int:
    profile = degree_profile(graph)
    if profile.max_degree == 0:
        return 0
    if path_case(graph) == CASE_GENERAL:
        return math.ceil((profile.max_degree + 1) / 2)
    return math.ceil(profile.max_degree / 2)


def pair_odd_vertices(graph: Graph, rng: np.random.Generator) -> OddPairing:
    profile = degree_profile(graph)
    degrees = graph.degrees()
    odd = sorted(profile.odd_set)
    order = rng.permutation(len(odd)).tolist()
    pairs = []
    for i in range(0, len(odd), 2):
        a, b = odd[order[i]], odd[order[i + 1]]
        pairs.append((b, a) if degrees[a] > degrees[b] else (a, b))

    w_pairs: list[Edge] = []
    rest = pairs
    if profile.max_degree > 0 and profile.odd_count >= profile.max_degree:
        w_count = math.ceil(profile.max_degree / 2)
        w_pairs, rest = pairs[:w_count], pairs[w_count:]
    return OddPairing(
        pairs=PairList(tuple(pairs)),
        e_star=tuple(p for p in rest if graph.has_edge(*p)),
        e_circ=tuple(p for p in rest if not graph.has_edge(*p)),
        w_pairs=tuple(w_pairs),
    )


def _strip(sequence: tuple[int, ...], w: int) -> list[int]:
    """Open a cycle at w: the vertices after w, wrapping around, without w."""
    if w not in sequence:
        raise HypothesisViolatedError(f"a cycle avoids the auxiliary vertex {w}")
    i = sequence.index(w)
    return list(sequence[i + 1 :]) + list(sequence[:i])


def _split_at(path: list[int], cuts: set[Edge]) -> list[list[int]]:
    pieces = [[path[0]]]
    for u, v in zip(path, path[1:], strict=False):
        if canonical(u, v) in cuts:
            pieces.append([v])
        else:
            pieces[-1].append(v)
    return [piece for piece in pieces if len(piece) > 1]


def _odd_case_paths(
    graph: Graph,
    pairing: OddPairing,
    params: QuasirandomParams,
    rng: np.random.Generator,
    engine: HamiltonEngine,
) -> tuple[list[list[int]], bool]:
    """Paths of G - E* + E° from cycles through w, where w meets the w_pairs."""
    w = graph.n
    aux = graph.with_vertices(1)
    aux = aux.add_edges((w, v) for pair in pairing.w_pairs for v in pair)
    aux = aux.remove_edges(pairing.e_star).add_edges(pairing.e_circ)
    cycles = decompose_cycles_undirected(
        aux, PairList(pairing.e_star), params, rng, engine, strict=False
    )
    return [_strip(seq, w) for seq in cycles.sequences], cycles.best_effort


def _oriented_case_paths(
    graph: Graph,
    pairing: OddPairing,
    params: QuasirandomParams,
    config: OrientationConfig,
    rng: np.random.Generator,
    engine: HamiltonEngine,
) -> tuple[list[list[int]], bool]:
    profile = degree_profile(graph)
    n = graph.n
    w = n
    base = graph.remove_edges(pairing.e_star).add_edges(pairing.e_circ)
    oriented = eulerian_orientation_quasirandom(base, params, config, rng, strict=False)

    arcs = set(oriented.arcs)
    for a, b in pairing.pairs:
        if (a, b) in arcs:
            arcs.remove((a, b))
            arcs.update(((a, w), (w, b)))
        elif (b, a) in arcs:
            arcs.remove((b, a))
            arcs.update(((b, w), (w, a)))
        else:
            arcs.update(((a, b), (b, w), (w, a)))

    delta, odd = profile.max_degree, profile.odd_count
    if path_case(graph) == CASE_UNIQUE_EVEN:
        k = (delta - odd) // 2
        eligible = [
            v for v in range(n)
            if v not in profile.odd_set and v not in profile.max_degree_vertices
        ]
    else:
        k = math.ceil((delta + 1 - odd) / 2)
        eligible = [v for v in range(n) if v not in profile.odd_set]
    if len(eligible) < k:
        raise InsufficientAnchorsError(
            f"need {k} anchor vertices, only {len(eligible)} are eligible"
        )
    anchors = sorted(rng.choice(eligible, size=k, replace=False).tolist()) if k else []
    logger.debug(f"anchors for the auxiliary vertex: {anchors}")
    for x in anchors:
        arcs.update(((w, x), (x, w)))

    cycles = decompose_cycles_directed(
        Digraph(n + 1, frozenset(arcs)), PairList(), params, rng, engine, strict=False
    )
    return [_strip(seq, w) for seq in cycles.sequences], cycles.best_effort


def _path_decomposition(
    kind: DecompositionKind, graph: Graph, paths: list[list[int]], best_effort: bool
) -> Decomposition:
    return Decomposition(
        kind=kind,
        parts=tuple(
            frozenset(canonical(u, v) for u, v in zip(p, p[1:], strict=False))
            for p in paths
        ),
        n=graph.n,
        sequences=tuple(tuple(p) for p in paths),
        best_effort=best_effort,
    )


def decompose_paths(
    graph: Graph,
    params: QuasirandomParams,
    rng: np.random.Generator,
    engine: HamiltonEngine | None = None,
    config: OrientationConfig | None = None,
) -> Decomposition:
    engine = engine_for(params, rng, engine)
    if graph.edge_count == 0:
        return _path_decomposition(DecompositionKind.PATHS, graph, [], False)
    pairing = pair_odd_vertices(graph, rng)
    case = path_case(graph)
    logger.info(f"path decomposition case: {case}")
    if case == CASE_ODD:
        raw, best_effort = _odd_case_paths(graph, pairing, params, rng, engine)
        cuts = set(pairing.e_circ)
        paths = [piece for path in raw for piece in _split_at(path, cuts)]
        paths.extend([a, b] for a, b in pairing.e_star)
    else:
        paths, best_effort = _oriented_case_paths(
            graph, pairing, params, config or OrientationConfig(), rng, engine
        )
    return _path_decomposition(DecompositionKind.PATHS, graph, paths, best_effort)


def decompose_linear_forests(
    graph: Graph,
    params: QuasirandomParams,
    rng: np.random.Generator,
    engine: HamiltonEngine | None = None,
    config: OrientationConfig | None = None,
) -> Decomposition:
    engine = engine_for(params, rng, engine)
    if graph.edge_count == 0:
        return _path_decomposition(DecompositionKind.LINEAR_FORESTS, graph, [], False)
    if path_case(graph) != CASE_ODD:
        paths = decompose_paths(graph, params, rng, engine, config)
        return Decomposition(
            kind=DecompositionKind.LINEAR_FORESTS,
            parts=paths.parts,
            n=graph.n,
            best_effort=paths.best_effort,
        )

    pairing = pair_odd_vertices(graph, rng)
    raw, best_effort = _odd_case_paths(graph, pairing, params, rng, engine)
    cuts = set(pairing.e_circ)
    forests: list[set[Edge]] = []
    for path in raw:
        forests.append(
            {
                canonical(u, v)
                for u, v in zip(path, path[1:], strict=False)
                if canonical(u, v) not in cuts
            }
        )
    for a, b in pairing.e_star:
        for forest in forests:
            touched = {v for e in forest for v in e}
            if a not in touched and b not in touched:
                forest.add(canonical(a, b))
                break
        else:
            raise InsertionFailedError(f"no forest avoids both {a} and {b}")
    return Decomposition(
        kind=DecompositionKind.LINEAR_FORESTS,
        parts=tuple(frozenset(f) for f in forests),
        n=graph.n,
        best_effort=best_effort,
    )


def complement_matching_cover(graph: Graph, t: int) -> list[Edge]:
    """A matching of ceil(t/2) complement edges, covering at least t vertices."""
    if t <= 0:
        return []
    need = math.ceil(t / 2)
    matching = nx.max_weight_matching(graph.complement().to_networkx(), maxcardinality=True)
    if len(matching) < need:
        raise MatchingDeficientError(
            f"complement matching has {len(matching)} edges, need {need}"
        )
    return sorted(canonical(u, v) for u, v in matching)[:need]


def _strip_auxiliary(
    forests: list[frozenset[Edge]], n: int, removed: set[Edge]
) -> list[frozenset[Edge]]:
    return [
        frozenset(e for e in forest if e[1] < n and e not in removed)
        for forest in forests
    ]


def _with_hub(graph: Graph, matching: list[Edge]) -> Graph:
    """G plus a complement matching plus a new vertex joined to the uncovered."""
    covered = {v for e in matching for v in e}
    w = graph.n
    return (
        graph.add_edges(matching)
        .with_vertices(1)
        .add_edges((w, v) for v in range(graph.n) if v not in covered)
    )


def _odd_regular_forests(graph: Graph, d: int, engine: HamiltonEngine) -> list[frozenset[Edge]]:
    n = graph.n
    matching = complement_matching_cover(graph, n - d - 1)
    aux = _with_hub(graph, matching)
    cycles = engine.hamilton_decompose(aux)
    forests = [
        frozenset(canonical(u, v) for u, v in zip(c, c[1:] + c[:1], strict=True))
        for c in cycles
    ]
    return _strip_auxiliary(forests, n, set(matching))


def arboricity_regular_large(
    graph: Graph,
    rng: np.random.Generator,
    engine: HamiltonEngine | None = None,
) -> Decomposition:
    """⌈(d+1)/2⌉ linear forests of a d-regular graph with d >= ⌊(n-1)/2⌋."""
    engine = engine if engine is not None else HamiltonEngine(rng)
    n = graph.n
    degrees = set(graph.degrees())
    if len(degrees) > 1:
        raise UsageError("arboricity construction needs a regular graph")
    d = degrees.pop() if degrees else 0
    if d < (n - 1) // 2:
        raise UsageError(f"degree {d} is below floor((n-1)/2) = {(n - 1) // 2}")

    if d % 2 == 1:
        forests = _odd_regular_forests(graph, d, engine)
    elif n % 2 == 1:
        # One matching and a hub make the graph (d+1)-regular of even order.
        matching = complement_matching_cover(graph, n - d - 1)
        lifted = _with_hub(graph, matching)
        forests = _strip_auxiliary(
            _odd_regular_forests(lifted, d + 1, engine), n, set(matching)
        )
    else:
        t = n - d - 2
        first = complement_matching_cover(graph, t)
        second = complement_matching_cover(graph.add_edges(first), t)
        w, w2 = n, n + 1
        first_cover = {v for e in first for v in e}
        second_cover = {v for e in second for v in e}
        aux = graph.add_edges(first + second).with_vertices(2)
        aux = aux.add_edges((w, v) for v in range(n) if v not in first_cover)
        aux = aux.add_edges((w2, v) for v in range(n) if v not in second_cover)
        cycles = engine.hamilton_decompose(aux)
        forests = _strip_auxiliary(
            [
                frozenset(canonical(u, v) for u, v in zip(c, c[1:] + c[:1], strict=True))
                for c in cycles
            ],
            n,
            set(first) | set(second),
        )

    expected = math.ceil((d + 1) / 2)
    if len(forests) != expected:
        raise HypothesisViolatedError(f"built {len(forests)} forests, expected {expected}")
    return Decomposition(
        kind=DecompositionKind.LINEAR_FORESTS,
        parts=tuple(forests),
        n=n,
    )


def brute_path_number(graph: Graph) -> int:
    """Minimum number of paths decomposing E(G), by exhaustive search."""
    edges = graph.sorted_edges()
    if len(edges) > 12:
        raise UsageError(f"exact path number needs at most 12 edges, got {len(edges)}")
    if not edges:
        return 0
    lower = max(1, degree_profile(graph).odd_count // 2)
    for k in range(lower, len(edges) + 1):
        if _paths_fit(edges, k):
            return k
    return len(edges)


def _paths_fit(edges: list[Edge], k: int) -> bool:
    parts: list[list[Edge]] = []
    degree: list[dict[int, int]] = []

    def linked(part: int, u: int, v: int) -> bool:
        # In a linear forest u and v share a component iff walking from u reaches v.
        nbrs: dict[int, list[int]] = {}
        for a, b in parts[part]:
            nbrs.setdefault(a, []).append(b)
            nbrs.setdefault(b, []).append(a)
        seen = {u}
        stack = [u]
        while stack:
            x = stack.pop()
            if x == v:
                return True
            for y in nbrs.get(x, []):
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return False

    def place(i: int) -> bool:
        if i == len(edges):
            return all(
                len(part) == len({v for e in part for v in e}) - 1 for part in parts
            )
        u, v = edges[i]
        for j in range(min(len(parts) + 1, k)):
            if j == len(parts):
                parts.append([])
                degree.append({})
            deg = degree[j]
            if deg.get(u, 0) < 2 and deg.get(v, 0) < 2 and not linked(j, u, v):
                parts[j].append((u, v))
                deg[u] = deg.get(u, 0) + 1
                deg[v] = deg.get(v, 0) + 1
                if place(i + 1):
                    return True
                parts[j].pop()
                deg[u] -= 1
                deg[v] -= 1
            if not parts[j]:
                parts.pop()
                degree.pop()
        return False

    return place(0)

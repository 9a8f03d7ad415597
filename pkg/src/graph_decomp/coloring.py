"""Δ-edge-colouring of even-order graphs, with a Vizing fallback.

The pipeline realizes the deficiency sequence as a multigraph A, splits A
into small matchings, and for each matching extracts a spanning linear forest
whose leaves are exactly the matched vertices. What remains is regular; an
optional perfect matching and a Hamilton decomposition finish it. Every
forest and cycle takes two colours and the matching one, for Δ in total.
"""

import logging
import math
from itertools import combinations

import numpy as np

from graph_decomp.cycles import engine_for
from graph_decomp.errors import (
    HypothesisViolatedError,
    InfeasibleError,
    NotFoundError,
    OddOrderError,
    RegularityMismatchError,
    RetryExhaustedError,
    UsageError,
)
from graph_decomp.graph import Edge, Graph, Multigraph, canonical, degree_profile
from graph_decomp.hamilton import HamiltonEngine
from graph_decomp.models import (
    ColorClass,
    DeficiencyVector,
    EdgeColoring,
    PairList,
    QuasirandomParams,
)
from graph_decomp.randgen import lower_regularity_check

logger = logging.getLogger(__name__)

EXACT_EDGE_LIMIT = 25
OVERFULL_BRUTE_LIMIT = 14
TINY_ORDER = 10


def deficiencies(graph: Graph) -> DeficiencyVector:
    degrees = graph.degrees()
    top = max(degrees, default=0)
    return DeficiencyVector(tuple(top - d for d in degrees))


def overfull_criterion(graph: Graph) -> ColorClass:
    """Class 2 iff the largest deficiency exceeds the sum of all the others."""
    if graph.n % 2:
        raise OddOrderError(f"the deficiency criterion needs even order, got n={graph.n}")
    ordered = deficiencies(graph).sorted_desc
    if ordered and ordered[0] > sum(ordered[1:]):
        return ColorClass.CLASS_2
    return ColorClass.CLASS_1_CANDIDATE


def overfull_brute(graph: Graph) -> frozenset[int] | None:
    """Vertex set of an overfull induced subgraph on an odd number of vertices."""
    n = graph.n
    if n > OVERFULL_BRUTE_LIMIT:
        raise UsageError(f"overfull search needs n <= {OVERFULL_BRUTE_LIMIT}, got {n}")
    delta = degree_profile(graph).max_degree
    masks = [sum(1 << u for u in graph.neighbors(v)) for v in range(n)]
    for size in range(3, n + 1, 2):
        limit = delta * (size // 2)
        for members in combinations(range(n), size):
            s_mask = sum(1 << v for v in members)
            edges = sum((masks[v] & s_mask).bit_count() for v in members) // 2
            if edges > limit:
                return frozenset(members)
    return None


def hakimi_realize(sequence: tuple[int, ...] | list[int]) -> Multigraph:
    """Loopless multigraph on positions 0..n-1 with the given degrees.

    Repeatedly joins the largest remaining degree to the next largest, ties
    broken by position.
    """
    seq = list(sequence)
    if any(d < 0 for d in seq):
        raise UsageError("degrees must be non-negative")
    if any(a < b for a, b in zip(seq, seq[1:], strict=False)):
        raise UsageError("degree sequence must be in descending order")
    if sum(seq) % 2:
        raise InfeasibleError(f"degree sum {sum(seq)} is odd", condition="parity")
    if seq and seq[0] > sum(seq[1:]):
        raise InfeasibleError(
            f"largest degree {seq[0]} exceeds the sum {sum(seq[1:])} of the rest",
            condition="dominance",
        )

    remaining = dict(enumerate(seq))
    counts: dict[Edge, int] = {}
    while True:
        order = sorted((v for v, d in remaining.items() if d > 0), key=lambda v: (-remaining[v], v))
        if not order:
            break
        u, v = order[0], order[1]
        counts[canonical(u, v)] = counts.get(canonical(u, v), 0) + 1
        remaining[u] -= 1
        remaining[v] -= 1
    return Multigraph.from_counts(len(seq), counts)


def matching_partition_multigraph(multigraph: Multigraph, cap: int) -> list[list[Edge]]:
    """Greedy proper colouring of the edge copies, each class cut into chunks of <= cap."""
    if cap < 1:
        raise UsageError(f"matching cap must be at least 1, got {cap}")
    used: list[set[int]] = [set() for _ in range(multigraph.n)]
    classes: dict[int, list[Edge]] = {}
    for u, v in multigraph.edge_copies():
        c = 0
        while c in used[u] or c in used[v]:
            c += 1
        used[u].add(c)
        used[v].add(c)
        classes.setdefault(c, []).append((u, v))
    matchings = []
    for c in sorted(classes):
        edges = classes[c]
        matchings.extend(edges[i : i + cap] for i in range(0, len(edges), cap))
    return matchings


def _short_path(
    graph: Graph, a: int, b: int, blocked: set[int], rng: np.random.Generator
) -> list[int] | None:
    if graph.has_edge(a, b):
        return [a, b]
    free_a = sorted(graph.neighbors(a) - blocked)
    free_b = graph.neighbors(b) - blocked
    common = [c for c in free_a if c in free_b]
    if common:
        return [a, common[int(rng.integers(len(common)))], b]
    bridges = [
        (c, d)
        for c in free_a
        for d in sorted(graph.neighbors(c) & free_b)
        if d != c
    ]
    if bridges:
        c, d = bridges[int(rng.integers(len(bridges)))]
        return [a, c, d, b]
    return None


def spanning_linkage(
    graph: Graph,
    pairs: PairList,
    rng: np.random.Generator,
    engine: HamiltonEngine | None = None,
    attempts: int = 10,
) -> list[list[int]]:
    """Vertex-disjoint paths, one per pair, together covering every vertex.

    All but the last path have length at most three; the last is a Hamilton
    path of whatever is left.
    """
    if not len(pairs):
        raise UsageError("spanning_linkage needs at least one pair")
    engine = engine if engine is not None else HamiltonEngine(rng)
    pair_list = list(pairs)
    endpoints = pairs.vertices
    last_error: NotFoundError | None = None
    for attempt in range(attempts):
        paths: list[list[int]] = []
        used: set[int] = set()
        for a, b in pair_list[:-1]:
            blocked = used | (endpoints - {a, b})
            path = _short_path(graph, a, b, blocked, rng)
            if path is None:
                break
            paths.append(path)
            used.update(path)
        else:
            a, b = pair_list[-1]
            rest = [v for v in graph.vertices if v not in used]
            sub, labels = graph.induced(rest)
            index = {v: i for i, v in enumerate(labels)}
            try:
                tail = engine.hamilton_path(sub, index[a], index[b])
            except NotFoundError as e:
                last_error = e
                logger.debug(f"linkage attempt {attempt + 1}: {e}")
                continue
            paths.append([labels[v] for v in tail])
            return paths
        logger.debug(f"linkage attempt {attempt + 1}: no short path for a pair")
    raise NotFoundError(
        f"no spanning linkage for {len(pair_list)} pairs in {attempts} attempts"
        + (f" ({last_error})" if last_error else ""),
        reason="no_linkage",
    )


class _Palette:
    def __init__(self):
        self.colors: dict[Edge, int] = {}
        self.next = 1

    def alternate(self, sequences: list[list[int]], closed: bool) -> None:
        """Colour vertex-disjoint paths or even cycles with two fresh colours."""
        for sequence in sequences:
            steps = list(zip(sequence, sequence[1:], strict=False))
            if closed:
                steps.append((sequence[-1], sequence[0]))
            for i, (u, v) in enumerate(steps):
                self.colors[canonical(u, v)] = self.next + i % 2
        self.next += 2

    def single(self, edges: list[Edge]) -> None:
        for e in edges:
            self.colors[canonical(*e)] = self.next
        self.next += 1


def _pipeline(
    graph: Graph, params: QuasirandomParams, rng: np.random.Generator, engine: HamiltonEngine
) -> dict[Edge, int]:
    n = graph.n
    delta = degree_profile(graph).max_degree
    defs = deficiencies(graph)
    multigraph = hakimi_realize(defs.sorted_desc).relabel(defs.order, n)
    cap = max(1, math.floor(params.alpha * n / 6))
    matchings = matching_partition_multigraph(multigraph, cap)
    logger.debug(f"{multigraph.edge_count} deficiency edges in {len(matchings)} matchings of <= {cap}")

    palette = _Palette()
    current = graph
    for matching in matchings:
        paths = spanning_linkage(current, PairList(tuple(matching)), rng, engine)
        palette.alternate(paths, closed=False)
        current = current.remove_edges(
            canonical(u, v) for path in paths for u, v in zip(path, path[1:], strict=False)
        )

    r = delta - 2 * len(matchings)
    off = [v for v, d in enumerate(current.degrees()) if d != r]
    if off:
        raise RegularityMismatchError(
            f"after {len(matchings)} forests vertex {off[0]} has degree "
            f"{current.degree(off[0])}, expected {r}"
        )
    if r % 2:
        matching = engine.perfect_matching_even_set(current)
        palette.single(matching)
        current = current.remove_edges(matching)
    for cycle in engine.hamilton_decompose(current):
        palette.alternate([cycle], closed=True)
    return palette.colors


def _check_proper(graph: Graph, colors: dict[Edge, int], limit: int) -> None:
    if set(colors) != graph.edges:
        raise HypothesisViolatedError("colouring does not cover exactly the edges")
    seen: list[set[int]] = [set() for _ in range(graph.n)]
    for (u, v), c in colors.items():
        if c < 1 or c > limit:
            raise HypothesisViolatedError(f"edge {u}-{v} has colour {c} outside 1..{limit}")
        if c in seen[u] or c in seen[v]:
            raise HypothesisViolatedError(f"colour {c} repeats at edge {u}-{v}")
        seen[u].add(c)
        seen[v].add(c)


def _trusted(graph: Graph, params: QuasirandomParams) -> bool:
    profile = degree_profile(graph)
    n = graph.n
    if profile.spread > params.eta * n or profile.min_degree < params.alpha * n:
        return False
    regular, _ = lower_regularity_check(graph, params.p, params.eps, mode="sampled", sample_count=500)
    return regular


def chromatic_index_color(
    graph: Graph,
    params: QuasirandomParams,
    rng: np.random.Generator,
    engine: HamiltonEngine | None = None,
    fallback: bool = True,
) -> EdgeColoring:
    """Δ colours when the deficiency criterion allows it, Δ+1 otherwise.

    With fallback disabled, search failures inside the pipeline propagate
    instead of falling through to the exact search and Vizing's algorithm.
    """
    verdict = overfull_criterion(graph)
    trusted = _trusted(graph, params)
    if not trusted:
        logger.info("input fails the regime diagnostics; the class decision is untrusted")
    n = graph.n
    delta = degree_profile(graph).max_degree
    if delta == 0:
        return EdgeColoring({}, n, method="pipeline", trusted=trusted)

    witness = overfull_brute(graph) if n <= TINY_ORDER else None
    if witness is not None or verdict is ColorClass.CLASS_2:
        reason = f"overfull set {sorted(witness)}" if witness else "deficiency criterion"
        logger.info(f"class 2 by {reason}")
        coloring = vizing_color(graph)
        return EdgeColoring(coloring.colors, n, method="vizing", trusted=trusted)

    engine = engine_for(params, rng, engine)
    try:
        colors = _pipeline(graph, params, rng, engine)
        _check_proper(graph, colors, delta)
        top = min(degree_profile(graph).max_degree_vertices)
        at_top = {c for e, c in colors.items() if top in e}
        if len(at_top) != delta:
            raise HypothesisViolatedError(f"vertex {top} sees {len(at_top)} colours, expected {delta}")
        return EdgeColoring(colors, n, method="pipeline", trusted=trusted)
    except (NotFoundError, RetryExhaustedError) as e:
        if not fallback:
            raise
        logger.warning(f"colouring pipeline failed: {e}")

    if n <= TINY_ORDER or graph.edge_count <= EXACT_EDGE_LIMIT:
        colors = brute_edge_coloring(graph, delta)
        if colors is not None:
            return EdgeColoring(colors, n, method="exact", trusted=trusted)
    logger.warning(f"falling back to Vizing colouring with up to {delta + 1} colours")
    coloring = vizing_color(graph)
    return EdgeColoring(coloring.colors, n, method="vizing", trusted=trusted)


def vizing_color(graph: Graph) -> EdgeColoring:
    """Proper colouring with at most Δ+1 colours (Misra–Gries fan rotation)."""
    n = graph.n
    palette = range(1, degree_profile(graph).max_degree + 2)
    at: list[dict[int, int]] = [{} for _ in range(n)]
    colors: dict[Edge, int] = {}

    def paint(x: int, y: int, c: int) -> None:
        colors[canonical(x, y)] = c
        at[x][c] = y
        at[y][c] = x

    def erase(x: int, y: int) -> int:
        c = colors.pop(canonical(x, y))
        del at[x][c]
        del at[y][c]
        return c

    def free(x: int) -> int:
        return next(c for c in palette if c not in at[x])

    for u, v in graph.sorted_edges():
        shared = [c for c in palette if c not in at[u] and c not in at[v]]
        if shared:
            paint(u, v, shared[0])
            continue

        fan = [v]
        while True:
            last = fan[-1]
            nxt = next(
                (at[u][c] for c in palette if c not in at[last] and c in at[u] and at[u][c] not in fan),
                None,
            )
            if nxt is None:
                break
            fan.append(nxt)

        c, d = free(u), free(fan[-1])
        # Swap c and d along the alternating path that starts at u with d.
        path = []
        x, col = u, d
        while col in at[x]:
            y = at[x][col]
            path.append((x, y, col))
            x, col = y, (c if col == d else d)
        for x, y, _ in path:
            erase(x, y)
        for x, y, col in path:
            paint(x, y, c if col == d else d)

        for i, w in enumerate(fan):
            if d in at[w]:
                continue
            prefix_ok = all(
                canonical(u, fan[j + 1]) in colors
                and colors[canonical(u, fan[j + 1])] not in at[fan[j]]
                for j in range(i)
            )
            if prefix_ok:
                shifted = [colors[canonical(u, fan[j + 1])] for j in range(i)]
                for j in range(1, i + 1):
                    erase(u, fan[j])
                for j in range(i):
                    paint(u, fan[j], shifted[j])
                paint(u, w, d)
                break
        else:
            raise HypothesisViolatedError(f"no rotatable fan at {u}-{v}")

    return EdgeColoring(colors, n, method="vizing")


def brute_edge_coloring(graph: Graph, k: int) -> dict[Edge, int] | None:
    """A proper k-edge-colouring by backtracking, or None if none exists.

    An edge may open at most one new colour beyond those already used, which
    removes colour permutations from the search.
    """
    edges = _search_order(graph)
    if not edges:
        return {}
    at: list[set[int]] = [set() for _ in range(graph.n)]
    chosen: list[int] = []

    def place(i: int, opened: int) -> bool:
        if i == len(edges):
            return True
        u, v = edges[i]
        for c in range(1, min(opened + 1, k) + 1):
            if c in at[u] or c in at[v]:
                continue
            at[u].add(c)
            at[v].add(c)
            chosen.append(c)
            if place(i + 1, max(opened, c)):
                return True
            chosen.pop()
            at[u].discard(c)
            at[v].discard(c)
        return False

    if not place(0, 0):
        return None
    return dict(zip(edges, chosen, strict=True))


def _search_order(graph: Graph) -> list[Edge]:
    """Edges grouped around a maximum-degree vertex first, then breadth-first."""
    if not graph.edges:
        return []
    degrees = graph.degrees()
    start = max(graph.vertices, key=lambda v: (degrees[v], -v))
    order: list[Edge] = []
    seen: set[Edge] = set()
    visited = [start]
    queue = [start]
    while queue or len(seen) < graph.edge_count:
        if not queue:
            start = next(u for u, v in graph.sorted_edges() if canonical(u, v) not in seen)
            queue.append(start)
            visited.append(start)
        x = queue.pop(0)
        for y in sorted(graph.neighbors(x)):
            e = canonical(x, y)
            if e not in seen:
                seen.add(e)
                order.append(e)
            if y not in visited:
                visited.append(y)
                queue.append(y)
    return order


def brute_chromatic_index(graph: Graph) -> int:
    if graph.n > TINY_ORDER and graph.edge_count > EXACT_EDGE_LIMIT:
        raise UsageError(
            f"exact chromatic index needs n <= {TINY_ORDER} or at most "
            f"{EXACT_EDGE_LIMIT} edges, got n={graph.n} with {graph.edge_count}"
        )
    delta = degree_profile(graph).max_degree
    if delta == 0:
        return 0
    return delta if brute_edge_coloring(graph, delta) is not None else delta + 1

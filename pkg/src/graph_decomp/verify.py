"""Independent checks of decompositions against their host graph.

Nothing here calls the constructors: structure is re-derived from the edge
sets alone and the expected counts are recomputed from the host's degrees.
"""

import logging
import math
from collections import Counter

from graph_decomp.graph import AnyGraph, Digraph, Edge
from graph_decomp.models import (
    Decomposition,
    DecompositionKind,
    VerificationReport,
    Violation,
)

logger = logging.getLogger(__name__)


def _fmt(edge: Edge, directed: bool) -> str:
    return f"{edge[0]}->{edge[1]}" if directed else f"{edge[0]}-{edge[1]}"


def _host_items(graph: AnyGraph) -> frozenset[Edge]:
    return graph.arcs if isinstance(graph, Digraph) else graph.edges


class _UnionFind:
    def __init__(self):
        self.parent: dict[int, int] = {}

    def find(self, x: int) -> int:
        self.parent.setdefault(x, x)
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        """Join the classes of a and b; False if they were already joined."""
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[ra] = rb
        return True


def _components(edges: frozenset[Edge]) -> int:
    uf = _UnionFind()
    for u, v in edges:
        uf.union(u, v)
    return len({uf.find(v) for e in edges for v in e})


def _cycle_problem(part: frozenset[Edge], directed: bool) -> str | None:
    if directed:
        if len(part) < 2:
            return f"{len(part)} arcs cannot close a cycle"
        outs = Counter(u for u, _ in part)
        ins = Counter(v for _, v in part)
        bad = sorted(v for v in set(outs) | set(ins) if outs[v] != 1 or ins[v] != 1)
        if bad:
            return f"vertex {bad[0]} does not have one arc in and one out"
    else:
        if len(part) < 3:
            return f"{len(part)} edges cannot close a cycle"
        degree = Counter(v for e in part for v in e)
        bad = sorted(v for v, d in degree.items() if d != 2)
        if bad:
            return f"vertex {bad[0]} has degree {degree[bad[0]]}"
    if _components(part) != 1:
        return "part is not connected"
    return None


def _forest_problem(part: frozenset[Edge]) -> str | None:
    degree = Counter(v for e in part for v in e)
    heavy = sorted(v for v, d in degree.items() if d > 2)
    if heavy:
        return f"vertex {heavy[0]} has degree {degree[heavy[0]]}"
    uf = _UnionFind()
    for u, v in sorted(part):
        if not uf.union(u, v):
            return f"edge {u}-{v} closes a cycle"
    return None


def _path_problem(part: frozenset[Edge]) -> str | None:
    if not part:
        return "empty path"
    problem = _forest_problem(part)
    if problem:
        return problem
    if _components(part) != 1:
        return "part is not connected"
    return None


def _matching_problem(edges: frozenset[Edge] | tuple[Edge, ...]) -> str | None:
    seen: set[int] = set()
    for u, v in sorted(edges):
        if u in seen or v in seen:
            return f"edge {u}-{v} shares a vertex with another edge"
        seen.update((u, v))
    return None


def expected_count(graph: AnyGraph, kind: DecompositionKind) -> int:
    """The count the constructions promise, recomputed from the host's degrees."""
    degrees = graph.degrees()
    delta = max(degrees, default=0)
    odd = sum(1 for d in degrees if d % 2)
    unique_max = degrees.count(delta) == 1
    if delta == 0:
        return 0
    if kind is DecompositionKind.CYCLES:
        return delta // 2
    if kind is DecompositionKind.PATHS:
        if odd >= delta:
            return odd // 2
        if unique_max and delta % 2 == 0:
            return delta // 2
        return math.ceil((delta + 1) / 2)
    if kind is DecompositionKind.LINEAR_FORESTS:
        if odd >= delta or (unique_max and delta % 2 == 0):
            return math.ceil(delta / 2)
        return math.ceil((delta + 1) / 2)
    # Colouring: Δ unless the largest deficiency outweighs all the others.
    if graph.n % 2:
        return delta + 1
    deficits = sorted((delta - d for d in degrees), reverse=True)
    return delta + 1 if deficits[0] > sum(deficits[1:]) else delta


def verify(graph: AnyGraph, decomposition: Decomposition) -> VerificationReport:
    """Check exact edge partition, per-part structure and the promised count.

    Best-effort decompositions still need a valid partition and valid parts;
    only a count mismatch is tolerated for them.
    """
    directed = isinstance(graph, Digraph)
    kind = decomposition.kind
    violations: list[Violation] = []

    if decomposition.directed != directed:
        violations.append(
            Violation("host-type", f"decomposition directed={decomposition.directed}, host directed={directed}")
        )

    host = _host_items(graph)
    covered = Counter(decomposition.all_edges())
    for e in sorted(covered):
        if e not in host:
            violations.append(Violation("edge-partition", f"edge {_fmt(e, directed)} not in graph"))
        elif covered[e] > 1:
            violations.append(
                Violation("edge-partition", f"edge {_fmt(e, directed)} covered {covered[e]} times")
            )
    for e in sorted(host - set(covered)):
        violations.append(Violation("edge-partition", f"edge {_fmt(e, directed)} uncovered"))

    for i, part in enumerate(decomposition.parts):
        if kind is DecompositionKind.CYCLES:
            problem = _cycle_problem(part, directed)
        elif kind is DecompositionKind.PATHS:
            problem = _path_problem(part)
        elif kind is DecompositionKind.LINEAR_FORESTS:
            problem = _forest_problem(part)
        else:
            problem = _matching_problem(part)
        if problem:
            violations.append(Violation(f"{kind.value}-structure", f"part {i}: {problem}"))

    expected = expected_count(graph, kind)
    if decomposition.matching:
        problem = _matching_problem(decomposition.matching)
        if problem:
            violations.append(Violation("matching", problem))
        odd = {v for v, d in enumerate(graph.degrees()) if d % 2}
        matched = {v for e in decomposition.matching for v in e}
        if matched != odd:
            stray = sorted(matched ^ odd)
            violations.append(
                Violation("matching", f"vertex {stray[0]} breaks the odd-vertex cover")
            )
    elif kind is DecompositionKind.CYCLES and not directed and any(d % 2 for d in graph.degrees()):
        violations.append(Violation("matching", "odd-degree vertices but no matching"))

    actual = decomposition.count
    count_ok = actual == expected
    if kind is DecompositionKind.EDGE_COLORING:
        # A proper colouring never uses fewer than Δ colours.
        count_ok = actual <= expected
        delta = max(graph.degrees(), default=0)
        if actual > delta + 1:
            violations.append(Violation("count", f"{actual} colours exceed Δ+1 = {delta + 1}"))
    if not count_ok and not decomposition.best_effort:
        violations.append(Violation("count", f"{actual} parts, expected {expected}"))
    elif not count_ok:
        logger.info(f"best-effort {kind.value} decomposition has {actual} parts, bound {expected}")

    ok = not violations
    return VerificationReport(
        ok=ok,
        kind=kind,
        expected_count=expected,
        actual_count=actual,
        violations=tuple(violations),
        best_effort=decomposition.best_effort,
    )

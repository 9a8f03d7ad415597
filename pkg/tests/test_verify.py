"""Tests for the independent decomposition checker."""

import pytest
from conftest import bowtie, two_triangles

from graph_decomp.graph import Digraph, Graph, canonical
from graph_decomp.models import Decomposition, DecompositionKind
from graph_decomp.verify import expected_count, verify


def undirected_parts(*sequences, closed=False):
    parts = []
    for seq in sequences:
        pairs = list(zip(seq, seq[1:], strict=False))
        if closed:
            pairs.append((seq[-1], seq[0]))
        parts.append(frozenset(canonical(u, v) for u, v in pairs))
    return tuple(parts)


def paths_of(n, *sequences, best_effort=False):
    return Decomposition(
        kind=DecompositionKind.PATHS,
        parts=undirected_parts(*sequences),
        n=n,
        sequences=tuple(tuple(s) for s in sequences),
        best_effort=best_effort,
    )


def test_c6_single_cycle():
    """Test C6 is one cycle."""
    graph = Graph.cycle(6)
    decomposition = Decomposition(
        kind=DecompositionKind.CYCLES,
        parts=undirected_parts([0, 1, 2, 3, 4, 5], closed=True),
        n=6,
    )
    report = verify(graph, decomposition)
    assert report.ok
    assert report.expected_count == 1
    assert report.actual_count == 1


def test_k4_two_paths():
    """Test K4 as the paths 0-1-2-3 and 2-0-3-1."""
    report = verify(Graph.complete(4), paths_of(4, [0, 1, 2, 3], [2, 0, 3, 1]))
    assert report.ok
    assert report.expected_count == 2


def test_missing_edge_is_reported():
    """Test an uncovered edge names its endpoints."""
    report = verify(Graph.complete(4), paths_of(4, [0, 1, 2, 3], [2, 0, 3]))
    assert not report.ok
    assert ("edge-partition", "edge 1-3 uncovered") in [
        (v.invariant, v.witness) for v in report.violations
    ]


def test_double_cover_and_foreign_edge():
    """Test repeated and foreign edges are reported."""
    graph = Graph.path(3)
    decomposition = Decomposition(
        kind=DecompositionKind.LINEAR_FORESTS,
        parts=(frozenset({(0, 1), (1, 2)}), frozenset({(0, 1), (0, 2)})),
        n=3,
    )
    witnesses = [v.witness for v in verify(graph, decomposition).violations]
    assert "edge 0-1 covered 2 times" in witnesses
    assert "edge 0-2 not in graph" in witnesses


def test_cycle_is_not_a_path():
    """Test a closed part fails the path check."""
    graph = Graph.cycle(3)
    decomposition = paths_of(3, [0, 1, 2, 0])
    report = verify(graph, decomposition)
    assert not report.ok
    assert report.violations[0].invariant == "paths-structure"


def test_forest_with_cycle():
    """Test a forest part containing a cycle is rejected."""
    graph = Graph.cycle(4)
    decomposition = Decomposition(
        kind=DecompositionKind.LINEAR_FORESTS,
        parts=(graph.edges,),
        n=4,
    )
    report = verify(graph, decomposition)
    assert any("closes a cycle" in v.witness for v in report.violations)


def test_disconnected_cycle_part():
    """Test two triangles in one part are not a cycle."""
    graph = two_triangles()
    decomposition = Decomposition(kind=DecompositionKind.CYCLES, parts=(graph.edges,), n=6)
    report = verify(graph, decomposition)
    assert any(v.witness.endswith("not connected") for v in report.violations)


def test_count_mismatch_fails_unless_best_effort():
    """Test a valid but oversized decomposition fails only without best effort."""
    graph = Graph.path(4)
    strict = paths_of(4, [0, 1], [1, 2, 3])
    assert not verify(graph, strict).ok
    relaxed = paths_of(4, [0, 1], [1, 2, 3], best_effort=True)
    report = verify(graph, relaxed)
    assert report.ok
    assert report.best_effort


def test_cycles_with_matching():
    """Test K4 as a 4-cycle plus the two diagonals."""
    graph = Graph.complete(4)
    decomposition = Decomposition(
        kind=DecompositionKind.CYCLES,
        parts=undirected_parts([0, 1, 2, 3], closed=True),
        n=4,
        matching=((0, 2), (1, 3)),
    )
    assert verify(graph, decomposition).ok


def test_cycles_missing_matching():
    """Test odd degrees without a matching are reported."""
    graph = Graph.complete(4)
    decomposition = Decomposition(
        kind=DecompositionKind.CYCLES,
        parts=undirected_parts([0, 1, 2, 3], closed=True) + undirected_parts([0, 2], [1, 3]),
        n=4,
    )
    invariants = {v.invariant for v in verify(graph, decomposition).violations}
    assert "matching" in invariants


def test_matching_must_cover_odd_vertices():
    """Test a leftover set that is not a matching of the odd vertices."""
    graph = Graph.from_edges(4, [(0, 1), (1, 2), (0, 2), (1, 3), (2, 3)])
    decomposition = Decomposition(
        kind=DecompositionKind.CYCLES,
        parts=undirected_parts([0, 1, 2], closed=True),
        n=4,
        matching=((1, 3), (2, 3)),
    )
    report = verify(graph, decomposition)
    assert not report.ok
    witnesses = [v.witness for v in report.violations if v.invariant == "matching"]
    assert "edge 2-3 shares a vertex with another edge" in witnesses
    assert "vertex 3 breaks the odd-vertex cover" in witnesses


def test_directed_cycles():
    """Test a directed triangle and its reverse cover the complete digraph."""
    digraph = Digraph.complete(3)
    decomposition = Decomposition(
        kind=DecompositionKind.CYCLES,
        parts=(frozenset({(0, 1), (1, 2), (2, 0)}), frozenset({(1, 0), (2, 1), (0, 2)})),
        n=3,
        directed=True,
    )
    assert verify(digraph, decomposition).ok


def test_host_type_mismatch():
    """Test an undirected decomposition of a digraph is flagged."""
    digraph = Digraph.cycle(3)
    decomposition = Decomposition(
        kind=DecompositionKind.CYCLES, parts=(frozenset({(0, 1), (1, 2), (2, 0)}),), n=3
    )
    assert verify(digraph, decomposition).violations[0].invariant == "host-type"


def test_coloring_needs_matchings():
    """Test a colour class with two edges at a vertex is not a matching."""
    graph = Graph.path(3)
    decomposition = Decomposition(
        kind=DecompositionKind.EDGE_COLORING, parts=(graph.edges,), n=3
    )
    report = verify(graph, decomposition)
    assert not report.ok
    assert "shares a vertex" in report.violations[0].witness


def test_coloring_beyond_delta_plus_one():
    """Test more than Δ+1 colours always fails, even as best effort."""
    graph = Graph.path(4)
    decomposition = Decomposition(
        kind=DecompositionKind.EDGE_COLORING,
        parts=tuple(frozenset({e}) for e in graph.sorted_edges()) + (frozenset(),),
        n=4,
        best_effort=True,
    )
    report = verify(graph, decomposition)
    assert any(v.invariant == "count" for v in report.violations)


@pytest.mark.parametrize(
    "graph, kind, expected",
    [
        (Graph.complete(5), DecompositionKind.CYCLES, 2),
        (Graph.complete(4), DecompositionKind.PATHS, 2),
        (Graph.cycle(5), DecompositionKind.PATHS, 2),
        (bowtie(), DecompositionKind.PATHS, 2),
        (Graph.complete(5), DecompositionKind.LINEAR_FORESTS, 3),
        (Graph.complete(4), DecompositionKind.EDGE_COLORING, 3),
        (Graph.complete(5), DecompositionKind.EDGE_COLORING, 5),
        (Graph.from_edges(4, [(0, 1), (1, 2), (0, 2)]), DecompositionKind.EDGE_COLORING, 3),
        (Graph.empty(3), DecompositionKind.PATHS, 0),
    ],
)
def test_expected_count(graph, kind, expected):
    """Test the recomputed counts."""
    assert expected_count(graph, kind) == expected

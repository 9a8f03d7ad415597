"""Tests for regular factorizations and factor merging."""

import numpy as np
import pytest

from graph_decomp.errors import UsageError
from graph_decomp.graph import Digraph, Graph, canonical, sequence_edges
from graph_decomp.hamilton import merge_factors, one_factorization, two_factorization
from graph_decomp.hamilton.factors import arc_cycles, factor_cycles

TRIANGLES = frozenset({(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)})
CROSSING = frozenset({(0, 3), (1, 3), (1, 4), (2, 4), (2, 5), (0, 5)})


def test_two_factorization_of_k7():
    """Test K7 splits into three spanning 2-regular factors."""
    factors = two_factorization(Graph.complete(7))
    assert len(factors) == 3
    assert frozenset().union(*factors) == Graph.complete(7).edges
    for factor in factors:
        assert Graph(7, factor).degrees() == [2] * 7


def test_two_factorization_disconnected():
    """Test each component gets its own circuit."""
    graph = Graph(6, TRIANGLES)
    factors = two_factorization(graph)
    assert factors == [TRIANGLES]


def test_two_factorization_rejects_odd_degree():
    """Test an odd-regular graph is refused."""
    with pytest.raises(UsageError):
        two_factorization(Graph.complete(4))


def test_one_factorization_of_complete_digraph():
    """Test the complete digraph on four vertices splits into three permutations."""
    factors = one_factorization(Digraph.complete(4))
    assert len(factors) == 3
    for factor in factors:
        assert sorted(u for u, _ in factor) == [0, 1, 2, 3]
        assert sorted(v for _, v in factor) == [0, 1, 2, 3]
    assert frozenset().union(*factors) == Digraph.complete(4).arcs


def test_one_factorization_rejects_irregular():
    """Test an unbalanced digraph is refused."""
    with pytest.raises(UsageError):
        one_factorization(Digraph.from_arcs(3, [(0, 1), (1, 2)]))


def test_factor_cycles():
    """Test the cycles of a 2-factor are walked out."""
    cycles = factor_cycles(6, TRIANGLES)
    assert sorted(sorted(c) for c in cycles) == [[0, 1, 2], [3, 4, 5]]


def test_arc_cycles():
    """Test the cycles of a 1-factor follow successors."""
    cycles = arc_cycles(4, frozenset({(0, 1), (1, 0), (2, 3), (3, 2)}))
    assert cycles == [[0, 1], [2, 3]]


def test_merge_joins_two_triangles():
    """Test alternating swaps turn two triangles plus a crossing cycle into two Hamilton cycles."""
    merged = merge_factors(6, [TRIANGLES, CROSSING], np.random.default_rng(0))
    assert merged is not None
    used = set()
    for cycle in merged:
        assert sorted(cycle) == list(range(6))
        used.update(canonical(u, v) for u, v in sequence_edges(cycle, True))
    assert used == TRIANGLES | CROSSING


def test_merge_without_iterations_gives_up():
    """Test an exhausted budget returns None."""
    assert merge_factors(6, [TRIANGLES, CROSSING], np.random.default_rng(0), max_iters=0) is None


def test_merge_empty():
    """Test no factors merge to no cycles."""
    assert merge_factors(5, [], np.random.default_rng(0)) == []


def test_merge_directed_without_alternating_swap():
    """Test directed factors with no alternating swap cannot be merged."""
    f = frozenset({(0, 1), (1, 0), (2, 3), (3, 2)})
    g = frozenset({(0, 2), (2, 1), (1, 3), (3, 0)})
    assert merge_factors(4, [f, g], np.random.default_rng(3), directed=True) is None

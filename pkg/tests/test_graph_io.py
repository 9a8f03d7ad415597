"""Tests for the flat-file formats and parameter profiles."""

import json

import pytest

from graph_decomp.errors import ParseError, UsageError
from graph_decomp.graph import Digraph, Graph
from graph_decomp.graph_io import (
    PARAMS_ENV,
    format_coloring,
    format_decomposition,
    format_graph,
    load_decomposition,
    load_graph,
    load_params,
    parse_coloring,
    parse_decomposition,
    parse_graph,
    parse_pairs,
    save_decomposition,
)
from graph_decomp.models import Decomposition, DecompositionKind, EdgeColoring


def test_parse_graph_with_comments():
    """Test comments and blank lines are skipped."""
    graph = parse_graph("# triangle\n3 3\n\n0 1\n2 1\n0 2\n")
    assert graph == Graph.complete(3)


def test_parse_directed_graph():
    """Test the directed header keeps arc orientation."""
    digraph = parse_graph("3 2 directed\n0 1\n1 2\n")
    assert isinstance(digraph, Digraph)
    assert digraph.arcs == frozenset({(0, 1), (1, 2)})


def test_format_graph():
    """Test edges are written sorted under the header."""
    assert format_graph(Graph.path(3)) == "3 2\n0 1\n1 2\n"
    assert format_graph(Digraph.from_arcs(2, [(1, 0), (0, 1)])) == "2 2 directed\n0 1\n1 0\n"


@pytest.mark.parametrize(
    "text, message, line",
    [
        ("", "missing header line", 1),
        ("3 2\n0 1\n", "header promises 2 edges, found 1", 1),
        ("3 1\n1 1\n", "self-loop at 1", 2),
        ("3 2\n0 1\n1 0\n", "repeated edge 1 0", 3),
        ("3 1\n0 3\n", "vertex 3 outside 0..2", 2),
        ("3 1\n0 x\n", "expected an integer", 2),
        ("3 1 undirected\n0 1\n", "header must be", 1),
    ],
)
def test_parse_graph_errors(text, message, line):
    """Test malformed edge lists name the offending line."""
    with pytest.raises(ParseError, match=message) as excinfo:
        parse_graph(text)
    assert excinfo.value.line == line
    assert str(excinfo.value).startswith(f"line {line}: ")


def test_parse_errors_exit_with_usage_code():
    """Test parse errors map to the usage exit code."""
    with pytest.raises(UsageError) as excinfo:
        parse_graph("2 1\n0 0\n")
    assert excinfo.value.exit_code == 1


def test_load_graph_missing_file(tmp_path):
    """Test an unreadable path is a usage error."""
    with pytest.raises(UsageError, match="cannot read"):
        load_graph(tmp_path / "absent.txt")


def test_format_decomposition_with_sequences():
    """Test cycles are written as vertex sequences plus the matching."""
    decomposition = Decomposition(
        kind=DecompositionKind.CYCLES,
        parts=(frozenset({(0, 1), (1, 2), (2, 3), (0, 3)}),),
        n=4,
        sequences=((0, 1, 2, 3),),
        matching=((1, 3), (0, 2)),
    )
    assert format_decomposition(decomposition) == (
        "kind=cycles n=4 parts=1 directed=0 best_effort=0\n"
        "cycle 0 1 2 3\n"
        "matching 0-2 1-3\n"
    )


def test_format_directed_forest_edges():
    """Test parts without sequences are written as edge tokens."""
    decomposition = Decomposition(
        kind=DecompositionKind.LINEAR_FORESTS,
        parts=(frozenset({(1, 0)}),),
        n=2,
        directed=True,
        best_effort=True,
    )
    assert format_decomposition(decomposition) == (
        "kind=forests n=2 parts=1 directed=1 best_effort=1\nedges 1>0\n"
    )


def test_parse_decomposition():
    """Test paths and edge parts are read back with their flags."""
    text = "kind=paths n=4 parts=2 directed=0 best_effort=1\npath 0 1 2 3\npath 2 0 3 1\n"
    decomposition = parse_decomposition(text)
    assert decomposition.kind is DecompositionKind.PATHS
    assert decomposition.best_effort
    assert decomposition.sequences == ((0, 1, 2, 3), (2, 0, 3, 1))
    assert decomposition.parts[1] == frozenset({(0, 2), (0, 3), (1, 3)})


def test_parse_decomposition_mixed_parts_drop_sequences():
    """Test sequences are only kept when every part has one."""
    text = "kind=forests n=4 parts=2\npath 0 1 2\nedges 2-3 0-3\n"
    decomposition = parse_decomposition(text)
    assert decomposition.sequences is None
    assert decomposition.parts[1] == frozenset({(2, 3), (0, 3)})


@pytest.mark.parametrize(
    "text, message",
    [
        ("", "missing header line"),
        ("kind=trees n=3 parts=0\n", "bad decomposition header"),
        ("kind=paths n=3 parts=2\npath 0 1\n", "header promises 2 parts, found 1"),
        ("kind=paths n=3 parts=1\nwalk 0 1\n", "unknown line tag"),
        ("kind=paths n=3 parts=1\npath 0\n", "at least two vertices"),
        ("kind=forests n=3 parts=1\nedges 0>1\n", "expected an edge like 0-1"),
    ],
)
def test_parse_decomposition_errors(text, message):
    """Test malformed decomposition files are parse errors."""
    with pytest.raises(ParseError, match=message):
        parse_decomposition(text)


def test_decomposition_file_round_trip(tmp_path):
    """Test a saved decomposition loads back equal."""
    decomposition = Decomposition(
        kind=DecompositionKind.PATHS,
        parts=(frozenset({(0, 1), (1, 2)}),),
        n=3,
        sequences=((0, 1, 2),),
    )
    path = tmp_path / "paths.txt"
    save_decomposition(decomposition, path)
    assert load_decomposition(path) == decomposition


def test_format_coloring():
    """Test the header records the colour count, method and trust."""
    coloring = EdgeColoring({(1, 2): 2, (0, 1): 1}, 3, method="vizing", trusted=False)
    assert format_coloring(coloring) == "# colors=2 method=vizing trusted=0\n0 1 1\n1 2 2\n"


def test_parse_coloring():
    """Test edges are canonicalized and the header is read."""
    coloring = parse_coloring("# colors=2 method=exact trusted=1\n2 1 1\n0 1 2\n")
    assert coloring.colors == {(1, 2): 1, (0, 1): 2}
    assert coloring.method == "exact"
    assert coloring.trusted
    assert coloring.n == 3


def test_parse_coloring_errors():
    """Test zero colours and repeated edges are rejected."""
    with pytest.raises(ParseError, match="colours start at 1"):
        parse_coloring("0 1 0\n")
    with pytest.raises(ParseError, match="coloured twice"):
        parse_coloring("0 1 1\n1 0 2\n")


def test_parse_pairs():
    """Test pairs are read in order and must be disjoint."""
    assert parse_pairs("0 3\n1 2\n").pairs == ((0, 3), (1, 2))
    with pytest.raises(UsageError, match="not disjoint"):
        parse_pairs("0 1\n1 2\n")


def test_load_params_defaults(monkeypatch):
    """Test defaults apply without a profile."""
    monkeypatch.delenv(PARAMS_ENV, raising=False)
    params, config = load_params()
    assert params.p == 0.5
    assert params.alpha == 0.25
    assert config.gamma == 0.1


def test_load_params_from_environment(monkeypatch, tmp_path):
    """Test the profile named by the environment variable is used."""
    path = tmp_path / "profile.json"
    path.write_text(json.dumps({"p": 0.6, "eta": 0.2, "gamma": 0.3, "retry_budget": 7}))
    monkeypatch.setenv(PARAMS_ENV, str(path))
    params, config = load_params()
    assert params.p == 0.6
    assert params.eta == 0.2
    assert config.gamma == 0.3
    assert config.retry_budget == 7


def test_load_params_p_override(tmp_path):
    """Test an explicit p wins over the profile."""
    path = tmp_path / "profile.json"
    path.write_text(json.dumps({"p": 0.6}))
    params, _ = load_params(path, p=0.4)
    assert params.p == 0.4


def test_load_params_unknown_keys(tmp_path):
    """Test unknown keys are refused by name."""
    path = tmp_path / "profile.json"
    path.write_text(json.dumps({"p": 0.5, "delta": 3}))
    with pytest.raises(UsageError, match="unknown parameter keys: delta"):
        load_params(path)


def test_load_params_bad_json(tmp_path):
    """Test invalid JSON is a parse error."""
    path = tmp_path / "profile.json"
    path.write_text("{p: 0.5")
    with pytest.raises(ParseError, match="not valid JSON"):
        load_params(path)


def test_load_params_out_of_range(tmp_path):
    """Test eta must stay below p."""
    path = tmp_path / "profile.json"
    path.write_text(json.dumps({"p": 0.3, "eps": 0.1, "eta": 0.4}))
    with pytest.raises(UsageError, match="eps <= eta < p"):
        load_params(path)

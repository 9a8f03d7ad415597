"""Tests for the sweep command."""

import json

from graph_decomp.cli import cmd_sweep


def test_cmd_sweep_json(mock_args, capsys):
    """Test rows and summaries come back as JSON."""
    result = cmd_sweep(mock_args(ns="8", ps="0.5", seeds="0-1", tasks="paths", output="json"))
    assert result == 0
    data = json.loads(capsys.readouterr().out)
    assert [row["seed"] for row in data["rows"]] == [0, 1]
    assert data["summaries"][0]["runs"] == 2
    assert "success_rate" in data["summaries"][0]


def test_cmd_sweep_out_is_reproducible(mock_args, capsys, tmp_path):
    """Test the --out table has no timings and repeats exactly."""
    first, second = tmp_path / "a.txt", tmp_path / "b.txt"
    for out in (first, second):
        args = mock_args(ns="8", ps="0.5", seeds="0", tasks="paths,forests", out=str(out))
        assert cmd_sweep(args) == 0
    assert first.read_text() == second.read_text()
    assert "secs" not in first.read_text()
    assert "secs" in capsys.readouterr().out


def test_cmd_sweep_jsonl_out(mock_args, tmp_path):
    """Test --jsonl writes one object per line."""
    out = tmp_path / "sweep.jsonl"
    args = mock_args(ns="8", ps="0.5", seeds="0", tasks="forests", out=str(out), jsonl=True)
    assert cmd_sweep(args) == 0
    lines = [json.loads(line) for line in out.read_text().splitlines()]
    assert lines[0]["task"] == "forests"
    assert lines[-1]["summary"] is True


def test_cmd_sweep_bad_task(mock_args, capsys):
    """Test an unknown task exits 1."""
    assert cmd_sweep(mock_args(ns="8", tasks="trees")) == 1
    assert "unknown sweep tasks" in capsys.readouterr().err


def test_cmd_sweep_bad_range(mock_args, capsys):
    """Test an unreadable seed list exits 1."""
    assert cmd_sweep(mock_args(seeds="a-b")) == 1
    assert "cannot read" in capsys.readouterr().err

"""Flat-file formats for graphs, decompositions, colourings, pairs and parameter profiles.

Edge list::

    # optional comments
    5 4            (n m, or "n m directed")
    0 1
    ...

Decomposition::

    kind=cycles n=5 parts=2 directed=0 best_effort=0
    cycle 0 1 2 3 4
    edges 0-2 2-4
    matching 1-3

Colouring::

    # colors=3 method=pipeline trusted=1
    0 1 1
"""

import json
import logging
import os
from dataclasses import fields
from pathlib import Path

from graph_decomp.errors import ParseError, UsageError
from graph_decomp.graph import AnyGraph, Digraph, Edge, Graph, canonical
from graph_decomp.models import (
    Decomposition,
    DecompositionKind,
    EdgeColoring,
    OrientationConfig,
    PairList,
    QuasirandomParams,
)

logger = logging.getLogger(__name__)

PARAMS_ENV = "GRAPH_DECOMP_PARAMS"


def _lines(text: str) -> list[tuple[int, list[str]]]:
    """Non-blank, non-comment lines as (1-based line number, tokens)."""
    result = []
    for number, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if stripped and not stripped.startswith("#"):
            result.append((number, stripped.split()))
    return result


def _int(token: str, line: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"expected an integer, got {token!r}", line) from None


def _vertex(token: str, n: int, line: int) -> int:
    v = _int(token, line)
    if not 0 <= v < n:
        raise ParseError(f"vertex {v} outside 0..{n - 1}", line)
    return v


def parse_graph(text: str) -> AnyGraph:
    lines = _lines(text)
    if not lines:
        raise ParseError("missing header line", 1)
    number, header = lines[0]
    if len(header) not in (2, 3) or (len(header) == 3 and header[2] != "directed"):
        raise ParseError("header must be 'n m' or 'n m directed'", number)
    n, m = _int(header[0], number), _int(header[1], number)
    directed = len(header) == 3
    if n < 0 or m < 0:
        raise ParseError("n and m must be non-negative", number)
    body = lines[1:]
    if len(body) != m:
        raise ParseError(f"header promises {m} edges, found {len(body)}", number)

    seen: set[Edge] = set()
    for line, tokens in body:
        if len(tokens) != 2:
            raise ParseError(f"expected 'u v', got {' '.join(tokens)!r}", line)
        u, v = _vertex(tokens[0], n, line), _vertex(tokens[1], n, line)
        if u == v:
            raise ParseError(f"self-loop at {u}", line)
        e = (u, v) if directed else canonical(u, v)
        if e in seen:
            raise ParseError(f"repeated edge {u} {v}", line)
        seen.add(e)
    if directed:
        return Digraph(n, frozenset(seen))
    return Graph(n, frozenset(seen))


def format_graph(graph: AnyGraph) -> str:
    if isinstance(graph, Digraph):
        items = graph.sorted_arcs()
        header = f"{graph.n} {len(items)} directed"
    else:
        items = graph.sorted_edges()
        header = f"{graph.n} {len(items)}"
    return "\n".join([header] + [f"{u} {v}" for u, v in items]) + "\n"


def _edge_token(token: str, n: int, directed: bool, line: int) -> Edge:
    sep = ">" if directed else "-"
    parts = token.split(sep)
    if len(parts) != 2:
        raise ParseError(f"expected an edge like 0{sep}1, got {token!r}", line)
    u, v = _vertex(parts[0], n, line), _vertex(parts[1], n, line)
    return (u, v) if directed else canonical(u, v)


def _header_fields(tokens: list[str], line: int) -> dict[str, str]:
    result = {}
    for token in tokens:
        key, sep, value = token.partition("=")
        if not sep:
            raise ParseError(f"expected key=value, got {token!r}", line)
        result[key] = value
    return result


def parse_decomposition(text: str) -> Decomposition:
    lines = _lines(text)
    if not lines:
        raise ParseError("missing header line", 1)
    number, header = lines[0]
    meta = _header_fields(header, number)
    try:
        kind = DecompositionKind(meta["kind"])
        n = int(meta["n"])
        count = int(meta["parts"])
    except (KeyError, ValueError) as e:
        raise ParseError(f"bad decomposition header: {e}", number) from None
    directed = meta.get("directed", "0") == "1"
    best_effort = meta.get("best_effort", "0") == "1"

    parts: list[frozenset[Edge]] = []
    sequences: list[tuple[int, ...]] = []
    matching: tuple[Edge, ...] = ()
    for line, tokens in lines[1:]:
        tag, rest = tokens[0], tokens[1:]
        if tag in ("cycle", "path"):
            seq = tuple(_vertex(t, n, line) for t in rest)
            if len(seq) < 2:
                raise ParseError(f"a {tag} needs at least two vertices", line)
            pairs = list(zip(seq, seq[1:], strict=False))
            if tag == "cycle":
                pairs.append((seq[-1], seq[0]))
            parts.append(frozenset(p if directed else canonical(*p) for p in pairs))
            sequences.append(seq)
        elif tag == "edges":
            parts.append(frozenset(_edge_token(t, n, directed, line) for t in rest))
        elif tag == "matching":
            matching = tuple(_edge_token(t, n, False, line) for t in rest)
        else:
            raise ParseError(f"unknown line tag {tag!r}", line)
    if len(parts) != count:
        raise ParseError(f"header promises {count} parts, found {len(parts)}", number)
    return Decomposition(
        kind=kind,
        parts=tuple(parts),
        n=n,
        directed=directed,
        sequences=tuple(sequences) if sequences and len(sequences) == len(parts) else None,
        matching=matching,
        best_effort=best_effort,
    )


def format_decomposition(decomposition: Decomposition) -> str:
    d = decomposition
    lines = [
        f"kind={d.kind.value} n={d.n} parts={d.count} "
        f"directed={int(d.directed)} best_effort={int(d.best_effort)}"
    ]
    sep = ">" if d.directed else "-"
    if d.sequences is not None:
        tag = "cycle" if d.kind is DecompositionKind.CYCLES else "path"
        lines.extend(f"{tag} " + " ".join(map(str, seq)) for seq in d.sequences)
    else:
        for part in d.parts:
            lines.append("edges " + " ".join(f"{u}{sep}{v}" for u, v in sorted(part)))
    if d.matching:
        lines.append("matching " + " ".join(f"{u}-{v}" for u, v in sorted(d.matching)))
    return "\n".join(lines) + "\n"


def parse_coloring(text: str, n: int | None = None) -> EdgeColoring:
    method, trusted = "pipeline", True
    for raw in text.splitlines():
        stripped = raw.strip()
        if stripped.startswith("#") and "colors=" in stripped:
            meta = dict(t.partition("=")[::2] for t in stripped[1:].split() if "=" in t)
            method = meta.get("method", method)
            trusted = meta.get("trusted", "1") == "1"
            break

    colors: dict[Edge, int] = {}
    top = 0
    for line, tokens in _lines(text):
        if len(tokens) != 3:
            raise ParseError(f"expected 'u v c', got {' '.join(tokens)!r}", line)
        u, v, c = (_int(t, line) for t in tokens)
        if u < 0 or v < 0 or u == v:
            raise ParseError(f"bad edge {u} {v}", line)
        if c < 1:
            raise ParseError(f"colours start at 1, got {c}", line)
        e = canonical(u, v)
        if e in colors:
            raise ParseError(f"edge {u} {v} coloured twice", line)
        colors[e] = c
        top = max(top, v + 1, u + 1)
    return EdgeColoring(colors, n if n is not None else top, method=method, trusted=trusted)


def format_coloring(coloring: EdgeColoring) -> str:
    lines = [
        f"# colors={coloring.num_colors} method={coloring.method} "
        f"trusted={int(coloring.trusted)}"
    ]
    lines.extend(f"{u} {v} {c}" for (u, v), c in sorted(coloring.colors.items()))
    return "\n".join(lines) + "\n"


def parse_pairs(text: str) -> PairList:
    pairs = []
    for line, tokens in _lines(text):
        if len(tokens) != 2:
            raise ParseError(f"expected 'x y', got {' '.join(tokens)!r}", line)
        pairs.append((_int(tokens[0], line), _int(tokens[1], line)))
    return PairList(tuple(pairs))


def load_graph(path: Path | str) -> AnyGraph:
    return parse_graph(_read(path))


def save_graph(graph: AnyGraph, path: Path | str) -> None:
    _write(path, format_graph(graph))


def load_decomposition(path: Path | str) -> Decomposition:
    return parse_decomposition(_read(path))


def save_decomposition(decomposition: Decomposition, path: Path | str) -> None:
    _write(path, format_decomposition(decomposition))


def load_coloring(path: Path | str, n: int | None = None) -> EdgeColoring:
    return parse_coloring(_read(path), n)


def save_coloring(coloring: EdgeColoring, path: Path | str) -> None:
    _write(path, format_coloring(coloring))


def load_pairs(path: Path | str) -> PairList:
    return parse_pairs(_read(path))


def _read(path: Path | str) -> str:
    try:
        return Path(path).read_text()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None


def _write(path: Path | str, text: str) -> None:
    Path(path).write_text(text)
    logger.debug(f"wrote {path}")


_PARAM_KEYS = {f.name for f in fields(QuasirandomParams)}
_ORIENT_KEYS = {"gamma", "xi"}


def load_params(
    path: Path | str | None = None, p: float | None = None
) -> tuple[QuasirandomParams, OrientationConfig]:
    """Parameter profile from a JSON file, the environment, or defaults.

    Without a path the file named by GRAPH_DECOMP_PARAMS is used, if set.
    An explicit p overrides the profile's density.
    """
    if path is None:
        path = os.getenv(PARAMS_ENV) or None
        if path:
            logger.debug(f"using parameter profile {path} from {PARAMS_ENV}")
    data: dict = {}
    if path is not None:
        try:
            data = json.loads(_read(path))
        except json.JSONDecodeError as e:
            raise ParseError(f"profile is not valid JSON: {e.msg}", e.lineno) from None
        if not isinstance(data, dict):
            raise UsageError("parameter profile must be a JSON object")
    unknown = sorted(set(data) - _PARAM_KEYS - _ORIENT_KEYS)
    if unknown:
        raise UsageError(f"unknown parameter keys: {', '.join(unknown)}")
    if p is not None:
        data["p"] = p
    data.setdefault("p", 0.5)

    orient = {k: data.pop(k) for k in _ORIENT_KEYS if k in data}
    params = QuasirandomParams(**data)
    config = OrientationConfig(retry_budget=params.retry_budget, **orient)
    return params, config

"""Text and JSON formats for weighted trees.

Text format, one statement per line (``#`` starts a comment)::

    v <id> <weight>
    e <id> <id>

A document may instead be a single shorthand line, ``chain:4,1,2,2,2`` or
``fork:p|a1,a2|b1|c1`` (arms listed outward from the center). JSON mirrors
the statements: ``{"vertices": [{"id": 0, "weight": 4}, ...], "edges": [[0, 1], ...]}``.
Every parser rejects graphs that are not trees.
"""
from __future__ import annotations

import json
from pathlib import Path

from .errors import GraphError, GraphParseError
from .graph import WeightedGraph


def _int_token(tok: str, line: int, col: int, what: str) -> int:
    try:
        value = int(tok)
    except ValueError:
        raise GraphParseError(f"expected integer {what}, got {tok!r}", line, col) from None
    return value


def _weights_list(text: str, line: int, col: int) -> list[int]:
    out = []
    offset = col
    for tok in text.split(","):
        if not tok.strip():
            raise GraphParseError("empty weight in shorthand", line, offset)
        out.append(_int_token(tok.strip(), line, offset, "weight"))
        offset += len(tok) + 1
    return out


def parse_shorthand(text: str, line: int = 1) -> WeightedGraph:
    text = text.strip()
    kind, _, body = text.partition(":")
    col = len(kind) + 2
    try:
        if kind == "chain":
            return _checked_tree(WeightedGraph.chain(_weights_list(body, line, col)), line)
        if kind == "fork":
            parts = body.split("|")
            if len(parts) < 2:
                raise GraphParseError("fork needs a center and at least one arm", line, col)
            center = _int_token(parts[0].strip(), line, col, "center weight")
            arms = []
            offset = col + len(parts[0]) + 1
            for part in parts[1:]:
                arms.append(_weights_list(part, line, offset))
                offset += len(part) + 1
            return _checked_tree(WeightedGraph.fork(center, *arms), line)
    except GraphError as exc:
        if isinstance(exc, GraphParseError):
            raise
        raise GraphParseError(str(exc), line, 1) from None
    raise GraphParseError(f"unknown shorthand {kind!r}; expected chain: or fork:", line, 1)


def _checked_tree(g: WeightedGraph, line=None) -> WeightedGraph:
    if not g.is_tree():
        raise GraphParseError(
            f"graph is not a tree ({len(g)} vertices, {len(g.edges)} edges"
            + (", disconnected)" if not g.is_connected() else ")"),
            line,
        )
    return g


def parse_graph(text: str) -> WeightedGraph:
    """Parse statements, a shorthand line, or JSON."""
    stripped = text.strip()
    if stripped.startswith("{"):
        return graph_from_json(stripped)
    weights: dict[int, int] = {}
    edges = []
    seen_statement = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        if not body.strip():
            continue
        lead = len(body) - len(body.lstrip())
        content = body.strip()
        if content.startswith(("chain:", "fork:")):
            if seen_statement or weights or edges:
                raise GraphParseError("shorthand must be the only statement", lineno, lead + 1)
            g = parse_shorthand(content, lineno)
            rest = [ln for ln in text.splitlines()[lineno:] if ln.split("#", 1)[0].strip()]
            if rest:
                raise GraphParseError("shorthand must be the only statement", lineno + 1, 1)
            return g
        seen_statement = True
        toks = []
        pos = 0
        for tok in content.split():
            pos = content.index(tok, pos)
            toks.append((tok, lead + pos + 1))
            pos += len(tok)
        kind, kcol = toks[0]
        if kind == "v":
            if len(toks) != 3:
                raise GraphParseError("expected 'v <id> <weight>'", lineno, kcol)
            v = _int_token(toks[1][0], lineno, toks[1][1], "vertex id")
            w = _int_token(toks[2][0], lineno, toks[2][1], "weight")
            if v < 0:
                raise GraphParseError("vertex ids must be non-negative", lineno, toks[1][1])
            if w < 1:
                raise GraphParseError("weights must be >= 1", lineno, toks[2][1])
            if v in weights:
                raise GraphParseError(f"vertex {v} declared twice", lineno, toks[1][1])
            weights[v] = w
        elif kind == "e":
            if len(toks) != 3:
                raise GraphParseError("expected 'e <id> <id>'", lineno, kcol)
            u = _int_token(toks[1][0], lineno, toks[1][1], "vertex id")
            v = _int_token(toks[2][0], lineno, toks[2][1], "vertex id")
            edges.append((u, v, lineno, toks[1][1]))
        else:
            raise GraphParseError(f"unknown statement {kind!r}", lineno, kcol)
    if not weights:
        raise GraphParseError("no vertices declared", None)
    seen = set()
    for u, v, lineno, col in edges:
        for x in (u, v):
            if x not in weights:
                raise GraphParseError(f"edge uses undeclared vertex {x}", lineno, col)
        if u == v:
            raise GraphParseError(f"self-loop at vertex {u}", lineno, col)
        key = (min(u, v), max(u, v))
        if key in seen:
            raise GraphParseError(f"duplicate edge {u}-{v}", lineno, col)
        seen.add(key)
    return _checked_tree(WeightedGraph(weights, [(u, v) for u, v, _, _ in edges]))


def read_graph(spec: str) -> WeightedGraph:
    """A shorthand string, ``-`` for stdin, or a file path."""
    if spec.startswith(("chain:", "fork:")):
        return parse_shorthand(spec)
    if spec == "-":
        import sys

        return parse_graph(sys.stdin.read())
    path = Path(spec)
    if not path.exists():
        raise GraphParseError(f"no such graph file or shorthand: {spec!r}")
    return parse_graph(path.read_text())


def format_graph(g: WeightedGraph) -> str:
    lines = [f"v {v} {w}" for v, w in g.weights.items()]
    lines += [f"e {u} {v}" for u, v in g.edges]
    return "\n".join(lines) + "\n"


def graph_to_json(g: WeightedGraph) -> dict:
    return {
        "vertices": [{"id": v, "weight": w} for v, w in g.weights.items()],
        "edges": [list(e) for e in g.edges],
    }


def graph_from_json(data) -> WeightedGraph:
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise GraphParseError(f"invalid JSON: {exc.msg}", exc.lineno, exc.colno) from None
    try:
        weights = {}
        for item in data["vertices"]:
            v, w = item["id"], item["weight"]
            if v in weights:
                raise GraphParseError(f"vertex {v} declared twice")
            weights[v] = w
        edges = [tuple(e) for e in data["edges"]]
        g = WeightedGraph(weights, edges)
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, GraphParseError):
            raise
        raise GraphParseError(f"malformed graph JSON: {exc}") from None
    return _checked_tree(g)

"""Line-oriented text formats for graphs and realizations.

Graph files:  `n <count>` first, then `e <u> <v> <num>[/<den>]`,
`a <v> <coord...>`, `name <v> <label>`, optional `dim <K>`, '#' comments.
Realization files: `dim <K>` header then `x <v> <coord...>` lines.
Writers emit reduced fractions; readers accept unreduced ones and decimal
literals (decimals switch the realization to real mode).
"""

from __future__ import annotations

from fractions import Fraction

import mpmath

from .graphs import DEFAULT_PRECISION, EXACT, REAL, Realization, WeightedGraph


class FormatError(ValueError):
    pass


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


def parse_graph(text: str) -> WeightedGraph:
    n = None
    dim = 1
    edges = []
    anchors = {}
    names = {}
    pending_anchors = []
    for lineno, parts in _content_lines(text):
        kind = parts[0]
        if kind == "n":
            if n is not None:
                raise FormatError(f"line {lineno}: duplicate 'n' line")
            n = int(parts[1])
        elif n is None:
            raise FormatError(f"line {lineno}: 'n' must come first")
        elif kind == "dim":
            dim = int(parts[1])
        elif kind == "e":
            if len(parts) != 4:
                raise FormatError(f"line {lineno}: expected 'e u v w'")
            edges.append((int(parts[1]), int(parts[2]), Fraction(parts[3])))
        elif kind == "a":
            pending_anchors.append((lineno, int(parts[1]), parts[2:]))
        elif kind == "name":
            names[int(parts[1])] = parts[2]
        else:
            raise FormatError(f"line {lineno}: unknown record {kind!r}")
    if n is None:
        raise FormatError("missing 'n' line")
    for lineno, v, coords in pending_anchors:
        if len(coords) != dim:
            raise FormatError(f"line {lineno}: anchor needs {dim} coordinates")
        anchors[v] = tuple(Fraction(c) for c in coords)
    try:
        return WeightedGraph(n, tuple(edges), anchors, dim, names)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def format_graph(g: WeightedGraph) -> str:
    lines = [f"n {g.vertex_count}"]
    if g.dimension != 1:
        lines.append(f"dim {g.dimension}")
    for u, v, w in g.edges:
        lines.append(f"e {u} {v} {w}")
    for v in sorted(g.anchors):
        coords = " ".join(str(c) for c in g.anchors[v])
        lines.append(f"a {v} {coords}")
    for v in sorted(g.names):
        lines.append(f"name {v} {g.names[v]}")
    return "\n".join(lines) + "\n"


def _is_decimal(token: str) -> bool:
    return ("." in token or "e" in token.lower()) and "/" not in token


def parse_realization(text: str) -> Realization:
    dim = None
    rows = []
    real_mode = False
    for lineno, parts in _content_lines(text):
        kind = parts[0]
        if kind == "dim":
            if dim is not None:
                raise FormatError(f"line {lineno}: duplicate 'dim' line")
            dim = int(parts[1])
        elif kind == "x":
            if dim is None:
                raise FormatError(f"line {lineno}: 'dim' header must come first")
            coords = parts[2:]
            if len(coords) != dim:
                raise FormatError(f"line {lineno}: expected {dim} coordinates")
            if any(_is_decimal(c) for c in coords):
                real_mode = True
            rows.append((int(parts[1]), coords))
        else:
            raise FormatError(f"line {lineno}: unknown record {kind!r}")
    if dim is None:
        raise FormatError("missing 'dim' header")
    if real_mode:
        with mpmath.workprec(DEFAULT_PRECISION):
            positions = {v: tuple(mpmath.mpf(c) for c in coords) for v, coords in rows}
        return Realization(dim, positions, REAL, DEFAULT_PRECISION)
    positions = {v: tuple(Fraction(c) for c in coords) for v, coords in rows}
    return Realization(dim, positions, EXACT)


def format_realization(x: Realization) -> str:
    lines = [f"dim {x.dimension}"]
    for v in sorted(x.positions):
        if x.mode == EXACT:
            coords = " ".join(str(c) for c in x.positions[v])
        else:
            coords = " ".join(mpmath.nstr(c, 30, strip_zeros=True) for c in x.positions[v])
        lines.append(f"x {v} {coords}")
    return "\n".join(lines) + "\n"

"""The ``.tiling.json`` file format and SVG rendering.

A point is ``[x, y]`` and each coordinate is ``[rational_part, surd_part]``
meaning ``rational_part + surd_part * sqrt(D)``; all numbers are strings
``"p/q"`` so nothing passes through binary floating point.  Tile sides are
``"p/q"`` or ``"sqrt(p/q)"``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import List

from .geometry import Point, PlacedTile, Tiling
from .kernel import QuadVal, format_length, is_squarefree, parse_length_sq, parse_rational

FORMAT_VERSION = 1


class TilingFormatError(ValueError):
    pass


def _coord(raw, d: int, where: str) -> QuadVal:
    if not (isinstance(raw, list) and len(raw) == 2):
        raise TilingFormatError(f"{where}: expected [rational_part, surd_part], got {raw!r}")
    try:
        a = parse_rational(raw[0])
        b = parse_rational(raw[1])
    except ZeroDivisionError as exc:
        raise TilingFormatError(f"{where}: {exc}") from None
    except ValueError as exc:
        raise TilingFormatError(f"{where}: {exc}") from None
    if b and d == 1:
        raise TilingFormatError(f"{where}: non-zero surd part but D = 1")
    return QuadVal(a, b, d) if b else QuadVal.of(a)


def _point(raw, d: int, where: str) -> Point:
    if not (isinstance(raw, list) and len(raw) == 2):
        raise TilingFormatError(f"{where}: expected [x, y], got {raw!r}")
    return Point(_coord(raw[0], d, where + ".x"), _coord(raw[1], d, where + ".y"))


def _triangle(raw, d: int, where: str):
    if not (isinstance(raw, list) and len(raw) == 3):
        raise TilingFormatError(f"{where}: expected 3 points")
    return tuple(_point(p, d, f"{where}[{i}]") for i, p in enumerate(raw))


def parse_tiling(text: str) -> Tiling:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise TilingFormatError(f"syntax error at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise TilingFormatError("top level must be an object")
    missing = [k for k in ("version", "D", "tile", "outer", "tiles") if k not in doc]
    if missing:
        raise TilingFormatError(f"missing field(s): {', '.join(missing)}")
    if doc["version"] != FORMAT_VERSION:
        raise TilingFormatError(f"unsupported version {doc['version']!r}")
    d = doc["D"]
    if not isinstance(d, int) or isinstance(d, bool) or not is_squarefree(d):
        raise TilingFormatError(f"D not squarefree: {d!r}")
    tile = doc["tile"]
    if not (isinstance(tile, dict) and set(tile) == {"a", "b", "c"}):
        raise TilingFormatError("tile must have exactly the keys a, b, c")
    try:
        tile_sq = tuple(parse_length_sq(tile[k]) for k in "abc")
    except (ValueError, ZeroDivisionError) as exc:
        raise TilingFormatError(f"tile: {exc}") from None
    outer = _triangle(doc["outer"], d, "outer")
    if not isinstance(doc["tiles"], list):
        raise TilingFormatError("tiles must be an array")
    tiles = []
    for i, raw in enumerate(doc["tiles"]):
        tri = _triangle(raw, d, f"tiles[{i}]")
        try:
            tiles.append(PlacedTile(*tri))
        except ValueError as exc:
            raise TilingFormatError(f"tiles[{i}]: {exc}") from None
    try:
        return Tiling(d, tile_sq, outer, tiles)
    except ValueError as exc:
        raise TilingFormatError(str(exc)) from None


def _coord_json(v: QuadVal) -> List[str]:
    return [str(v.a), str(v.b)]


def _tri_json(pts) -> list:
    return [[_coord_json(p.x), _coord_json(p.y)] for p in pts]


def tiling_to_json(t: Tiling) -> dict:
    a, b, c = (format_length(s) for s in t.tile_sq)
    return {
        "version": FORMAT_VERSION,
        "D": t.disc,
        "tile": {"a": a, "b": b, "c": c},
        "outer": _tri_json(t.outer),
        "tiles": [_tri_json(tile.vertices) for tile in t.tiles],
    }


def serialize_tiling(t: Tiling) -> str:
    """Canonical text: one tile per line, rationals in lowest terms."""
    doc = tiling_to_json(t)
    head = {k: doc[k] for k in ("version", "D", "tile", "outer")}
    lines = ["{"]
    for k, v in head.items():
        lines.append(f"  {json.dumps(k)}: {json.dumps(v)},")
    lines.append('  "tiles": [')
    rows = [f"    {json.dumps(tile)}" for tile in doc["tiles"]]
    lines.append(",\n".join(rows))
    lines.append("  ]")
    lines.append("}")
    return "\n".join(lines) + "\n"


def load_tiling(path) -> Tiling:
    with open(path, encoding="utf-8") as fh:
        return parse_tiling(fh.read())


def save_tiling(t: Tiling, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize_tiling(t))


# ---------------------------------------------------------------------------
# SVG


@dataclass(frozen=True)
class SvgRender:
    width_px: int = 600
    precision: int = 9
    margin_px: int = 10
    stroke: str = "#222"
    fill: str = "#f4e3b5"
    outline: str = "#000"


def render_svg(t: Tiling, opts: SvgRender = SvgRender()) -> str:
    """SVG picture; decimals are for display only, the file stays exact."""
    if opts.width_px <= 2 * opts.margin_px:
        raise ValueError("width too small for the margin")
    xs = [float(p.x) for p in t.outer]
    ys = [float(p.y) for p in t.outer]
    x0, y1 = min(xs), max(ys)
    span_x = max(xs) - x0
    span_y = y1 - min(ys)
    inner = opts.width_px - 2 * opts.margin_px
    scale = inner / max(span_x, span_y)
    height_px = round(span_y * scale) + 2 * opts.margin_px

    def num(v: float) -> str:
        s = format(v, f".{opts.precision}g")
        return "0" if s == "-0" else s

    def xy(p: Point) -> str:
        # flip y so the picture is upright
        return f"{num(opts.margin_px + (float(p.x) - x0) * scale)},{num(opts.margin_px + (y1 - float(p.y)) * scale)}"

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{opts.width_px}" height="{height_px}" '
        f'viewBox="0 0 {opts.width_px} {height_px}">',
        f'<g fill="{opts.fill}" stroke="{opts.stroke}" stroke-width="0.5" stroke-linejoin="round">',
    ]
    for tile in t.tiles:
        out.append(f'<polygon points="{" ".join(xy(p) for p in tile.vertices)}"/>')
    out.append("</g>")
    a, b, c = (xy(p) for p in t.outer)
    out.append(f'<path d="M {a} L {b} L {c} Z" fill="none" stroke="{opts.outline}" stroke-width="1.5"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"

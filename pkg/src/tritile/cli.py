"""Command-line interface.

Exit codes: 0 success or valid tiling, 1 invalid tiling, 2 bad input or
usage, 3 internal error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import List, Optional

from . import __version__
from .classifier import AnglesPi, Family, FamilyTag, Sides, classify
from .constructors import (
    bisect_isosceles,
    biquadratic_tiling,
    count_case4,
    count_case5,
    count_case6,
    count_case8,
    glue_append_similar,
    hexagonal_tiling,
    place_triangle,
    quadratic_tiling,
    tri_306090_tiling,
    triquadratic_params,
)
from .geometry import verify
from .kernel import QuadVal, parse_length_sq, parse_rational
from .numtheory import EllipticCurve, rational_point_search, torsion_points
from .tiling_io import SvgRender, load_tiling, render_svg, serialize_tiling

EXIT_OK, EXIT_INVALID, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(ValueError):
    pass


def _split(text: str, flag: str, n=None) -> List[str]:
    parts = [p.strip() for p in text.split(",")]
    if n is not None and len(parts) not in (n if isinstance(n, tuple) else (n,)):
        raise UsageError(f"{flag} expects {n} comma-separated values, got {text!r}")
    return parts


def _rationals(text: str, flag: str, n=None) -> List[Fraction]:
    return [parse_rational(p) for p in _split(text, flag, n)]


def _require(args, *names):
    for name in names:
        if getattr(args, name) is None:
            raise UsageError(f"--{name.replace('_', '-')} is required here")


def _length(text: str) -> QuadVal:
    # "p/q" or "sqrt(p/q)"
    if "sqrt" in text:
        return QuadVal.sqrt_of(parse_length_sq(text))
    return QuadVal.of(parse_rational(text))


def _emit(doc, verdict: str, quiet: bool, out=None):
    out = out or sys.stdout
    if quiet:
        out.write(verdict + "\n")
    else:
        out.write(json.dumps(doc, indent=2) + "\n")


# ---------------------------------------------------------------------------
# subcommands


def cmd_classify(args) -> int:
    given = [x for x in (args.angles_pi, args.sides, args.family) if x is not None]
    if len(given) != 1:
        raise UsageError("give exactly one of --angles-pi, --sides, --family")
    if args.angles_pi is not None:
        spec = AnglesPi(*_rationals(args.angles_pi, "--angles-pi", 3))
    elif args.sides is not None:
        spec = Sides.of(*_split(args.sides, "--sides", 3))
    else:
        _require(args, "params")
        try:
            tag = FamilyTag(args.family.upper())
        except ValueError:
            raise UsageError(f"--family: unknown tag {args.family!r}") from None
        spec = Family(tag, tuple(_rationals(args.params, "--params", (1, 2))))
    v = classify(spec)
    ids = ",".join(str(c) for c in sorted(v.conditions)) or "none"
    _emit(v.to_json(), f"admits_nonsquare={str(v.admits_nonsquare).lower()} conditions={ids}", args.quiet)
    return EXIT_OK


def _build(args):
    kind = args.kind
    if kind == "quadratic":
        _require(args, "n")
        sides = _rationals(args.sides or "3,4,5", "--sides", 3)
        return quadratic_tiling(place_triangle(*sides), args.n)
    if kind == "bisect":
        _require(args, "params")
        base, height = _split(args.params, "--params", 2)
        return bisect_isosceles(parse_rational(base), _length(height))
    if kind == "hexagonal":
        _require(args, "k")
        return hexagonal_tiling(args.k)
    if kind == "biquadratic":
        _require(args, "M", "K")
        return biquadratic_tiling(args.M, args.K)
    if kind == "tri306090":
        _require(args, "k")
        return tri_306090_tiling(args.k)
    if kind == "glue":
        _require(args, "base", "params")
        parts = _split(args.params, "--params", (1, 2, 3))
        side = int(parts[0])
        tile_side = int(parts[1]) if len(parts) > 1 else None
        flip = None
        if len(parts) > 2:
            if parts[2] not in ("0", "1"):
                raise UsageError("--params flip must be 0 or 1")
            flip = parts[2] == "1"
        return glue_append_similar(load_tiling(args.base), side, tile_side, flip)
    raise UsageError(f"unknown --kind {kind!r}")


def _verify_doc(t):
    rep = verify(t)
    failed = [k for k, c in rep.checks.items() if not c.passed]
    line = f"valid n={rep.n_tiles}" if rep.valid else f"invalid n={rep.n_tiles} failed={','.join(failed)}"
    return rep, line


def cmd_construct(args) -> int:
    t = _build(args)
    text = serialize_tiling(t)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    doc = {"kind": args.kind, "n_tiles": t.n_tiles, "tile": list(t.tile_sides), "output": args.output}
    if args.skip_verify:
        line = f"constructed n={t.n_tiles}"
        code = EXIT_OK
    else:
        rep, line = _verify_doc(t)
        doc["verify"] = rep.to_json()
        code = EXIT_OK if rep.valid else EXIT_INTERNAL
    if not args.output and not args.quiet:
        sys.stdout.write(text)
        return code
    _emit(doc, line, args.quiet)
    return code


def cmd_verify(args) -> int:
    rep, line = _verify_doc(load_tiling(args.file))
    _emit(rep.to_json(), line, args.quiet)
    return EXIT_OK if rep.valid else EXIT_INVALID


def cmd_render(args) -> int:
    t = load_tiling(args.file)
    if not args.skip_verify:
        rep, line = _verify_doc(t)
        if not rep.valid:
            _emit(rep.to_json(), line, args.quiet)
            return EXIT_INVALID
    svg = render_svg(t, SvgRender(width_px=args.width))
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(svg)
        _emit({"output": args.output, "polygons": t.n_tiles}, f"rendered n={t.n_tiles}", args.quiet)
    else:
        sys.stdout.write(svg)
    return EXIT_OK


def cmd_count(args) -> int:
    case = args.case
    if case == 4:
        _require(args, "params", "m")
        a, b = (int(x) for x in _rationals(args.params, "--params", 2))
        cert = count_case4(a, b, args.m)
        doc = cert.to_json()
    elif case == 5:
        _require(args, "t")
        cert = count_case5(parse_rational(args.t))
        doc = cert.to_json()
    elif case == 6:
        _require(args, "M", "s")
        cert = count_case6(args.M, parse_rational(args.s))
        doc = cert.to_json()
    elif case == 7:
        _require(args, "M", "K")
        cert, shape = triquadratic_params(args.M, args.K)
        doc = cert.to_json()
        doc["tile_shape"] = shape.to_json()
    elif case == 8:
        _require(args, "t")
        cert = count_case8(parse_rational(args.t))
        doc = cert.to_json()
    else:
        raise UsageError(f"--case must be 4..8, got {case}")
    label = "square_class" if cert.square_class_only else "N"
    _emit(doc, f"{label}={cert.n_expression} square_possible={str(cert.is_square_possible).lower()}", args.quiet)
    return EXIT_OK


def cmd_curve(args) -> int:
    _require(args, "coeffs")
    a2, a1, a0 = (int(x) for x in _rationals(args.coeffs, "--coeffs", 3))
    c = EllipticCurve(a2, a1, a0)
    tors = torsion_points(c)
    doc = {
        "curve": str(c),
        "coeffs": [a2, a1, a0],
        "structure": tors.structure_name(),
        "torsion": [
            {"point": p.to_json(), "order": o} for p, o in zip(tors.points, tors.orders)
        ],
    }
    if args.action == "torsion":
        doc["points"] = [p.to_json() for p in tors.points]
        doc["evidence_height"] = None
        line = f"torsion {tors.structure_name()} order={tors.order}"
    else:
        _require(args, "height")
        found = rational_point_search(c, args.height)
        known = set(tors.points)
        extra = [p for p in found if p not in known]
        doc["points"] = [p.to_json() for p in found]
        doc["non_torsion"] = [p.to_json() for p in extra]
        doc["evidence_height"] = args.height
        line = f"search height={args.height} points={len(found)} non_torsion={len(extra)}"
    _emit(doc, line, args.quiet)
    return EXIT_OK


# ---------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="tritile", description="Non-square tilings of triangles by congruent triangles.")
    p.add_argument("--version", action="version", version=f"tritile {__version__}")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    def common(sp):
        sp.add_argument("--quiet", action="store_true", help="print only the verdict line")

    sp = sub.add_parser("classify", help="which non-square conditions a triangle meets")
    sp.add_argument("--angles-pi", help="pA,pB,pC: angles as multiples of pi")
    sp.add_argument("--sides", help="a,b,c: rationals or sqrt(r)")
    sp.add_argument("--family", help="C60 | B2A_TAN | B2A_SIN | HALF_SUM | TWO_PLUS_HALF")
    sp.add_argument("--params", help="family parameters")
    common(sp)
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("construct", help="write an explicit tiling")
    sp.add_argument("--kind", required=True, choices=["quadratic", "bisect", "hexagonal", "biquadratic", "tri306090", "glue"])
    sp.add_argument("--n", type=int)
    sp.add_argument("--k", type=int)
    sp.add_argument("--M", type=int)
    sp.add_argument("--K", type=int)
    sp.add_argument("--sides", help="outer sides for quadratic (default 3,4,5)")
    sp.add_argument("--params", help="bisect: base,height; glue: side[,tile_side[,flip]]")
    sp.add_argument("--base", help="base tiling file for glue")
    sp.add_argument("-o", "--output")
    sp.add_argument("--skip-verify", action="store_true")
    common(sp)
    sp.set_defaults(func=cmd_construct)

    sp = sub.add_parser("verify", help="check a tiling file exactly")
    sp.add_argument("file")
    common(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("render", help="draw a tiling file as SVG")
    sp.add_argument("file")
    sp.add_argument("-o", "--output")
    sp.add_argument("--width", type=int, default=600)
    sp.add_argument("--skip-verify", action="store_true")
    common(sp)
    sp.set_defaults(func=cmd_render)

    sp = sub.add_parser("count", help="tile-count certificate for cases 4..8")
    sp.add_argument("--case", type=int, required=True, choices=[4, 5, 6, 7, 8])
    sp.add_argument("--params", help="case 4: a,b")
    sp.add_argument("--m", type=int)
    sp.add_argument("--t")
    sp.add_argument("--s")
    sp.add_argument("--M", type=int)
    sp.add_argument("--K", type=int)
    common(sp)
    sp.set_defaults(func=cmd_count)

    sp = sub.add_parser("curve", help="torsion and bounded point search on y^2 = x^3 + a2 x^2 + a1 x + a0")
    sp.add_argument("action", choices=["torsion", "search"])
    sp.add_argument("--coeffs", help="a2,a1,a0")
    sp.add_argument("--height", type=int)
    common(sp)
    sp.set_defaults(func=cmd_curve)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.command is None:
            raise UsageError("missing subcommand")
        return args.func(args)
    except SystemExit as exc:
        # --help and --version
        return exc.code if isinstance(exc.code, int) else EXIT_OK
    except (ValueError, ZeroDivisionError, OSError) as exc:
        sys.stderr.write(f"tritile: error: {exc}\n")
        return EXIT_USAGE
    except Exception as exc:  # noqa: BLE001
        sys.stderr.write(f"tritile: internal error: {type(exc).__name__}: {exc}\n")
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())

"""Command-line entry point.  Exit codes: 0 success, 1 domain error, 2 usage,
3 for ``equiv`` when no path is found inside the bounds."""
from __future__ import annotations

import argparse
import sys

from . import geometry, io
from .geometry import GeometryError, RailArc3D
from .invariants import bracket, f2_normal_form, f2_word, normalized_bracket, writhe
from .isotopy3d import IsotopyError, TriangleMove3D, decompose_to_nice, random_isotopy
from .maps import DiagramError, KnotoidDiagram, RailDiagram, ThetaDiagram
from .moves import MoveError, MoveSite, apply_move, enumerate_all
from .render import render_svg
from .search import connect, simplify_path
from .theta import ThetaScopeError, from_theta, to_theta

DOMAIN_ERRORS = (
    io.ParseError,
    DiagramError,
    GeometryError,
    MoveError,
    IsotopyError,
    ThetaScopeError,
    ValueError,
    OSError,
)


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _load(path: str):
    """An arc or a diagram, told apart by the header line."""
    text = _read(path)
    first = next((ln.strip() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")), "")
    if first == "rail-arc v1":
        return io.parse_arc(text)
    return io.parse_diagram(text)


def _load_arc(path: str) -> RailArc3D:
    obj = _load(path)
    if not isinstance(obj, RailArc3D):
        raise ValueError(f"{path}: expected a rail-arc file")
    return obj


def _load_diagram(path: str, *kinds):
    obj = _load(path)
    if isinstance(obj, RailArc3D) or (kinds and not isinstance(obj, kinds)):
        want = " or ".join(k.__name__ for k in kinds) or "diagram"
        raise ValueError(f"{path}: expected a {want} file")
    return obj


def cmd_validate(args) -> int:
    obj = _load(args.file)
    if isinstance(obj, RailArc3D):
        rep = geometry.validate_arc(obj)
        if rep.ok:
            generic = {
                "rail": geometry.is_generic_railplane(obj),
                "perp": geometry.is_generic_perpendicular(obj),
            }
            for plane, g in generic.items():
                print(f"# {plane} projection: {'generic' if g.ok else g}")
    else:
        rep = obj.validate()  # parse already validated; kept for symmetry
    print("ok" if rep.ok else str(rep))
    return 0 if rep.ok else 1


def cmd_project(args) -> int:
    a = _load_arc(args.file)
    d = geometry.project_railplane(a) if args.plane == "rail" else geometry.project_perpendicular(a)
    sys.stdout.write(io.serialize_diagram(d))
    n_x = sum(1 for v in d.vertices.values() if v.kind.value == "xing")
    n_r = sum(1 for v in d.vertices.values() if v.kind.value == "railx")
    print(f"# crossings: {n_x + n_r} ({n_x} arc, {n_r} rail)")
    return 0


def cmd_perturb(args) -> int:
    sys.stdout.write(io.serialize_arc(geometry.perturb(_load_arc(args.file), args.seed)))
    return 0


def cmd_moves(args) -> int:
    d = _load_diagram(args.file, RailDiagram, KnotoidDiagram)
    if args.action == "list":
        cap = args.max_crossings if args.max_crossings is not None else d.crossing_count() + 2
        for m in enumerate_all(d, cap):
            print(m)
        return 0
    if args.site is None:
        raise SystemExit(_usage("moves apply needs --site"))
    nd = apply_move(d, MoveSite.parse(args.site))
    sys.stdout.write(io.serialize_diagram(nd))
    return 0


def cmd_simplify(args) -> int:
    d = _load_diagram(args.file, RailDiagram, KnotoidDiagram)
    nd, path = simplify_path(d)
    sys.stdout.write(io.serialize_diagram(nd))
    for m in path:
        print(f"# {m}")
    return 0


def cmd_equiv(args) -> int:
    d1 = _load_diagram(args.a, RailDiagram, KnotoidDiagram)
    d2 = _load_diagram(args.b, RailDiagram, KnotoidDiagram)
    if type(d1) is not type(d2):
        raise ValueError("both files must hold the same kind of diagram")
    res = connect(d1, d2, args.max_crossings, args.max_depth, args.max_nodes)
    print(res.status)
    for m in res.path:
        print(m)
    if not res.connected:
        print(f"# {res.reason}; explored {res.explored[0]} + {res.explored[1]} diagrams")
        return 3
    return 0


def cmd_invariant(args) -> int:
    obj = _load(args.file)
    if args.kind == "f2":
        d = geometry.project_railplane(obj) if isinstance(obj, RailArc3D) else obj
        if not isinstance(d, RailDiagram):
            raise ValueError("the f2 word needs a rail diagram or an arc")
        w = f2_word(d)
        print(w if args.raw else f2_normal_form(w))
    elif args.kind == "bracket":
        k = geometry.project_perpendicular(obj) if isinstance(obj, RailArc3D) else obj
        if not isinstance(k, KnotoidDiagram):
            raise ValueError("the bracket needs a knotoid diagram or an arc")
        print(bracket(k) if args.raw else normalized_bracket(k))
    else:
        d = geometry.project_railplane(obj) if isinstance(obj, RailArc3D) else obj
        if isinstance(d, ThetaDiagram):
            raise ValueError("writhe is defined for rail and knotoid diagrams")
        print(writhe(d))
    return 0


def cmd_random_arc(args) -> int:
    sys.stdout.write(io.serialize_arc(geometry.random_arc(args.segments, args.seed)))
    return 0


def cmd_random_isotopy(args) -> int:
    b, moves = random_isotopy(_load_arc(args.file), args.steps, args.seed)
    sys.stdout.write(io.serialize_arc(b))
    for m in moves:
        print(f"# {m}")
    return 0


def cmd_decompose(args) -> int:
    sites = decompose_to_nice(_load_arc(args.file), TriangleMove3D.parse(args.move))
    for m in sites:
        print(m)
    return 0


def cmd_theta(args) -> int:
    if args.direction == "to":
        out = to_theta(_load_diagram(args.file, RailDiagram))
    else:
        out = from_theta(_load_diagram(args.file, ThetaDiagram))
    sys.stdout.write(io.serialize_diagram(out))
    return 0


def cmd_render(args) -> int:
    obj = _load(args.file)
    d = geometry.project_railplane(obj) if isinstance(obj, RailArc3D) else obj
    svg = render_svg(d, args.output)
    if args.output is None:
        sys.stdout.write(svg)
    return 0


def _usage(msg: str) -> int:
    print(f"usage error: {msg}", file=sys.stderr)
    return 2


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="railknotoids", description="Rail knotoid diagrams, arcs and moves.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", help="check an arc or diagram file")
    s.add_argument("file")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("project", help="project an arc to a diagram")
    s.add_argument("file")
    s.add_argument("--plane", choices=("rail", "perp"), default="rail")
    s.set_defaults(func=cmd_project)

    s = sub.add_parser("perturb", help="make both projections of an arc generic")
    s.add_argument("file")
    s.add_argument("--seed", type=int, required=True)
    s.set_defaults(func=cmd_perturb)

    s = sub.add_parser("moves", help="list or apply diagram moves")
    s.add_argument("action", choices=("list", "apply"))
    s.add_argument("file")
    s.add_argument("--site")
    s.add_argument("--max-crossings", type=int)
    s.set_defaults(func=cmd_moves)

    s = sub.add_parser("simplify", help="greedy reduction")
    s.add_argument("file")
    s.set_defaults(func=cmd_simplify)

    s = sub.add_parser("equiv", help="bounded search for a move path")
    s.add_argument("a")
    s.add_argument("b")
    s.add_argument("--max-crossings", type=int, required=True)
    s.add_argument("--max-depth", type=int, required=True)
    s.add_argument("--max-nodes", type=int, default=20000)
    s.set_defaults(func=cmd_equiv)

    s = sub.add_parser("invariant", help="f2 word, bracket or writhe")
    s.add_argument("file")
    s.add_argument("--kind", choices=("f2", "bracket", "writhe"), required=True)
    s.add_argument("--raw", action="store_true", help="unnormalized value")
    s.set_defaults(func=cmd_invariant)

    s = sub.add_parser("random-arc", help="sample a generic arc")
    s.add_argument("--segments", type=int, required=True)
    s.add_argument("--seed", type=int, required=True)
    s.set_defaults(func=cmd_random_arc)

    s = sub.add_parser("random-isotopy", help="apply random triangle moves")
    s.add_argument("file")
    s.add_argument("--steps", type=int, required=True)
    s.add_argument("--seed", type=int, required=True)
    s.set_defaults(func=cmd_random_isotopy)

    s = sub.add_parser("decompose", help="diagram moves realising one triangle move")
    s.add_argument("file")
    s.add_argument("--move", required=True, help='e.g. "SUBDIVIDE 0 1/2 1 1/2"')
    s.set_defaults(func=cmd_decompose)

    s = sub.add_parser("theta", help="convert to or from theta-curve diagrams")
    s.add_argument("direction", choices=("to", "from"))
    s.add_argument("file")
    s.set_defaults(func=cmd_theta)

    s = sub.add_parser("render", help="draw a diagram as SVG")
    s.add_argument("file")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_render)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except DOMAIN_ERRORS as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

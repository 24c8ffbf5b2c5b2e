"""Text formats: ``rail-arc v1`` for 3D arcs and ``rkd v1`` / ``knd v1`` /
``thd v1`` for diagrams.

Diagram files list darts as integers.  Serialization renumbers darts by the
canonical labeling, so equal diagrams give equal files.

    rkd v1
    inf: 0 3 2 1            # t1 b1 b2 t2
    alpha: 0:4 1:7 2:8 3:5 6:9
    vertex leg 4 5 6 arc=6 at=0,0
    vertex xing 10 11 12 13 over=10,12
    vertex railx 14 15 16 17 rail=2 over=arc

Theta files replace ``alpha:`` by one line per edge class (``U:``, ``M:``,
``L:``) and may carry ``connectors: a:b c:d``.
"""
from __future__ import annotations

from fractions import Fraction

from .geometry import RailArc3D
from .maps import (
    LOWER,
    MIDDLE,
    UPPER,
    DiagramError,
    Kind,
    KnotoidDiagram,
    RailDiagram,
    ThetaDiagram,
    Vertex,
    canonical_labeling,
)


class ParseError(ValueError):
    def __init__(self, line: int, col: int, msg: str):
        self.line, self.col = line, col
        super().__init__(f"line {line}, column {col}: {msg}")


def _lines(text: str):
    """(line number, stripped content) of the meaningful lines."""
    for n, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0].rstrip()
        if body.strip():
            yield n, body


def _col(raw: str, tok: str) -> int:
    return raw.find(tok) + 1


def parse_rational(tok: str, line: int = 0, col: int = 0) -> Fraction:
    try:
        p, _, q = tok.partition("/")
        num, den = int(p), int(q) if q else 1
    except ValueError:
        raise ParseError(line, col, f"malformed rational {tok!r}") from None
    if den == 0:
        raise ParseError(line, col, f"zero denominator in {tok!r}")
    return Fraction(num, den)


def format_rational(x: Fraction) -> str:
    return str(Fraction(x))


# ---------------------------------------------------------------------------
# arcs


def parse_arc(text: str) -> RailArc3D:
    lines = list(_lines(text))
    if not lines or lines[0][1].strip() != "rail-arc v1":
        n = lines[0][0] if lines else 1
        raise ParseError(n, 1, "expected header 'rail-arc v1'")
    pts = []
    for n, raw in lines[1:]:
        tok = raw.split()
        if tok[0] != "v":
            raise ParseError(n, _col(raw, tok[0]), f"unknown record {tok[0]!r}")
        if len(tok) != 4:
            raise ParseError(n, 1, "a vertex needs three coordinates")
        pts.append(tuple(parse_rational(t, n, _col(raw, t)) for t in tok[1:]))
    if len(pts) < 2:
        raise ParseError(lines[-1][0], 1, "an arc needs at least two vertices")
    return RailArc3D(pts)


def serialize_arc(a: RailArc3D) -> str:
    out = ["rail-arc v1"]
    out += ["v " + " ".join(format_rational(c) for c in v) for v in a.vertices]
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# diagrams

_HEADERS = {"rkd v1": RailDiagram, "knd v1": KnotoidDiagram, "thd v1": ThetaDiagram}
_NAMES = {RailDiagram: "rkd v1", KnotoidDiagram: "knd v1", ThetaDiagram: "thd v1"}
_CLASSES = (UPPER, MIDDLE, LOWER)


def _ints(toks, n, raw):
    out = []
    for t in toks:
        try:
            out.append(int(t))
        except ValueError:
            raise ParseError(n, _col(raw, t), f"expected a dart number, got {t!r}") from None
    return out


def _pairs(toks, n, raw):
    out = []
    for t in toks:
        parts = t.split(":")
        if len(parts) != 2:
            raise ParseError(n, _col(raw, t), f"expected a:b, got {t!r}")
        out.append(tuple(_ints(parts, n, raw)))
    return out


def parse_diagram(text: str):
    """Parse any of the three diagram formats; the result is validated."""
    lines = list(_lines(text))
    if not lines or lines[0][1].strip() not in _HEADERS:
        raise ParseError(lines[0][0] if lines else 1, 1, "expected header 'rkd v1', 'knd v1' or 'thd v1'")
    cls = _HEADERS[lines[0][1].strip()]
    alpha: dict = {}
    edge_class: dict = {}
    inf = None
    connectors = None
    vertices, hints = {}, {}

    def link(x, y, n, raw):
        if x in alpha or y in alpha or x == y:
            raise ParseError(n, 1, f"dart {x if x in alpha or x == y else y} paired twice")
        alpha[x], alpha[y] = y, x

    for n, raw in lines[1:]:
        key, _, rest = raw.strip().partition(" ")
        toks = rest.split()
        if key == "inf:":
            inf = _ints(toks, n, raw)
            if len(inf) != 4:
                raise ParseError(n, 1, "inf: needs four darts t1 b1 b2 t2")
        elif key == "alpha:":
            for x, y in _pairs(toks, n, raw):
                link(x, y, n, raw)
        elif key in ("U:", "M:", "L:") and cls is ThetaDiagram:
            for x, y in _pairs(toks, n, raw):
                link(x, y, n, raw)
                edge_class[x] = edge_class[y] = key[0]
        elif key == "connectors:" and cls is ThetaDiagram:
            pairs = _pairs(toks, n, raw)
            if len(pairs) != 2:
                raise ParseError(n, 1, "connectors: needs two pairs")
            connectors = tuple(pairs)
        elif key == "vertex":
            vid = len(vertices)
            v, hint = _parse_vertex(toks, n, raw)
            vertices[vid] = v
            if hint is not None:
                hints[vid] = hint
        else:
            raise ParseError(n, 1, f"unknown record {key!r}")
    if cls is RailDiagram:
        if inf is None:
            raise ParseError(lines[-1][0], 1, "missing 'inf:' line")
        t1, b1, b2, t2 = inf
        vertices[len(vertices)] = Vertex(Kind.INF, (t1, t2, b2, b1))
    elif inf is not None:
        raise ParseError(lines[0][0], 1, "'inf:' only belongs in rkd files")
    if cls is ThetaDiagram:
        d = ThetaDiagram(alpha, vertices, edge_class, connectors)
    else:
        d = cls(alpha, vertices, hints or None)
    try:
        rep = d.validate()
    except (KeyError, ValueError, TypeError) as e:
        raise DiagramError([f"structure: {e}"]) from None
    if not rep.ok:
        raise DiagramError(rep.violations)
    return d


_KINDS = {"leg": Kind.LEG, "head": Kind.HEAD, "xing": Kind.XING, "railx": Kind.RAILX, "node": Kind.NODE}


def _parse_vertex(toks, n, raw):
    if not toks or toks[0] not in _KINDS:
        raise ParseError(n, 1, f"unknown vertex kind {toks[0] if toks else ''!r}")
    kind = _KINDS[toks[0]]
    darts, attrs = [], {}
    for t in toks[1:]:
        if "=" in t:
            k, _, v = t.partition("=")
            attrs[k] = (v, _col(raw, t))
        else:
            darts.append(t)
    darts = tuple(_ints(darts, n, raw))
    fields = {}
    hint = None
    for k, (v, c) in attrs.items():
        if k == "arc" and kind in (Kind.LEG, Kind.HEAD):
            fields["arc"] = _ints([v], n, raw)[0]
        elif k == "over" and kind is Kind.XING:
            fields["over"] = frozenset(_ints(v.split(","), n, raw))
        elif k == "over" and kind is Kind.RAILX:
            if v not in ("arc", "rail"):
                raise ParseError(n, c, "railx over= must be 'arc' or 'rail'")
            fields["arc_over"] = v == "arc"
        elif k == "rail" and kind is Kind.RAILX:
            fields["rail"] = _ints([v], n, raw)[0]
        elif k == "node" and kind is Kind.NODE:
            fields["node"] = _ints([v], n, raw)[0]
        elif k == "at":
            xs = v.split(",")
            if len(xs) != 2:
                raise ParseError(n, c, "at= needs two coordinates")
            hint = tuple(parse_rational(x, n, c) for x in xs)
        else:
            raise ParseError(n, c, f"attribute {k!r} does not apply to {toks[0]}")
    return Vertex(kind, darts, **fields), hint


def _rotate_min(ds):
    i = ds.index(min(ds))
    return ds[i:] + ds[:i]


def serialize_diagram(d) -> str:
    """Canonically numbered text; parse(serialize(d)) has the same canonical code."""
    rep = d.validate()
    if not rep.ok:
        raise DiagramError(rep.violations)
    num = canonical_labeling(d)
    out = [_NAMES[type(d)]]
    pairs = sorted((num[x], num[y]) for x, y in d.alpha.items() if num[x] < num[y])
    if isinstance(d, RailDiagram):
        t1, b1, b2, t2 = d.inf
        out.append("inf: " + " ".join(str(num[x]) for x in (t1, b1, b2, t2)))
    if isinstance(d, ThetaDiagram):
        back = {y: x for x, y in num.items()}
        for c in _CLASSES:
            out.append(f"{c}: " + " ".join(f"{x}:{y}" for x, y in pairs if d.edge_class[back[x]] == c))
        if d.connectors is not None:
            out.append("connectors: " + " ".join(f"{num[x]}:{num[y]}" for x, y in d.connectors))
    else:
        out.append("alpha: " + " ".join(f"{x}:{y}" for x, y in pairs))
    hints = getattr(d, "hints", None) or {}
    rows = []
    for vid, v in d.vertices.items():
        if v.kind is Kind.INF:
            continue
        ds = _rotate_min(tuple(num[x] for x in v.darts))
        row = [v.kind.value, *map(str, ds)]
        if v.kind in (Kind.LEG, Kind.HEAD) and v.arc is not None and len(v.darts) > 1:
            row.append(f"arc={num[v.arc]}")
        if v.kind is Kind.XING:
            row.append("over=" + ",".join(str(x) for x in sorted(num[x] for x in v.over)))
        if v.kind is Kind.RAILX:
            row += [f"rail={v.rail}", "over=" + ("arc" if v.arc_over else "rail")]
        if v.kind is Kind.NODE:
            row.append(f"node={v.node}")
        if vid in hints:
            row.append("at=" + ",".join(format_rational(c) for c in hints[vid]))
        rows.append((ds[0], " ".join(row)))
    out += ["vertex " + r for _, r in sorted(rows)]
    return "\n".join(out) + "\n"


def read_diagram(path: str):
    with open(path, encoding="utf-8") as fh:
        return parse_diagram(fh.read())


def read_arc(path: str) -> RailArc3D:
    with open(path, encoding="utf-8") as fh:
        return parse_arc(fh.read())

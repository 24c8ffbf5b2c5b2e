"""SVG drawings of diagrams: red rails, black arc, gaps in under strands."""
from __future__ import annotations

import math

import networkx as nx

from .maps import LOWER, UPPER, DiagramError, Kind, KnotoidDiagram, RailDiagram, ThetaDiagram

SIZE = 400
MARGIN = 30
GAP = 9.0


def _planar_positions(d) -> dict:
    """Straight-line planar positions for vertices and for two points per edge."""
    G = nx.PlanarEmbedding()
    for vid, v in d.vertices.items():
        prev = None
        for x in v.darts:
            if prev is None:
                G.add_half_edge_first(("v", vid), ("s", x))
            else:
                G.add_half_edge_ccw(("v", vid), ("s", x), prev)
            prev = ("s", x)
    for x, y in d.alpha.items():
        vx = ("v", d.dart_vertex[x])
        G.add_half_edge_first(("s", x), vx)
        G.add_half_edge_ccw(("s", x), ("s", y), vx)
    G.check_structure()
    pos = nx.combinatorial_embedding_to_pos(G)
    out = {k: (float(p[0]), float(p[1])) for k, p in pos.items()}
    if _clockwise(d, out):
        out = {k: (-p[0], p[1]) for k, p in out.items()}
    return out


def _clockwise(d, pos) -> bool:
    """True if the layout reverses the rotation at some vertex of degree >= 3."""
    for vid, v in d.vertices.items():
        if len(v.darts) >= 3:
            c = pos[("v", vid)]
            ang = [math.atan2(pos[("s", x)][1] - c[1], pos[("s", x)][0] - c[0]) for x in v.darts[:3]]
            turn = sum(((ang[(i + 1) % 3] - ang[i]) % (2 * math.pi)) for i in range(3))
            return turn > 2 * math.pi + 1e-9
    return False


def _hint_positions(d: RailDiagram) -> dict | None:
    hints = d.hints or {}
    vids = [vid for vid, v in d.vertices.items() if v.kind is not Kind.INF]
    if not all(vid in hints for vid in vids):
        return None
    pos = {("v", vid): tuple(float(c) for c in hints[vid]) for vid in vids}
    return pos


def _fmt(p) -> str:
    return f"{p[0]:.2f},{p[1]:.2f}"


class _Canvas:
    def __init__(self, pos):
        xs = [p[0] for p in pos.values()]
        ys = [p[1] for p in pos.values()]
        self.x0, self.x1 = min(xs), max(xs)
        self.y0, self.y1 = min(ys), max(ys)
        span = max(self.x1 - self.x0, self.y1 - self.y0, 1e-9)
        self.k = (SIZE - 2 * MARGIN) / span

    def __call__(self, p):
        return (MARGIN + (p[0] - self.x0) * self.k, SIZE - MARGIN - (p[1] - self.y0) * self.k)


def _path(points, gaps) -> str:
    """Polyline through ``points``; indices in ``gaps`` are crossings where the stroke breaks."""
    cmds = [f"M {_fmt(points[0])}"]
    for i in range(1, len(points)):
        p = points[i]
        if i in gaps and 0 < i < len(points) - 1:
            q, r = points[i - 1], points[i + 1]
            a = _shift(p, q, GAP)
            b = _shift(p, r, GAP)
            cmds.append(f"L {_fmt(a)}")
            cmds.append(f"M {_fmt(b)}")
        else:
            cmds.append(f"L {_fmt(p)}")
    return " ".join(cmds)


def _shift(p, toward, dist):
    dx, dy = toward[0] - p[0], toward[1] - p[1]
    n = math.hypot(dx, dy) or 1.0
    dist = min(dist, n / 2)
    return (p[0] + dx / n * dist, p[1] + dy / n * dist)


def _walk_points(d, seq, pos, hinted, over_test):
    """Screen points and gap indices along a walk of (vid, in, out) triples."""
    pts, gaps = [], set()
    for k, (vid, din, dout) in enumerate(seq):
        if din is not None and not hinted:
            pts.append(pos[("s", d.alpha[din])])
            pts.append(pos[("s", din)])
        pts.append(pos[("v", vid)])
        if over_test(vid, din, dout) is False:
            gaps.add(len(pts) - 1)
    return pts, gaps


def render_svg(d, path: str | None = None) -> str:
    """Deterministic SVG text; written to ``path`` when given."""
    rep = d.validate()
    if not rep.ok:
        raise DiagramError(rep.violations)
    pos = _hint_positions(d) if isinstance(d, RailDiagram) else None
    hinted = pos is not None
    if not hinted:
        pos = _planar_positions(d)
    if hinted:
        zs = [p[1] for p in pos.values()]
        pad = 0.5 + 0.1 * (max(zs) - min(zs))
        pos[("top", 1)], pos[("bot", 1)] = (0.0, max(zs) + pad), (0.0, min(zs) - pad)
        pos[("top", 2)], pos[("bot", 2)] = (1.0, max(zs) + pad), (1.0, min(zs) - pad)
    cv = _Canvas(pos)
    spos = {k: cv(p) for k, p in pos.items()}
    body = []

    def railx_over(vid, din, dout, strand_is_arc):
        v = d.vertices[vid]
        if v.kind is Kind.RAILX:
            return v.arc_over if strand_is_arc else not v.arc_over
        if v.kind is Kind.XING:
            x = din if din is not None else dout
            return x in v.over
        return None

    if isinstance(d, RailDiagram):
        st = d.structure
        for rail in (1, 2):
            seq = [(vid, up, dn) for vid, up, dn in st.rails[rail]]
            if hinted:
                pts = [spos[("top", rail)]] + [spos[("v", vid)] for vid, _, _ in seq] + [spos[("bot", rail)]]
                gaps = {k + 1 for k, (vid, up, dn) in enumerate(seq) if railx_over(vid, up, dn, False) is False}
            else:
                inf = ("v", d.find(Kind.INF))
                pts, gaps = _walk_points(d, seq, spos, False, lambda vid, i, o: railx_over(vid, i, o, False))
                last = seq[-1][2]
                pts = [spos[inf], spos[("s", d.alpha[seq[0][1]])]] + pts
                pts += [spos[("s", last)], spos[("s", d.alpha[last])], spos[inf]]
                gaps = {g + 2 for g in gaps}
            body.append(f'<path class="rail" d="{_path(pts, gaps)}" stroke="red" fill="none" stroke-width="2"/>')
        arc = st.arc
    elif isinstance(d, KnotoidDiagram):
        arc = d.arc
    else:
        arc = None
        colours = {UPPER: "blue", "M": "black", LOWER: "green"}
        for cls, seq in sorted(d.walks.items()):
            pts, gaps = _walk_points(d, seq, spos, False, lambda vid, i, o: railx_over(vid, i, o, True))
            body.append(
                f'<path class="edge-{cls}" d="{_path(pts, gaps)}" stroke="{colours[cls]}" fill="none" stroke-width="2"/>'
            )
    if arc is not None:
        pts, gaps = _walk_points(d, arc, spos, hinted, lambda vid, i, o: railx_over(vid, i, o, True))
        body.append(f'<path class="arc" d="{_path(pts, gaps)}" stroke="black" fill="none" stroke-width="2"/>')
        for kind in (Kind.LEG, Kind.HEAD):
            c = spos[("v", d.find(kind))]
            body.append(f'<circle class="{kind.value}" cx="{c[0]:.2f}" cy="{c[1]:.2f}" r="4" fill="black"/>')
    svg = (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">\n'
        + "\n".join(body)
        + "\n</svg>\n"
    )
    if path is not None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(svg)
    return svg

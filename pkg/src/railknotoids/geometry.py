"""Exact rational geometry of rail arcs and their two projections.

Coordinates: the rail plane is y = 0, rail 1 is {x=0, y=0}, rail 2 is
{x=1, y=0}, both running along z.  The rail-plane projection keeps (x, z) and
puts the strand with larger y on top; the perpendicular projection keeps
(x, y) and puts the strand with larger z on top.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key

from .maps import DiagramError, Kind, KnotoidDiagram, RailDiagram, ValidationReport, Vertex

F = Fraction
RAIL_X = {1: F(0), 2: F(1)}


def frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        return Fraction(x).limit_denominator(10**9)
    return Fraction(x)


@dataclass(frozen=True)
class RailArc3D:
    vertices: tuple

    def __init__(self, vertices):
        object.__setattr__(self, "vertices", tuple(tuple(frac(c) for c in v) for v in vertices))

    @property
    def segments(self) -> list[tuple]:
        vs = self.vertices
        return [(vs[i], vs[i + 1]) for i in range(len(vs) - 1)]

    def __len__(self) -> int:
        return len(self.vertices)


class GeometryError(ValueError):
    """Non-generic or invalid input; ``violations`` names the failing features."""

    def __init__(self, violations):
        if isinstance(violations, str):
            violations = [violations]
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


# ---------------------------------------------------------------------------
# vector helpers


def sub(p, q):
    return tuple(a - b for a, b in zip(p, q))


def add(p, q):
    return tuple(a + b for a, b in zip(p, q))


def scale(p, t):
    return tuple(a * t for a in p)


def dot(p, q):
    return sum(a * b for a, b in zip(p, q))


def cross(u, v):
    return (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0])


def lerp(p, q, t):
    return tuple(a + (b - a) * t for a, b in zip(p, q))


def orient2d(a, b, c):
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def orient3d(a, b, c, d):
    return dot(cross(sub(b, a), sub(c, a)), sub(d, a))


def cross2(u, v):
    return u[0] * v[1] - u[1] * v[0]


def _drop_axis(n) -> int:
    return max(range(3), key=lambda i: abs(n[i]))


def _proj2(p, axis):
    return tuple(p[i] for i in range(3) if i != axis)


# ---------------------------------------------------------------------------
# exact intersection predicates


def _on_segment_2d(p, q, x) -> bool:
    """x on the closed segment pq, assuming collinearity."""
    return min(p[0], q[0]) <= x[0] <= max(p[0], q[0]) and min(p[1], q[1]) <= x[1] <= max(p[1], q[1])


def segments_meet_2d(p, q, r, s) -> bool:
    o1, o2 = orient2d(p, q, r), orient2d(p, q, s)
    o3, o4 = orient2d(r, s, p), orient2d(r, s, q)
    if o1 * o2 < 0 and o3 * o4 < 0:
        return True
    return (
        (o1 == 0 and _on_segment_2d(p, q, r))
        or (o2 == 0 and _on_segment_2d(p, q, s))
        or (o3 == 0 and _on_segment_2d(r, s, p))
        or (o4 == 0 and _on_segment_2d(r, s, q))
    )


def _param_on_line(p, q, x):
    """Parameter of x along p->q (x assumed on the line)."""
    d = sub(q, p)
    i = max(range(len(d)), key=lambda k: abs(d[k]))
    return (x[i] - p[i]) / d[i]


def segment_interval(p, q, u, v):
    """Parameters on pq of the closed intersection with segment uv, or None."""
    if p == q:
        raise GeometryError("degenerate segment")
    if orient3d(p, q, u, v) != 0:
        return None
    d1 = sub(q, p)
    if cross(d1, sub(u, p)) == (0, 0, 0) and cross(d1, sub(v, p)) == (0, 0, 0):
        tu, tv = _param_on_line(p, q, u), _param_on_line(p, q, v)
        lo, hi = max(F(0), min(tu, tv)), min(F(1), max(tu, tv))
        return (lo, hi) if lo <= hi else None
    n = cross(d1, sub(u, p))
    if n == (0, 0, 0):
        n = cross(d1, sub(v, p))
    ax = _drop_axis(n)
    P, Q, U, V = (_proj2(x, ax) for x in (p, q, u, v))
    if cross2(sub(Q, P), sub(V, U)) == 0:
        # parallel, not collinear; only a shared point with u == v can meet
        if u == v and orient2d(P, Q, U) == 0 and _on_segment_2d(P, Q, U):
            t = _param_on_line(P, Q, U)
            return (t, t)
        return None
    if not segments_meet_2d(P, Q, U, V):
        return None
    den = cross2(sub(Q, P), sub(V, U))
    t = cross2(sub(U, P), sub(V, U)) / den
    return (t, t)


def triangle_interval(p, q, a, b, c):
    """Parameters on pq of the closed intersection with triangle abc, or None."""
    n = cross(sub(b, a), sub(c, a))
    if n == (0, 0, 0):
        # degenerate triangle: the hull of its two farthest vertices
        pts = [a, b, c]
        u, v = max(((x, y) for x in pts for y in pts), key=lambda e: dot(sub(e[0], e[1]), sub(e[0], e[1])))
        if u == v:
            if orient3d(p, q, u, u) == 0 and cross(sub(q, p), sub(u, p)) == (0, 0, 0):
                t = _param_on_line(p, q, u)
                return (t, t) if 0 <= t <= 1 else None
            return None
        return segment_interval(p, q, u, v)
    dp, dq = dot(n, sub(p, a)), dot(n, sub(q, a))
    if dp == 0 and dq == 0:
        ax = _drop_axis(n)
        P, Q, A, B, C = (_proj2(x, ax) for x in (p, q, a, b, c))
        lo, hi = F(0), F(1)
        for U, V, W in ((A, B, C), (B, C, A), (C, A, B)):
            s = 1 if orient2d(U, V, W) > 0 else -1
            f0, f1 = s * orient2d(U, V, P), s * orient2d(U, V, Q)
            # need f0 + t (f1 - f0) >= 0
            if f0 == f1:
                if f0 < 0:
                    return None
                continue
            t0 = f0 / (f0 - f1)
            if f1 > f0:
                lo = max(lo, t0)
            else:
                hi = min(hi, t0)
            if lo > hi:
                return None
        return (lo, hi)
    if (dp > 0 and dq > 0) or (dp < 0 and dq < 0):
        return None
    t = dp / (dp - dq)
    x = lerp(p, q, t)
    ax = _drop_axis(n)
    X, A, B, C = (_proj2(y, ax) for y in (x, a, b, c))
    s = [orient2d(A, B, X), orient2d(B, C, X), orient2d(C, A, X)]
    if all(v >= 0 for v in s) or all(v <= 0 for v in s):
        return (t, t)
    return None


def rail_points(p, q, rail: int):
    """Intersection of segment pq with a rail line: None, ('point', t) or ('all',)."""
    rx = RAIL_X[rail]
    P, Q, R = (p[0], p[1]), (q[0], q[1]), (rx, F(0))
    if P == Q:
        return ("all",) if P == R else None
    if orient2d(P, Q, R) != 0 or not _on_segment_2d(P, Q, R):
        return None
    return ("point", _param_on_line(P, Q, R))


def rail_triangle_interval(a, b, c, rail: int):
    """z-interval of the rail line inside the closed triangle, or None."""
    zs = [x[2] for x in (a, b, c)]
    m = max(abs(z) for z in zs) + 1
    rx = RAIL_X[rail]
    lo, hi = (rx, F(0), -m), (rx, F(0), m)
    iv = triangle_interval(lo, hi, a, b, c)
    if iv is None:
        return None
    return tuple(-m + 2 * m * t for t in iv)


def point_segment_dist2(x, p, q):
    d = sub(q, p)
    dd = dot(d, d)
    t = F(0) if dd == 0 else min(F(1), max(F(0), dot(sub(x, p), d) / dd))
    e = sub(x, lerp(p, q, t))
    return dot(e, e)


def segment_dist2(p, q, r, s):
    """Exact squared distance between closed segments pq and rs."""
    if segment_interval(p, q, r, s) is not None:
        return F(0)
    best = min(
        point_segment_dist2(p, r, s),
        point_segment_dist2(q, r, s),
        point_segment_dist2(r, p, q),
        point_segment_dist2(s, p, q),
    )
    d1, d2, w = sub(q, p), sub(s, r), sub(p, r)
    a, b, c = dot(d1, d1), dot(d1, d2), dot(d2, d2)
    dd, e = dot(d1, w), dot(d2, w)
    den = a * c - b * b
    if den:
        t = (b * e - c * dd) / den
        u = (a * e - b * dd) / den
        if 0 < t < 1 and 0 < u < 1:
            g = sub(lerp(p, q, t), lerp(r, s, u))
            best = min(best, dot(g, g))
    return best


# ---------------------------------------------------------------------------
# arc validity


def validate_arc(a: RailArc3D) -> ValidationReport:
    out = []
    vs = a.vertices
    if len(vs) < 2:
        return ValidationReport(("fewer than one segment",))
    if any(len(v) != 3 for v in vs):
        return ValidationReport(("vertex without three coordinates",))
    if any(vs[i] == vs[i + 1] for i in range(len(vs) - 1)):
        return ValidationReport(("degenerate segment",))
    if not (vs[0][0] == 0 and vs[0][1] == 0):
        out.append("first vertex not on rail 1")
    if not (vs[-1][0] == 1 and vs[-1][1] == 0):
        out.append("last vertex not on rail 2")
    segs = a.segments
    n = len(segs)
    touch = False
    for i, (p, q) in enumerate(segs):
        for rail in (1, 2):
            hit = rail_points(p, q, rail)
            if hit is None:
                continue
            allowed = (rail == 1 and i == 0 and hit == ("point", F(0))) or (
                rail == 2 and i == n - 1 and hit == ("point", F(1))
            )
            if not allowed:
                touch = True
    if touch:
        out.append("interior touches rail")
    embedded = True
    for i in range(n):
        for j in range(i + 1, n):
            p, q = segs[i]
            r, s = segs[j]
            if j == i + 1:
                u, w = sub(q, p), sub(s, r)
                if cross(u, w) == (0, 0, 0) and dot(u, w) < 0:
                    embedded = False
            elif segment_interval(p, q, r, s) is not None:
                embedded = False
            if not embedded:
                break
        if not embedded:
            break
    if not embedded:
        out.append("not embedded")
    return ValidationReport(tuple(out))


# ---------------------------------------------------------------------------
# projections


def _railplane(p):
    return (p[0], p[2]), p[1]


def _perpendicular(p):
    return (p[0], p[1]), p[2]


_PROJ = {"rail": _railplane, "perp": _perpendicular}


@dataclass
class _Projected:
    pts: list  # 2D vertex images
    heights: list
    xings: list  # (i, t, j, u, point)
    railx: list  # (i, t, rail, point, height)


def _segment_cross_2d(p, q, r, s):
    den = cross2(sub(q, p), sub(s, r))
    if den == 0:
        return None
    t = cross2(sub(r, p), sub(s, r)) / den
    u = cross2(sub(r, p), sub(q, p)) / den
    return t, u


def _genericity(a: RailArc3D, plane: str):
    """(violations, projected data)."""
    proj = _PROJ[plane]
    pts, hs = zip(*(proj(v) for v in a.vertices))
    pts, hs = list(pts), list(hs)
    n = len(pts) - 1
    out = []
    for i in range(n):
        if pts[i] == pts[i + 1]:
            out.append(f"segment projects to a point (segment {i})")
    if out:
        return out, None
    for k, x in enumerate(pts):
        for i in range(n):
            if k in (i, i + 1):
                continue
            if orient2d(pts[i], pts[i + 1], x) == 0 and _on_segment_2d(pts[i], pts[i + 1], x):
                out.append(f"vertex {k} projects onto segment {i}")
    if plane == "rail":
        for k in range(1, n):
            if pts[k][0] in (0, 1):
                out.append(f"vertex {k} projects onto a rail line")
    xings, railx = [], []
    for i in range(n):
        for j in range(i + 2, n):
            p, q, r, s = pts[i], pts[i + 1], pts[j], pts[j + 1]
            if not segments_meet_2d(p, q, r, s):
                continue
            tu = _segment_cross_2d(p, q, r, s)
            if tu is None:
                out.append(f"segments {i} and {j} overlap in projection")
                continue
            t, u = tu
            if not (0 < t < 1 and 0 < u < 1):
                continue  # already reported as a vertex on a segment
            hi = hs[i] + (hs[i + 1] - hs[i]) * t
            hj = hs[j] + (hs[j + 1] - hs[j]) * u
            if hi == hj:
                out.append(f"segments {i} and {j} meet")
            xings.append((i, t, j, u, lerp(p, q, t)))
    if plane == "rail":
        for i in range(n):
            p, q = pts[i], pts[i + 1]
            for rail, rx in RAIL_X.items():
                if (p[0] - rx) * (q[0] - rx) < 0:
                    t = (rx - p[0]) / (q[0] - p[0])
                    h = hs[i] + (hs[i + 1] - hs[i]) * t
                    if h == 0:
                        out.append(f"segment {i} meets rail {rail}")
                    railx.append((i, t, rail, lerp(p, q, t), h))
    doubles = [x[4] for x in xings] + [x[3] for x in railx]
    if len(set(doubles)) != len(doubles):
        out.append("double points share a projected position (triple point)")
    return out, _Projected(pts, hs, xings, railx)


def is_generic_railplane(a: RailArc3D) -> ValidationReport:
    rep = validate_arc(a)
    if not rep.ok:
        return rep
    out, _ = _genericity(a, "rail")
    return ValidationReport(tuple(out))


def is_generic_perpendicular(a: RailArc3D) -> ValidationReport:
    rep = validate_arc(a)
    if not rep.ok:
        return rep
    out, _ = _genericity(a, "perp")
    return ValidationReport(tuple(out))


def _angle_cmp(u, v) -> int:
    hu = 0 if (u[1] > 0 or (u[1] == 0 and u[0] > 0)) else 1
    hv = 0 if (v[1] > 0 or (v[1] == 0 and v[0] > 0)) else 1
    if hu != hv:
        return hu - hv
    c = cross2(u, v)
    return -1 if c > 0 else (1 if c < 0 else 0)


def _ccw(dirs: dict) -> tuple:
    """Darts sorted counterclockwise by direction vector."""
    return tuple(sorted(dirs, key=cmp_to_key(lambda x, y: _angle_cmp(dirs[x], dirs[y]))))


class _Builder:
    def __init__(self):
        self.alpha = {}
        self.dirs = {}  # vid -> {dart: direction}
        self.n = 0

    def dart(self, vid, direction) -> int:
        d = self.n
        self.n += 1
        self.dirs.setdefault(vid, {})[d] = direction
        return d

    def link(self, x, y):
        self.alpha[x], self.alpha[y] = y, x


def _arc_layout(a: RailArc3D, P: _Projected, with_rails: bool):
    """Arc-ordered events: list of (vid, segment, param, pass info)."""
    n = len(P.pts) - 1
    per_seg = {i: [] for i in range(n)}
    for k, (i, t, j, u, _) in enumerate(P.xings):
        per_seg[i].append((t, ("x", k)))
        per_seg[j].append((u, ("x", k)))
    if with_rails:
        for k, (i, t, rail, _, _) in enumerate(P.railx):
            per_seg[i].append((t, ("r", k)))
    order = []
    for i in range(n):
        for t, key in sorted(per_seg[i]):
            order.append((i, t, key))
    return order


def project_railplane(a: RailArc3D) -> RailDiagram:
    """Rail knotoid diagram of a generic arc; over = larger y, arc over a rail iff y > 0."""
    rep = validate_arc(a)
    if not rep.ok:
        raise GeometryError(rep.violations)
    errs, P = _genericity(a, "rail")
    if errs:
        raise GeometryError(errs)
    pts, n = P.pts, len(P.pts) - 1
    seg_dir = [sub(pts[i + 1], pts[i]) for i in range(n)]
    B = _Builder()
    INF, LEG, HEAD = 0, 1, 2
    vid_of = {}
    kinds = {}
    hints = {LEG: pts[0], HEAD: pts[-1]}
    next_vid = 3
    for k, x in enumerate(P.xings):
        vid_of[("x", k)] = next_vid
        kinds[next_vid] = ("x", k)
        hints[next_vid] = x[4]
        next_vid += 1
    for k, r in enumerate(P.railx):
        vid_of[("r", k)] = next_vid
        kinds[next_vid] = ("r", k)
        hints[next_vid] = r[3]
        next_vid += 1
    order = _arc_layout(a, P, True)
    # arc darts
    leg_arc = B.dart(LEG, seg_dir[0])
    prev = leg_arc
    passes = {}  # vid -> list of (in dart, out dart, segment, param)
    for i, t, key in order:
        vid = vid_of[key]
        din = B.dart(vid, scale(seg_dir[i], -1))
        dout = B.dart(vid, seg_dir[i])
        B.link(prev, din)
        passes.setdefault(vid, []).append((din, dout, i, t))
        prev = dout
    head_arc = B.dart(HEAD, scale(seg_dir[-1], -1))
    B.link(prev, head_arc)
    # rails, top to bottom
    up, down = (F(0), F(1)), (F(0), F(-1))
    inf_darts = {}
    for rail in (1, 2):
        members = [(pts[0][1], LEG)] if rail == 1 else [(pts[-1][1], HEAD)]
        for k, r in enumerate(P.railx):
            if r[2] == rail:
                members.append((r[3][1], vid_of[("r", k)]))
        members.sort(key=lambda m: -m[0])
        top = B.dart(INF, None)
        prev = top
        for _, vid in members:
            du = B.dart(vid, up)
            dd = B.dart(vid, down)
            B.link(prev, du)
            prev = dd
        bottom = B.dart(INF, None)
        B.link(prev, bottom)
        inf_darts[rail] = (top, bottom)
    vertices = {}
    (t1, b1), (t2, b2) = inf_darts[1], inf_darts[2]
    vertices[INF] = Vertex(Kind.INF, (t1, t2, b2, b1))
    vertices[LEG] = Vertex(Kind.LEG, _ccw(B.dirs[LEG]), arc=leg_arc)
    vertices[HEAD] = Vertex(Kind.HEAD, _ccw(B.dirs[HEAD]), arc=head_arc)
    for vid, key in kinds.items():
        rot = _ccw(B.dirs[vid])
        if key[0] == "x":
            (p1, p2) = passes[vid]
            h = [P.heights[p[2]] + (P.heights[p[2] + 1] - P.heights[p[2]]) * p[3] for p in (p1, p2)]
            top_pass = p1 if h[0] > h[1] else p2
            vertices[vid] = Vertex(Kind.XING, rot, over=frozenset(top_pass[:2]))
        else:
            r = P.railx[key[1]]
            vertices[vid] = Vertex(Kind.RAILX, rot, rail=r[2], arc_over=r[4] > 0)
    d = RailDiagram(B.alpha, vertices, hints)
    rep = d.validate()
    if not rep.ok:
        raise DiagramError(["projection produced an invalid diagram", *rep.violations])
    return d


def project_perpendicular(a: RailArc3D) -> KnotoidDiagram:
    """Knotoid diagram seen along the rails; over = larger z."""
    rep = validate_arc(a)
    if not rep.ok:
        raise GeometryError(rep.violations)
    errs, P = _genericity(a, "perp")
    if errs:
        raise GeometryError(errs)
    pts, n = P.pts, len(P.pts) - 1
    seg_dir = [sub(pts[i + 1], pts[i]) for i in range(n)]
    B = _Builder()
    LEG, HEAD = 0, 1
    vid_of, hints = {}, {LEG: pts[0], HEAD: pts[-1]}
    for k, x in enumerate(P.xings):
        vid_of[("x", k)] = k + 2
        hints[k + 2] = x[4]
    order = _arc_layout(a, P, False)
    leg = B.dart(LEG, seg_dir[0])
    prev = leg
    passes = {}
    for i, t, key in order:
        vid = vid_of[key]
        din = B.dart(vid, scale(seg_dir[i], -1))
        dout = B.dart(vid, seg_dir[i])
        B.link(prev, din)
        passes.setdefault(vid, []).append((din, dout, i, t))
        prev = dout
    head = B.dart(HEAD, scale(seg_dir[-1], -1))
    B.link(prev, head)
    vertices = {LEG: Vertex(Kind.LEG, (leg,)), HEAD: Vertex(Kind.HEAD, (head,))}
    for vid, (p1, p2) in passes.items():
        h = [P.heights[p[2]] + (P.heights[p[2] + 1] - P.heights[p[2]]) * p[3] for p in (p1, p2)]
        top_pass = p1 if h[0] > h[1] else p2
        vertices[vid] = Vertex(Kind.XING, _ccw(B.dirs[vid]), over=frozenset(top_pass[:2]))
    k = KnotoidDiagram(B.alpha, vertices, hints)
    rep = k.validate()
    if not rep.ok:
        raise DiagramError(["projection produced an invalid diagram", *rep.violations])
    return k


def crossing_counts(a: RailArc3D, plane: str = "rail") -> tuple[int, int]:
    """(arc self-crossings, arc-rail crossings) of a generic projection."""
    errs, P = _genericity(a, plane)
    if errs:
        raise GeometryError(errs)
    return len(P.xings), len(P.railx)


def rail_word_geometric(a: RailArc3D) -> tuple[int, ...]:
    """F2 letters read straight from coordinates: front rail passes, signed by x-direction."""
    errs, P = _genericity(a, "rail")
    if errs:
        raise GeometryError(errs)
    out = []
    for i, t, rail, _, h in sorted(P.railx, key=lambda r: (r[0], r[1])):
        if h > 0:
            dx = P.pts[i + 1][0] - P.pts[i][0]
            out.append(rail if dx > 0 else -rail)
    return tuple(out)


def crossing_signs_geometric(a: RailArc3D, plane: str = "rail") -> list[int]:
    """Sign per self-crossing from the 2D cross product of over and under directions."""
    errs, P = _genericity(a, plane)
    if errs:
        raise GeometryError(errs)
    out = []
    for i, t, j, u, _ in P.xings:
        hi = P.heights[i] + (P.heights[i + 1] - P.heights[i]) * t
        hj = P.heights[j] + (P.heights[j + 1] - P.heights[j]) * u
        di, dj = sub(P.pts[i + 1], P.pts[i]), sub(P.pts[j + 1], P.pts[j])
        o, w = (di, dj) if hi > hj else (dj, di)
        out.append(1 if cross2(o, w) > 0 else -1)
    return out


# ---------------------------------------------------------------------------
# perturbation and random arcs


def feature_distance2(a: RailArc3D) -> Fraction:
    """Squared minimum distance between non-adjacent segments and from segments to rails."""
    segs = a.segments
    n = len(segs)
    best = None

    def take(v):
        nonlocal best
        best = v if best is None else min(best, v)

    for i in range(n):
        for j in range(i + 2, n):
            take(segment_dist2(*segs[i], *segs[j]))
    for i, (p, q) in enumerate(segs):
        for rail, rx in RAIL_X.items():
            R = (rx, F(0))
            P2, Q2 = (p[0], p[1]), (q[0], q[1])
            if rail == 1 and i == 0:
                if n > 1:
                    take(point_segment_dist2(Q2, R, R))
                continue
            if rail == 2 and i == n - 1:
                take(point_segment_dist2(P2, R, R))
                continue
            take(point_segment_dist2(R, P2, Q2))
    return F(0) if best is None else best


def _sqrt_below(x: Fraction) -> Fraction:
    """A positive rational not exceeding sqrt(x) (x > 0)."""
    k = 8
    while True:
        s = F(math.isqrt(math.floor(x * 4**k)), 2**k)
        if s > 0:
            return s
        k += 8


def perturb(a: RailArc3D, seed: int, max_tries: int = 200) -> RailArc3D:
    """Displace interior vertices so both projections become generic."""
    rep = validate_arc(a)
    if not rep.ok:
        raise GeometryError(rep.violations)
    if is_generic_railplane(a).ok and is_generic_perpendicular(a).ok:
        return a
    d2 = feature_distance2(a)
    if d2 == 0:
        raise GeometryError("perturbation bound collapses to zero")
    c = _sqrt_below(d2) / 8  # per-coordinate bound; sqrt(3) * c < delta / 4
    rng = random.Random(seed)
    K = 1000
    for _ in range(max_tries):
        vs = list(a.vertices)
        for k in range(1, len(vs) - 1):
            vs[k] = tuple(x + c * F(rng.randint(-K, K), K) for x in vs[k])
        b = RailArc3D(vs)
        if is_generic_railplane(b).ok and is_generic_perpendicular(b).ok:
            return b
    raise GeometryError("perturbation did not reach a generic arc")


def random_arc(segments: int, seed: int, max_tries: int = 1000) -> RailArc3D:
    """A random valid arc, generic for both projections, with the given number of segments."""
    rng = random.Random(seed)
    D = 24

    def coord(lo, hi):
        return F(rng.randint(lo * D, hi * D), D)

    for _ in range(max_tries):
        vs = [(F(0), F(0), coord(-1, 1))]
        for _ in range(segments - 1):
            vs.append((coord(-1, 2), coord(-1, 1), coord(-1, 1)))
        vs.append((F(1), F(0), coord(-1, 1)))
        a = RailArc3D(vs)
        if is_generic_railplane(a).ok and is_generic_perpendicular(a).ok:
            return a
    raise GeometryError("could not sample a generic arc")

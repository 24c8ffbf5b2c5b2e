"""Triangle moves on rail arcs, random isotopies and their decomposition
into single diagram moves."""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .geometry import (
    RAIL_X,
    GeometryError,
    RailArc3D,
    _on_segment_2d,
    _segment_cross_2d,
    frac,
    is_generic_perpendicular,
    is_generic_railplane,
    lerp,
    orient2d,
    project_railplane,
    rail_triangle_interval,
    segments_meet_2d,
    triangle_interval,
    validate_arc,
)
from .maps import ValidationReport, canonical_code
from .moves import _apply, enumerate_creations, enumerate_reductions, inverse_site, translate_site
from .search import connect

F = Fraction
SUBDIVIDE, MERGE, SPACE_SLIDE = "SUBDIVIDE", "MERGE", "SPACE_SLIDE"
DECOMPOSE_SCOPE = 3


@dataclass(frozen=True)
class TriangleMove3D:
    kind: str
    index: int | None = None  # edge for SUBDIVIDE, vertex for MERGE
    end: str | None = None  # "leg" or "head" for SPACE_SLIDE
    point: tuple | None = None

    def __post_init__(self):
        if self.point is not None:
            object.__setattr__(self, "point", tuple(frac(c) for c in self.point))

    def __str__(self) -> str:
        pt = " ".join(str(c) for c in self.point) if self.point else ""
        if self.kind == SUBDIVIDE:
            return f"SUBDIVIDE {self.index} {pt}"
        if self.kind == MERGE:
            return f"MERGE {self.index}"
        return f"SPACE_SLIDE {self.end} {pt}"

    @classmethod
    def parse(cls, text: str) -> "TriangleMove3D":
        tok = text.split()
        try:
            if tok[0] == SUBDIVIDE and len(tok) == 5:
                return cls(SUBDIVIDE, index=int(tok[1]), point=tuple(F(x) for x in tok[2:]))
            if tok[0] == MERGE and len(tok) == 2:
                return cls(MERGE, index=int(tok[1]))
            if tok[0] == SPACE_SLIDE and len(tok) == 5 and tok[1] in ("leg", "head"):
                return cls(SPACE_SLIDE, end=tok[1], point=tuple(F(x) for x in tok[2:]))
        except (ValueError, ZeroDivisionError):
            pass
        raise ValueError(f"bad triangle move {text!r}")


class IsotopyError(ValueError):
    pass


def _frame(a: RailArc3D, m: TriangleMove3D):
    """(A, B, C, replaced segment indices, resulting vertex list) or a violation string."""
    vs = list(a.vertices)
    n = len(vs) - 1
    if m.kind == SUBDIVIDE:
        i = m.index
        if i is None or not 0 <= i < n or m.point is None:
            return "edge index out of range"
        return vs[i], vs[i + 1], m.point, (i,), vs[: i + 1] + [m.point] + vs[i + 1 :]
    if m.kind == MERGE:
        j = m.index
        if j is None or not 0 < j < n:
            return "vertex index out of range"
        return vs[j - 1], vs[j + 1], vs[j], (j - 1, j), vs[:j] + vs[j + 1 :]
    if m.kind == SPACE_SLIDE:
        if m.end not in ("leg", "head") or m.point is None:
            return "bad space slide"
        if m.end == "leg":
            return vs[0], vs[1], m.point, (0,), [m.point] + vs[1:]
        return vs[-1], vs[-2], m.point, (n - 1,), vs[:-1] + [m.point]
    return f"unknown move kind {m.kind}"


def triangle_move_valid(a: RailArc3D, m: TriangleMove3D) -> ValidationReport:
    rep = validate_arc(a)
    if not rep.ok:
        return rep
    fr = _frame(a, m)
    if isinstance(fr, str):
        return ValidationReport((fr,))
    A, B, C, replaced, new = fr
    out = []
    if C in (A, B):
        return ValidationReport(("degenerate move",))
    segs = a.segments
    for k, (p, q) in enumerate(segs):
        if k in replaced:
            continue
        iv = triangle_interval(p, q, A, B, C)
        if iv is None:
            continue
        allowed = {(F(0), F(0)) for x in (p,) if x in (A, B)} | {(F(1), F(1)) for x in (q,) if x in (A, B)}
        if iv not in allowed:
            out.append("triangle meets arc")
            break
    first, last = a.vertices[0], a.vertices[-1]
    for rail in (1, 2):
        iv = rail_triangle_interval(A, B, C, rail)
        if m.kind == SPACE_SLIDE and rail == (1 if m.end == "leg" else 2):
            on_rail = C[0] == RAIL_X[rail] and C[1] == 0
            if not on_rail:
                out.append("new point not on the rail")
            elif iv != (min(A[2], C[2]), max(A[2], C[2])):
                out.append("triangle meets rail")
            continue
        if iv is None:
            continue
        ends = {1: first, 2: last}[rail]
        if not (ends in (A, B) and iv == (ends[2], ends[2])):
            out.append("triangle meets rail")
    if out:
        return ValidationReport(tuple(out))
    res = validate_arc(RailArc3D(new))
    return ValidationReport(tuple(f"result: {v}" for v in res.violations))


def apply_triangle(a: RailArc3D, m: TriangleMove3D) -> RailArc3D:
    rep = triangle_move_valid(a, m)
    if not rep.ok:
        raise IsotopyError(f"invalid move {m}: {rep}")
    return RailArc3D(_frame(a, m)[4])


# ---------------------------------------------------------------------------
# random isotopies

MAX_REJECTIONS = 2000
MAX_VERTICES = 16


def _rand_frac(rng, lo: Fraction, hi: Fraction, den: int = 32) -> Fraction:
    a, b = int(lo * den), int(hi * den)
    return F(rng.randint(a, b), den)


def propose_move(a: RailArc3D, rng: random.Random) -> TriangleMove3D:
    """One random candidate move; apexes lie in a box around the chosen edge."""
    vs = a.vertices
    n = len(vs) - 1
    r = rng.random()
    if r < 0.25 and n > 1:
        return TriangleMove3D(MERGE, index=rng.randint(1, n - 1))
    if r < 0.45:
        end = rng.choice(("leg", "head"))
        A = vs[0] if end == "leg" else vs[-1]
        dz = _rand_frac(rng, F(-1), F(1))
        return TriangleMove3D(SPACE_SLIDE, end=end, point=(A[0], A[1], A[2] + dz))
    if len(vs) >= MAX_VERTICES and n > 1:
        return TriangleMove3D(MERGE, index=rng.randint(1, n - 1))
    i = rng.randrange(n)
    A, B = vs[i], vs[i + 1]
    h = max(F(1, 2), max(abs(x - y) for x, y in zip(A, B)) / 2)
    mid = lerp(A, B, _rand_frac(rng, F(1, 4), F(3, 4)))
    C = tuple(c + _rand_frac(rng, -h, h) for c in mid)
    return TriangleMove3D(SUBDIVIDE, index=i, point=C)


def _acceptable(a, m) -> RailArc3D | None:
    if not triangle_move_valid(a, m).ok:
        return None
    b = RailArc3D(_frame(a, m)[4])
    if is_generic_railplane(b).ok and is_generic_perpendicular(b).ok:
        return b
    return None


def random_isotopy(a: RailArc3D, steps: int, seed: int) -> tuple[RailArc3D, list[TriangleMove3D]]:
    """Apply ``steps`` random valid moves, keeping both projections generic."""
    rep = validate_arc(a)
    if not rep.ok:
        raise GeometryError(rep.violations)
    rng = random.Random(seed)
    moves = []
    for step in range(steps):
        for _ in range(MAX_REJECTIONS):
            m = propose_move(a, rng)
            b = _acceptable(a, m)
            if b is not None:
                break
        else:
            raise IsotopyError(f"step {step}: gave up after {MAX_REJECTIONS} rejected proposals")
        a = b
        moves.append(m)
    return a, moves


def replay_isotopy(a: RailArc3D, moves) -> RailArc3D:
    for m in moves:
        a = apply_triangle(a, m)
    return a


# ---------------------------------------------------------------------------
# decomposition into single diagram moves


def _p2(p):
    return (p[0], p[2])


def _fixed_features(a: RailArc3D, skip_segments, skip_vertices):
    """Projected points of the part of the picture that stays put."""
    vs = a.vertices
    segs = [(k, _p2(p), _p2(q)) for k, (p, q) in enumerate(a.segments) if k not in skip_segments]
    pts = [("v", k, _p2(v)) for k, v in enumerate(vs) if k not in skip_vertices]
    for x in range(len(segs)):
        for y in range(x + 1, len(segs)):
            (i, p, q), (j, r, s) = segs[x], segs[y]
            if abs(i - j) < 2 or not segments_meet_2d(p, q, r, s):
                continue
            tu = _segment_cross_2d(p, q, r, s)
            if tu and 0 < tu[0] < 1 and 0 < tu[1] < 1:
                pts.append(("x", (i, j), lerp(p, q, tu[0])))
    for i, p, q in segs:
        for rail, rx in RAIL_X.items():
            if (p[0] - rx) * (q[0] - rx) < 0:
                t = (rx - p[0]) / (q[0] - p[0])
                pts.append(("r", (i, rail), lerp(p, q, t)))
    return segs, pts


def _in_triangle(x, a, b, c) -> bool:
    s = [orient2d(a, b, x), orient2d(b, c, x), orient2d(c, a, x)]
    if all(v == 0 for v in s):
        return False
    return all(v >= 0 for v in s) or all(v <= 0 for v in s)


def scope_features(a: RailArc3D, m: TriangleMove3D) -> int:
    """Number of fixed vertices, crossings and rail crossings inside the projected triangle."""
    fr = _frame(a, m)
    if isinstance(fr, str):
        raise IsotopyError(fr)
    A, B, C, replaced, _ = fr
    skip_v = {k for k, v in enumerate(a.vertices) if v in (A, B, C)}
    _, pts = _fixed_features(a, set(replaced), skip_v)
    tri = (_p2(A), _p2(B), _p2(C))
    return sum(1 for _, _, x in pts if _in_triangle(x, *tri))


def _events(segs, pts, pivots, M2, C2):
    """Critical parameters of the sweep P_t = M + t (C - M), tagged by source."""
    out = []

    def at(f0, f1):
        return None if f0 == f1 else f0 / (f0 - f1)

    for k, U, V in segs:
        f0, f1 = orient2d(U, V, M2), orient2d(U, V, C2)
        if f0 == f1 == 0:
            return None
        t = at(f0, f1)
        if t is not None and 0 < t <= 1 and _on_segment_2d(U, V, lerp(M2, C2, t)):
            out.append((t, ("seg", k)))
    for rail, rx in RAIL_X.items():
        if M2[0] != C2[0]:
            t = (rx - M2[0]) / (C2[0] - M2[0])
            if 0 < t <= 1:
                out.append((t, ("rail", rail)))
    for pv in pivots:
        for tag, key, Q in pts:
            f0, f1 = orient2d(pv, M2, Q), orient2d(pv, C2, Q)
            t = at(f0, f1)
            if t is None:
                if f0 == 0 and _on_segment_2d(pv, M2, Q):
                    return None
                continue
            if 0 < t <= 1 and _on_segment_2d(pv, lerp(M2, C2, t), Q):
                out.append((t, (tag, key, pv)))
    return out


def _samples(events) -> list:
    ts = sorted({t for t, _ in events})
    mids = [F(0)]
    for x, y in zip([F(0)] + ts, ts + [F(1)]):
        if x != y:
            mids.append((x + y) / 2)
    mids.append(F(1))
    return sorted(set(mids))


def _sweep(a: RailArc3D, m: TriangleMove3D):
    """Intermediate arcs between a and its image, one projected event apart."""
    fr = _frame(a, m)
    if isinstance(fr, str):
        raise IsotopyError(fr)
    A, B, C, replaced, _ = fr
    vs = list(a.vertices)
    n = len(vs) - 1
    if m.kind == SPACE_SLIDE:
        skip_v = {0} if m.end == "leg" else {n}
        skip_v |= {1} if m.end == "leg" else {n - 1}
        segs, pts = _fixed_features(a, set(replaced), skip_v)
        ev = _events(segs, pts, [_p2(B)], _p2(A), _p2(C))
        if ev is None:
            raise IsotopyError("degenerate sweep")

        def build(t):
            P = lerp(A, C, t)
            return RailArc3D([P] + vs[1:] if m.end == "leg" else vs[:-1] + [P])

        return build, ev
    i = replaced[0]
    skip_v = {i, i + 1}
    segs, pts = _fixed_features(a, {i}, skip_v)
    best = None
    for num, den in ((1, 2), (1, 3), (2, 3), (1, 4), (3, 4), (2, 5), (3, 5), (1, 5), (4, 5), (3, 7), (4, 7)):
        M = lerp(A, B, F(num, den))
        start = RailArc3D(vs[: i + 1] + [M] + vs[i + 1 :])
        if not is_generic_railplane(start).ok:
            continue
        ev = _events(segs, pts, [_p2(A), _p2(B)], _p2(M), _p2(C))
        if ev is None:
            continue
        clash = len({t for t, _ in ev}) != len(ev)
        if best is None or (not clash and best[2]):
            best = (M, ev, clash)
        if not clash:
            break
    if best is None:
        raise IsotopyError("no usable subdivision point on the edge")
    M, ev, _ = best

    def build(t):
        return RailArc3D(vs[: i + 1] + [lerp(M, C, t)] + vs[i + 1 :])

    return build, ev


def _match(R, D):
    """Diagram moves from R to D: one move, else a small bounded search.

    Several simultaneous features (an end edge swinging across its own rail
    past other rail crossings, say) make one sweep event worth a few moves.
    """
    target = canonical_code(D)
    delta = D.crossing_count() - R.crossing_count()
    for m in enumerate_reductions(R) + enumerate_creations(R, R.crossing_count() + 2):
        if m.delta == delta:
            nd, _ = _apply(R, m)
            if canonical_code(nd) == target:
                return [(m, nd)]
    cap = max(R.crossing_count(), D.crossing_count()) + 2
    res = connect(R, D, max_crossings=cap, max_depth=2 * DECOMPOSE_SCOPE + 2)
    if not res.connected:
        return None
    out, cur = [], R
    for m in res.path:
        cur, _ = _apply(cur, m)
        out.append((m, cur))
    return out


def _decompose_forward(a: RailArc3D, m: TriangleMove3D):
    build, ev = _sweep(a, m)
    R = project_railplane(a)
    path = [(None, R)]
    prev = R
    for s in _samples(ev)[1:]:
        arc = build(s)
        if not is_generic_railplane(arc).ok:
            raise IsotopyError(f"sweep sample {s} is not generic")
        D = project_railplane(arc)
        target = canonical_code(D)
        if target == canonical_code(prev):
            continue
        steps = _match(prev, D)
        if steps is None:
            raise IsotopyError(f"no diagram move explains the event before t={s}")
        for site, nd in steps:
            path.append((site, nd))
            prev = nd
    return path


def decompose_to_nice(a: RailArc3D, m: TriangleMove3D) -> list:
    """Diagram moves taking project_railplane(a) to the projection of the moved arc."""
    rep = triangle_move_valid(a, m)
    if not rep.ok:
        raise IsotopyError(f"invalid move {m}: {rep}")
    b = apply_triangle(a, m)
    for arc in (a, b):
        g = is_generic_railplane(arc)
        if not g.ok:
            raise GeometryError(g.violations)
    k = scope_features(a, m)
    if k > DECOMPOSE_SCOPE:
        raise IsotopyError(f"scope: projected triangle holds {k} features (limit {DECOMPOSE_SCOPE})")
    if m.kind != MERGE:
        return [site for site, _ in _decompose_forward(a, m)[1:]]
    j = m.index
    chain = _decompose_forward(b, TriangleMove3D(SUBDIVIDE, index=j - 1, point=a.vertices[j]))
    current = project_railplane(a)
    out = []
    for idx in range(len(chain) - 1, 0, -1):
        (_, before), (site, after) = chain[idx - 1], chain[idx]
        inv = translate_site(inverse_site(before, site, after), after, current)
        current, _ = _apply(current, inv)
        out.append(inv)
    return out

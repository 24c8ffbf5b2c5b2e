"""Local rewrites of rail knotoid diagrams (and their knotoid subset).

Every move is a surgery on the combinatorial map.  Planar isotopies need no
code: they do not change the map.

Move kinds, with ASCII names used in files and on the command line::

    O1-  O1+   kink removal / creation                    (XING -1 / +1)
    O2-  O2+   bigon of two arc strands                   (XING -2 / +2)
    O3         triangle of three arc strands              (XING  0)
    R1-  R1+   end swing of an endpoint around its rail   (RAILX -1 / +1)
    R2-  R2+   arc strand pushed across a rail            (RAILX -2 / +2)
    R3         arc strand across an arc/rail crossing pair
    slide      endpoint passes a rail crossing; flag "-" removes, "+" adds a XING
"""
from __future__ import annotations

from dataclasses import dataclass, replace

from .maps import (
    DiagramError,
    Kind,
    KnotoidDiagram,
    RailDiagram,
    Vertex,
    canonical_code,
    canonical_labeling,
)

KINDS = ("O1-", "O1+", "O2-", "O2+", "O3", "R1-", "R1+", "R2-", "R2+", "R3", "slide")
DISPLAY = {
    "O1-": "Ω1−", "O1+": "Ω1+", "O2-": "Ω2−", "O2+": "Ω2+", "O3": "Ω3",
    "R1-": "railΩ1−", "R1+": "railΩ1+", "R2-": "railΩ2−", "R2+": "railΩ2+",
    "R3": "railΩ3", "slide": "slide",
}
_ORDER = {k: i for i, k in enumerate(KINDS)}
_INVERSE = {"O1-": "O1+", "O1+": "O1-", "O2-": "O2+", "O2+": "O2-", "O3": "O3",
            "R1-": "R1+", "R1+": "R1-", "R2-": "R2+", "R2+": "R2-", "R3": "R3", "slide": "slide"}
KNOTOID_KINDS = ("O1-", "O1+", "O2-", "O2+", "O3")


class MoveError(ValueError):
    """The site does not apply to the diagram; the diagram is left untouched."""


@dataclass(frozen=True)
class MoveSite:
    kind: str
    params: tuple[int, ...]
    flags: tuple[str, ...] = ()

    def __str__(self) -> str:
        return " ".join([self.kind, *map(str, self.params), *self.flags])

    @classmethod
    def parse(cls, text: str) -> "MoveSite":
        parts = text.split()
        if not parts or parts[0] not in KINDS:
            raise ValueError(f"unknown move kind in {text!r}")
        params, flags = [], []
        for p in parts[1:]:
            if p.lstrip("-").isdigit() and not flags and p not in ("-",):
                params.append(int(p))
            else:
                flags.append(p)
        return cls(parts[0], tuple(params), tuple(flags))

    @property
    def is_reduction(self) -> bool:
        return self.kind.endswith("-") or self.flags == ("-",)

    @property
    def is_neutral(self) -> bool:
        return self.kind in ("O3", "R3")

    @property
    def delta(self) -> int:
        """Change in XING + RAILX count."""
        k = self.kind
        if k in ("O3", "R3"):
            return 0
        if k == "slide":
            return -1 if self.flags == ("-",) else 1
        size = 2 if k[1] == "2" else 1
        return size if k.endswith("+") else -size


# --------------------------------------------------------------------------
# helpers


def _is_rail(d) -> bool:
    return isinstance(d, RailDiagram)


def _edge_type(d, g: int):
    """'arc', 1 or 2 for the edge holding dart g."""
    if not _is_rail(d):
        return "arc"
    t = d.structure.dart_type
    x = t[g]
    return t[d.alpha[g]] if x == "inf" else x


def _arc_side(d: RailDiagram, vid: int) -> str:
    """'R' if the endpoint's arc leaves to the right of its rail (rotation up, down, arc)."""
    st = d.structure
    v = d.vertices[vid]
    return "R" if d.sigma[st.up[vid]] == st.down[vid] else "L"


def _endpoint_vids(d: RailDiagram):
    return [d.find(Kind.LEG), d.find(Kind.HEAD)]


class _Surgery:
    def __init__(self, d):
        self.src = d
        self.alpha = dict(d.alpha)
        self.verts = dict(d.vertices)
        self.dv = dict(d.dart_vertex)
        self.nd = max(d.alpha) + 1
        self.nv = max(d.vertices) + 1
        self.touched: set[int] = set()

    def link(self, x: int, y: int) -> None:
        self.alpha[x] = y
        self.alpha[y] = x
        self.touched.update((x, y))

    def new_darts(self, n: int) -> list[int]:
        out = list(range(self.nd, self.nd + n))
        self.nd += n
        return out

    def add_vertex(self, v: Vertex) -> int:
        vid = self.nv
        self.nv += 1
        self.verts[vid] = v
        for x in v.darts:
            self.dv[x] = vid
        self.touched.update(v.darts)
        return vid

    def set_rotation(self, vid: int, darts: tuple[int, ...]) -> None:
        self.verts[vid] = replace(self.verts[vid], darts=darts)
        self.touched.update(darts)

    def splice_out(self, vids) -> None:
        """Delete degree-4 vertices, reconnecting every strand passing through them."""
        removed, opp = set(), {}
        for vid in vids:
            ds = self.verts[vid].darts
            for i in range(4):
                opp[ds[i]] = ds[(i + 2) % 4]
            removed.update(ds)
        done = set()
        for r in sorted(removed):
            if r in done or self.alpha[r] in removed:
                continue
            ext = self.alpha[r]
            cur = r
            for _ in range(len(removed) + 1):
                done.add(cur)
                out = opp[cur]
                done.add(out)
                nxt = self.alpha[out]
                if nxt not in removed:
                    break
                cur = nxt
            else:
                raise MoveError("closed strand while splicing")
            self.link(ext, nxt)
        for x in removed:
            del self.alpha[x]
            del self.dv[x]
        for vid in vids:
            del self.verts[vid]
        self.touched -= removed

    def swap_on_rail(self, e_vid: int, r: int, x_vid: int) -> None:
        """Exchange an endpoint with the adjacent RAILX reached through its rail dart r."""
        src = self.src
        st = src.structure
        r_far = st.down[e_vid] if r == st.up[e_vid] else st.up[e_vid]
        rx_e = src.alpha[r]
        rx_far = src.opp(rx_e)
        beyond_e = self.alpha[r_far]
        beyond_x = self.alpha[rx_far]
        self.link(rx_e, beyond_e)
        self.link(rx_far, r_far)
        self.link(r, beyond_x)

    def result(self):
        cls = type(self.src)
        return cls(self.alpha, self.verts)


# --------------------------------------------------------------------------
# enumeration


def _sort(d, sites):
    lab = canonical_labeling(d)
    sites = {normalize_site(d, m) for m in sites}
    return sorted(sites, key=lambda m: (_ORDER[m.kind], [lab[p] for p in m.params], m.flags))


def _linear(rel) -> bool:
    """rel: (upper, lower) strand pairs at the three corners; False for a 3-cycle."""
    return len({top for top, _ in rel}) < 3


def _triangle_sites(d):
    """O3 / R3 sites: triangle faces whose over-relation is a linear order."""
    V, dv, s = d.vertices, d.dart_vertex, d.sigma
    out = []
    for f in d._faces:
        if len(f) != 3:
            continue
        vids = [dv[x] for x in f]
        if len(set(vids)) != 3:
            continue
        kinds = sorted(V[v].kind.value for v in vids)
        if kinds == ["xing"] * 3:
            kind = "O3"
        elif kinds == ["railx", "railx", "xing"]:
            kind = "R3"
        else:
            continue
        # strand k = edge from corner k to corner k+1; each corner compares two strands
        rel = []
        for k in range(3):
            x = f[k]
            v = V[vids[k]]
            incoming, outgoing = (k - 1) % 3, k  # strands through darts x and s[x]
            if v.kind is Kind.XING:
                top = outgoing if s[x] in v.over else incoming
            else:
                arc_dart = s[x] if _edge_type(d, s[x]) == "arc" else x
                arc_strand = outgoing if arc_dart == s[x] else incoming
                rail_strand = incoming if arc_strand == outgoing else outgoing
                top = arc_strand if v.arc_over else rail_strand
            bottom = incoming if top == outgoing else outgoing
            rel.append((top, bottom))
        if kind == "R3" and len({V[v].rail for v in vids if V[v].kind is Kind.RAILX}) != 1:
            continue
        if _linear(rel):
            out.append(MoveSite(kind, (min(f),)))
    return out


def enumerate_reductions(d) -> list[MoveSite]:
    """Every crossing-removing site, in canonical order."""
    V, dv, s, a = d.vertices, d.dart_vertex, d.sigma, d.alpha
    rail = _is_rail(d)
    out = []
    for f in d._faces:
        if len(f) == 1:
            if V[dv[f[0]]].kind is Kind.XING:
                out.append(MoveSite("O1-", (f[0],)))
        elif len(f) == 2:
            x, y = f
            X, Y = V[dv[x]], V[dv[y]]
            if dv[x] == dv[y]:
                continue
            if X.kind is Kind.XING and Y.kind is Kind.XING:
                if (s[x] in X.over) == (y in Y.over):
                    out.append(MoveSite("O2-", tuple(sorted(f))))
            elif not rail:
                continue
            elif X.kind is Kind.RAILX and Y.kind is Kind.RAILX:
                if X.rail == Y.rail and X.arc_over == Y.arc_over:
                    out.append(MoveSite("R2-", tuple(sorted(f))))
            else:
                for E, e_dart, R in ((X, x, Y), (Y, y, X)):
                    if E.kind in (Kind.LEG, Kind.HEAD) and R.kind is Kind.RAILX:
                        if E.arc in (e_dart, s[e_dart]):
                            out.append(MoveSite("R1-", (E.arc,)))
        elif len(f) == 3 and rail:
            site = _slide_minus_site(d, f)
            if site is not None:
                out.append(site)
    return _sort(d, out)


def _slide_minus_site(d: RailDiagram, f):
    V, dv, s, a = d.vertices, d.dart_vertex, d.sigma, d.alpha
    vids = [dv[x] for x in f]
    if len(set(vids)) != 3:
        return None
    ends = [k for k in range(3) if V[vids[k]].kind in (Kind.LEG, Kind.HEAD)]
    if len(ends) != 1:
        return None
    k = ends[0]
    E = V[vids[k]]
    pair = {f[k], s[f[k]]}
    if E.arc not in pair:
        return None
    r = (pair - {E.arc}).pop()
    X = V[dv[a[r]]]
    Y = V[dv[a[E.arc]]]
    if X.kind is not Kind.RAILX or Y.kind is not Kind.XING:
        return None
    # dart of the X-Y edge at Y
    yk = vids.index(dv[a[E.arc]])
    y_dart = f[yk] if f[yk] != a[E.arc] else s[f[yk]]
    if (y_dart in Y.over) != X.arc_over:
        return None
    if a[d.opp(a[E.arc])] == d.opp(y_dart):
        return None  # Y is a kink; removing it is an Ω1 move, not a slide
    return MoveSite("slide", (E.arc, r), ("-",))


def enumerate_creations(d, max_crossings: int | None = None) -> list[MoveSite]:
    """Crossing-adding and crossing-neutral sites; additions capped by max_crossings."""
    rail = _is_rail(d)
    n = d.crossing_count()
    room = (lambda k: True) if max_crossings is None else (lambda k: n + k <= max_crossings)
    s, a = d.sigma, d.alpha
    out = []
    arc = d.structure.arc if rail else d.arc
    if room(1):
        for _, _, fwd in arc[:-1]:
            for side in ("L", "R"):
                for which in ("first", "second"):
                    out.append(MoveSite("O1+", (fwd,), (side, which)))
    if room(2):
        for _, _, fwd in arc[:-1]:
            for g in (fwd, a[fwd]):
                for which in ("first", "second"):
                    out.append(MoveSite("O2+", (g,), (which,)))
        for f in d._faces:
            sides = [s[x] for x in f]
            types = [_edge_type(d, g) for g in sides]
            for i in range(len(sides)):
                for j in range(i + 1, len(sides)):
                    g1, g2 = sides[i], sides[j]
                    if g2 == a[g1]:
                        continue
                    t1, t2 = types[i], types[j]
                    if t1 == "arc" and t2 == "arc":
                        for which in ("first", "second"):
                            out.append(MoveSite("O2+", (g1, g2), (which,)))
                    elif (t1 == "arc") != (t2 == "arc"):
                        for flag in ("over", "under"):
                            out.append(MoveSite("R2+", (g1, g2), (flag,)))
    if rail and room(1):
        st = d.structure
        for e in _endpoint_vids(d):
            E = d.vertices[e]
            for flag in ("over", "under"):
                for pos in ("above", "below"):
                    out.append(MoveSite("R1+", (E.arc,), (flag, pos)))
            for r in (st.up[e], st.down[e]):
                X = d.vertex_of(a[r])
                if X.kind is not Kind.RAILX:
                    continue
                if a[_slide_partner(d, e, r)] != E.arc:
                    out.append(MoveSite("slide", (E.arc, r), ("+",)))
    out.extend(_triangle_sites(d))
    return _sort(d, out)


def _slide_partner(d: RailDiagram, e: int, r: int) -> int:
    """The arc dart of the RAILX next to endpoint e (via rail dart r) on e's arc side."""
    st = d.structure
    x_vid = d.dart_vertex[d.alpha[r]]
    xu = st.up[x_vid]
    return d.sigma_inv[xu] if _arc_side(d, e) == "R" else d.sigma[xu]


def enumerate_all(d, max_crossings: int | None = None) -> list[MoveSite]:
    return enumerate_reductions(d) + enumerate_creations(d, max_crossings)


# --------------------------------------------------------------------------
# application


def _apply(d, m: MoveSite):
    """Apply a site known to be valid. Returns (diagram, darts touched)."""
    k, p = m.kind, m.params
    sg = _Surgery(d)
    s, a = d.sigma, d.alpha
    if k == "O1+":
        (g,) = p
        side, which = m.flags
        b = a[g]
        x0, x1, x2, x3 = sg.new_darts(4)  # enter, into loop, back from loop, leave
        sg.link(g, x0)
        sg.link(x3, b)
        sg.link(x1, x2)
        rot = (x0, x3, x1, x2) if side == "L" else (x0, x2, x1, x3)
        over = {x0, x1} if which == "first" else {x2, x3}
        sg.add_vertex(Vertex(Kind.XING, rot, over=frozenset(over)))
    elif k in ("O1-", "O2-", "R2-"):
        sg.splice_out(sorted({d.dart_vertex[x] for x in p}))
    elif k in ("O2+", "R2+"):
        xi_in, xi_out, xj_in, xj_out, yi_in, yi_out, yj_in, yj_out = sg.new_darts(8)
        if len(p) == 1:
            # both strands are pieces of one edge: the later piece doubles back under/over the earlier
            (g1,) = p
            sg.link(g1, xi_in)
            sg.link(xi_out, yi_in)
            sg.link(yi_out, yj_in)
            sg.link(yj_out, xj_in)
            sg.link(xj_out, a[g1])
        else:
            g1, g2 = p
            b, e = a[g1], a[g2]
            sg.link(g1, xi_in)
            sg.link(xi_out, yi_in)
            sg.link(yi_out, b)
            sg.link(g2, yj_in)
            sg.link(yj_out, xj_in)
            sg.link(xj_out, e)
        xrot = (xj_in, xi_in, xj_out, xi_out)
        yrot = (yj_in, yi_out, yj_out, yi_in)
        if k == "O2+":
            first = m.flags == ("first",)
            xo = {xi_in, xi_out} if first else {xj_in, xj_out}
            yo = {yi_in, yi_out} if first else {yj_in, yj_out}
            sg.add_vertex(Vertex(Kind.XING, xrot, over=frozenset(xo)))
            sg.add_vertex(Vertex(Kind.XING, yrot, over=frozenset(yo)))
        else:
            t = _edge_type(d, g1)
            rail = t if t != "arc" else _edge_type(d, g2)
            ao = m.flags == ("over",)
            sg.add_vertex(Vertex(Kind.RAILX, xrot, rail=rail, arc_over=ao))
            sg.add_vertex(Vertex(Kind.RAILX, yrot, rail=rail, arc_over=ao))
    elif k in ("O3", "R3"):
        _triangle_relink(d, sg, p[0])
    elif k == "R1-":
        (ea,) = p
        e_vid = d.dart_vertex[ea]
        sg.splice_out([d.dart_vertex[a[ea]]])
        sg.set_rotation(e_vid, tuple(reversed(d.vertices[e_vid].darts)))
    elif k == "R1+":
        (ea,) = p
        flag, pos = m.flags
        st = d.structure
        e_vid = d.dart_vertex[ea]
        E = d.vertices[e_vid]
        up, dn = st.up[e_vid], st.down[e_vid]
        side = _arc_side(d, e_vid)
        rail = 1 if E.kind is Kind.LEG else 2
        xu, xd, xe, xw = sg.new_darts(4)
        b = a[ea]
        if pos == "above":
            t = a[up]
            sg.link(up, xd)
            sg.link(xu, t)
        else:
            t = a[dn]
            sg.link(dn, xu)
            sg.link(xd, t)
        sg.link(ea, xe)
        sg.link(xw, b)
        rot = (xw, xu, xe, xd) if side == "R" else (xe, xu, xw, xd)
        sg.add_vertex(Vertex(Kind.RAILX, rot, rail=rail, arc_over=(flag == "over")))
        sg.set_rotation(e_vid, tuple(reversed(E.darts)))
    elif k == "slide":
        ea, r = p
        e_vid = d.dart_vertex[ea]
        x_vid = d.dart_vertex[a[r]]
        if m.flags == ("-",):
            sg.splice_out([d.dart_vertex[a[ea]]])
            sg.swap_on_rail(e_vid, r, x_vid)
        else:
            st = d.structure
            X = d.vertices[x_vid]
            xs = _slide_partner(d, e_vid, r)
            z, w = a[xs], a[ea]
            ye, yx, ye2, yx2 = sg.new_darts(4)
            sg.link(ea, ye)
            sg.link(ye2, w)
            sg.link(xs, yx)
            sg.link(yx2, z)
            x_above = r == st.down[e_vid]
            if (_arc_side(d, e_vid) == "R") == x_above:
                rot = (ye, yx2, ye2, yx)
            else:
                rot = (ye, yx, ye2, yx2)
            over = {yx, yx2} if X.arc_over else {ye, ye2}
            sg.add_vertex(Vertex(Kind.XING, rot, over=frozenset(over)))
            sg.swap_on_rail(e_vid, r, x_vid)
    else:
        raise MoveError(f"unknown move kind {k}")
    return sg.result(), sg.touched


def _triangle_relink(d, sg: _Surgery, d1: int) -> None:
    """Move one strand across the crossing of the other two: rotations stay, links change."""
    a, s = d.alpha, d.sigma
    f = [d1]
    for _ in range(2):
        f.append(a[s[f[-1]]])
    lines = []  # (inner dart at start, inner dart at end)
    for k in range(3):
        lines.append((s[f[k]], f[(k + 1) % 3]))
    outer_of = {}
    inherit = {}
    for u_in, w_in in lines:
        u_out, w_out = d.opp(u_in), d.opp(w_in)
        outer_of[u_in], outer_of[w_in] = u_out, w_out
        inherit[u_out] = w_in
        inherit[w_out] = u_in
    new = {}

    def ext(o):
        t = a[o]
        return inherit[t] if t in inherit else t

    for u_in, w_in in lines:
        u_out, w_out = outer_of[u_in], outer_of[w_in]
        new[u_out], new[w_out] = w_out, u_out
        for inner, far_outer in ((u_in, w_out), (w_in, u_out)):
            t = ext(far_outer)
            if new.get(inner, t) != t:
                raise MoveError("inconsistent triangle relink")
            new[inner] = t
            new[t] = inner
    for x, y in new.items():
        sg.link(x, y)


def _sites_of_kind(d, kind: str):
    if kind in ("O1-", "O2-", "R1-", "R2-"):
        return [m for m in enumerate_reductions(d) if m.kind == kind]
    if kind == "slide":
        return [m for m in enumerate_all(d) if m.kind == kind]
    return [m for m in enumerate_creations(d) if m.kind == kind]


def normalize_site(d, m: MoveSite) -> MoveSite:
    """The enumerated spelling of a site (parameter order and face representative)."""
    p = m.params
    if m.kind in ("O3", "R3") and len(p) == 1 and p[0] in d.alpha:
        a, s = d.alpha, d.sigma
        f = [p[0], a[s[p[0]]]]
        f.append(a[s[f[-1]]])
        return MoveSite(m.kind, (min(f),), m.flags)
    if m.kind in ("O2-", "R2-"):
        return MoveSite(m.kind, tuple(sorted(p)), m.flags)
    if m.kind in ("O2+", "R2+") and len(p) == 2 and p[0] > p[1]:
        flags = m.flags
        if m.kind == "O2+":
            flags = ("second",) if flags == ("first",) else ("first",)
        return MoveSite(m.kind, p[::-1], flags)
    return m


def check_site(d, m: MoveSite) -> None:
    if not isinstance(m, MoveSite) or m.kind not in KINDS:
        raise MoveError(f"not a move site: {m!r}")
    if not _is_rail(d) and m.kind not in KNOTOID_KINDS:
        raise MoveError(f"{m.kind} is not a knotoid move")
    if any(x not in d.alpha for x in m.params):
        raise MoveError(f"site {m} references a dart not in the diagram")
    if normalize_site(d, m) not in {normalize_site(d, x) for x in _sites_of_kind(d, m.kind)}:
        raise MoveError(f"site {m} does not match a {m.kind} pattern in the diagram")


def apply_move(d, m: MoveSite):
    """Apply an enumerated site; raises MoveError for sites that do not apply."""
    rep = d.validate()
    if not rep.ok:
        raise DiagramError(rep.violations)
    check_site(d, m)
    out, _ = _apply(d, normalize_site(d, m))
    return out


def translate_site(m: MoveSite, src, dst) -> MoveSite:
    """Re-express a site of ``src`` on an isomorphic diagram ``dst``."""
    ls = canonical_labeling(src)
    ld = {v: k for k, v in canonical_labeling(dst).items()}
    return normalize_site(dst, MoveSite(m.kind, tuple(ld[ls[x]] for x in m.params), m.flags))


def inverse_site(d, m: MoveSite, d2) -> MoveSite:
    """A site of d2 (= apply_move(d, m) up to relabeling) that restores d."""
    own, touched = _apply(d, m)
    if canonical_code(own) != canonical_code(d2):
        raise MoveError("second diagram is not the result of the move")
    kind = _INVERSE[m.kind]
    flags = None
    if m.kind == "slide":
        flags = ("+",) if m.flags == ("-",) else ("-",)
    target = canonical_code(d)
    for c in _sites_of_kind(own, kind):
        if flags is not None and c.flags != flags:
            continue
        if not any(x in touched for x in c.params):
            continue
        back, _ = _apply(own, c)
        if canonical_code(back) == target:
            return translate_site(c, own, d2)
    raise MoveError(f"no inverse found for {m}")

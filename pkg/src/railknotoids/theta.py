"""Passage between rail knotoid diagrams and theta-curve diagrams.

The two rails are capped off far away by a top and a bottom connector
running through the faces at infinity; the arc becomes the middle edge.
"""
from __future__ import annotations

from dataclasses import replace

from .maps import (
    LOWER,
    MIDDLE,
    UPPER,
    DiagramError,
    Kind,
    RailDiagram,
    ThetaDiagram,
    Vertex,
)


class ThetaScopeError(ValueError):
    pass


def to_theta(d: RailDiagram) -> ThetaDiagram:
    rep = d.validate()
    if not rep.ok:
        raise DiagramError(rep.violations)
    st = d.structure
    a = dict(d.alpha)
    t1, b1, b2, t2 = d.inf
    inf_vid = d.find(Kind.INF)
    leg, head = d.find(Kind.LEG), d.find(Kind.HEAD)
    top = (a[t1], a[t2])
    bottom = (a[b1], a[b2])
    for x in (t1, t2, b1, b2):
        del a[x]
    a[top[0]], a[top[1]] = top[1], top[0]
    a[bottom[0]], a[bottom[1]] = bottom[1], bottom[0]

    ec = {}
    for vid, din, dout in st.arc:
        for x in (din, dout):
            if x is not None:
                ec[x] = MIDDLE
    for rail, end in ((1, leg), (2, head)):
        cls = UPPER
        for vid, du, dd in st.rails[rail]:
            for x in (du, dd):
                if x is not None:
                    ec[x] = cls if vid != end or x == du else LOWER
            if vid == end:
                cls = LOWER
    vertices = {}
    for vid, v in d.vertices.items():
        if vid == inf_vid:
            continue
        if v.kind is Kind.LEG:
            vertices[vid] = Vertex(Kind.NODE, v.darts, node=0)
        elif v.kind is Kind.HEAD:
            vertices[vid] = Vertex(Kind.NODE, v.darts, node=1)
        elif v.kind is Kind.RAILX:
            arc_pair = frozenset(x for x in v.darts if ec[x] == MIDDLE)
            over = arc_pair if v.arc_over else frozenset(v.darts) - arc_pair
            vertices[vid] = Vertex(Kind.XING, v.darts, over=over)
        else:
            vertices[vid] = v
    t = ThetaDiagram(a, vertices, ec, connectors=(top, bottom))
    rep = t.validate()
    if not rep.ok:
        raise DiagramError(["theta conversion produced an invalid diagram", *rep.violations])
    return t


def _edges_of(walk):
    """(v0-side dart, v1-side dart) for each edge of a walk, in order."""
    return [(walk[k][2], walk[k + 1][1]) for k in range(len(walk) - 1)]


def _cut(t: ThetaDiagram, upper, lower) -> RailDiagram | None:
    """Rail diagram obtained by deleting one UPPER and one LOWER edge."""
    walks = t.walks
    ec = t.edge_class
    side = {}  # dart -> rail, for UPPER/LOWER darts
    for cls, edge in ((UPPER, upper), (LOWER, lower)):
        rail = 1
        for vid, din, dout in walks[cls]:
            if din is not None:
                if din == edge[1]:
                    rail = 2
                side[din] = rail
            if dout is not None:
                side[dout] = rail
    a = {x: y for x, y in t.alpha.items() if x not in (*upper, *lower)}
    base = max(t.alpha) + 1
    t1, t2, b2, b1 = base, base + 1, base + 2, base + 3
    for x, y in ((t1, upper[0]), (t2, upper[1]), (b1, lower[0]), (b2, lower[1])):
        a[x], a[y] = y, x
    vertices = {max(t.vertices) + 1: Vertex(Kind.INF, (t1, t2, b2, b1))}
    for vid, v in t.vertices.items():
        if v.kind is Kind.NODE:
            arc = next(x for x in v.darts if ec[x] == MIDDLE)
            kind = Kind.LEG if v.node == 0 else Kind.HEAD
            vertices[vid] = Vertex(kind, v.darts, arc=arc)
            continue
        classes = {ec[x] for x in v.darts}
        if classes == {MIDDLE}:
            vertices[vid] = v
            continue
        if MIDDLE not in classes or len(classes) != 2:
            return None  # rails may not cross each other
        rails = {side[x] for x in v.darts if ec[x] != MIDDLE}
        if len(rails) != 1:
            return None
        arc_pair = frozenset(x for x in v.darts if ec[x] == MIDDLE)
        vertices[vid] = Vertex(Kind.RAILX, v.darts, rail=rails.pop(), arc_over=v.over == arc_pair)
    d = RailDiagram(a, vertices)
    return d if d.validate().ok else None


def from_theta(t: ThetaDiagram) -> RailDiagram:
    """Cut the UPPER and LOWER edges open again and restore the rails.

    The stored connectors are cut when present; otherwise the first pair of
    edges, in walk order, whose removal leaves a valid rail diagram.
    """
    rep = t.validate()
    if not rep.ok:
        raise DiagramError(rep.violations)
    if t.connectors is not None:
        d = _cut(t, *t.connectors)
        if d is not None:
            return d
    walks = t.walks
    for upper in _edges_of(walks[UPPER]):
        for lower in _edges_of(walks[LOWER]):
            d = _cut(t, upper, lower)
            if d is not None:
                return d
    raise ThetaScopeError("scope: no pair of UPPER and LOWER edges can be cut into rails")


def strip_connectors(t: ThetaDiagram) -> ThetaDiagram:
    return replace(t, connectors=None)

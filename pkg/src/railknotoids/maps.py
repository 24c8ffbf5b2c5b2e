"""Combinatorial maps for rail knotoid, knotoid and theta-curve diagrams.

A diagram is a set of darts (integers), an edge involution ``alpha`` and, for
every vertex, the counterclockwise cyclic order of its darts.  Faces are the
orbits of ``phi = alpha . sigma``.

Rail diagrams live on the sphere: the four rail ends meet at a single INF
vertex.  Its darts are stored in the order (l1-top, l1-bottom, l2-bottom,
l2-top) read around a large circle, which as a counterclockwise rotation seen
from inside the sphere is the reverse cycle (l1-top, l2-top, l2-bottom,
l1-bottom).  ``Vertex.darts`` of the INF vertex holds the rotation.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping


class Kind(enum.Enum):
    INF = "inf"
    LEG = "leg"
    HEAD = "head"
    XING = "xing"
    RAILX = "railx"
    NODE = "node"


@dataclass(frozen=True)
class Vertex:
    kind: Kind
    darts: tuple[int, ...]
    over: frozenset = frozenset()  # XING: the over strand's dart pair
    rail: int = 0  # RAILX
    arc_over: bool = False  # RAILX
    arc: int | None = None  # LEG/HEAD: the arc dart
    node: int = 0  # NODE: 0 or 1


class DiagramError(ValueError):
    """Raised when an operation receives a diagram that does not validate."""

    def __init__(self, violations):
        if isinstance(violations, str):
            violations = [violations]
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        return "ok" if self.ok else "\n".join(self.violations)


class _Map:
    """Shared machinery: rotations, faces, relabeling."""

    alpha: Mapping[int, int]
    vertices: Mapping[int, Vertex]

    @cached_property
    def sigma(self) -> dict[int, int]:
        s = {}
        for v in self.vertices.values():
            ds = v.darts
            for i, d in enumerate(ds):
                s[d] = ds[(i + 1) % len(ds)]
        return s

    @cached_property
    def sigma_inv(self) -> dict[int, int]:
        return {b: a for a, b in self.sigma.items()}

    @cached_property
    def dart_vertex(self) -> dict[int, int]:
        return {d: vid for vid, v in self.vertices.items() for d in v.darts}

    @property
    def darts(self) -> list[int]:
        return sorted(self.alpha)

    def vertex_of(self, d: int) -> Vertex:
        return self.vertices[self.dart_vertex[d]]

    def opp(self, d: int) -> int:
        """The dart across a degree-4 vertex."""
        s = self.sigma
        return s[s[d]]

    def count(self, kind: Kind) -> int:
        return sum(1 for v in self.vertices.values() if v.kind is kind)

    def find(self, kind: Kind) -> int:
        for vid, v in self.vertices.items():
            if v.kind is kind:
                return vid
        raise DiagramError(f"no {kind.value} vertex")

    @cached_property
    def _faces(self) -> tuple[tuple[int, ...], ...]:
        seen = set()
        out = []
        a, s = self.alpha, self.sigma
        for d in sorted(a):
            if d in seen:
                continue
            orbit = []
            x = d
            while x not in seen:
                seen.add(x)
                orbit.append(x)
                x = a[s[x]]
            out.append(tuple(orbit))
        return tuple(out)

    def crossing_count(self) -> int:
        return self.count(Kind.XING) + self.count(Kind.RAILX)

    def _basic_violations(self) -> list[str]:
        """alpha/sigma well-formedness, connectivity and genus."""
        out = []
        rot_darts = [d for v in self.vertices.values() for d in v.darts]
        if len(rot_darts) != len(set(rot_darts)):
            out.append("sigma: a dart appears in two rotation cycles")
            return out
        if set(rot_darts) != set(self.alpha):
            out.append("sigma: rotation cycles do not cover exactly the darts of alpha")
            return out
        for d, e in self.alpha.items():
            if e == d:
                out.append("alpha has a fixed point")
                return out
            if self.alpha.get(e) != d:
                out.append("alpha not involution")
                return out
        if len(self.alpha) % 2:
            out.append("alpha: odd number of darts")
            return out
        # connectivity
        if self.vertices:
            start = next(iter(self.vertices))
            seen = {start}
            stack = [start]
            while stack:
                v = stack.pop()
                for d in self.vertices[v].darts:
                    w = self.dart_vertex[self.alpha[d]]
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
            if len(seen) != len(self.vertices):
                out.append("genus: map is not connected")
                return out
        V, E, F = len(self.vertices), len(self.alpha) // 2, len(self._faces)
        if V - E + F != 2:
            out.append(f"genus: V - E + F = {V - E + F}, expected 2")
        return out


def faces(d: _Map) -> list[tuple[int, ...]]:
    """Orbits of alpha.sigma, each listed from its smallest dart."""
    rep = d.validate() if hasattr(d, "validate") else ValidationReport()
    if not rep.ok:
        raise DiagramError(rep.violations)
    return list(d._faces)


# --------------------------------------------------------------------------
# rail diagrams


@dataclass(frozen=True)
class RailStructure:
    """Derived incidence data of a valid rail diagram."""

    arc: tuple[tuple[int, int | None, int | None], ...]  # (vertex, in dart, out dart)
    rails: dict  # rail -> tuple of (vertex, up dart, down dart), top to bottom
    dart_type: dict  # dart -> "arc" | 1 | 2 | "inf"
    up: dict  # vertex -> up dart (rail vertices)
    down: dict


@dataclass(frozen=True, eq=False)
class RailDiagram(_Map):
    alpha: dict
    vertices: dict
    hints: dict | None = field(default=None)

    def __eq__(self, other):
        if not isinstance(other, RailDiagram):
            return NotImplemented
        return canonical_code(self) == canonical_code(other)

    def __hash__(self):
        return hash(canonical_code(self))

    @property
    def inf(self) -> tuple[int, int, int, int]:
        """Rail-end darts in the stored order (l1-top, l1-bottom, l2-bottom, l2-top)."""
        t1, t2, b2, b1 = self.vertices[self.find(Kind.INF)].darts
        return (t1, b1, b2, t2)

    @cached_property
    def _walk(self) -> tuple[RailStructure | None, tuple[str, ...]]:
        return _walk_rail(self)

    @property
    def structure(self) -> RailStructure:
        st, errs = self._walk
        if st is None:
            raise DiagramError(errs)
        return st

    def validate(self) -> ValidationReport:
        return validate(self)


def _kind_violations(d: RailDiagram) -> list[str]:
    out = []
    counts = {k: d.count(k) for k in Kind}
    if counts[Kind.INF] != 1:
        out.append(f"kinds: expected one INF vertex, found {counts[Kind.INF]}")
    if counts[Kind.LEG] != 1:
        out.append(f"kinds: expected one LEG vertex, found {counts[Kind.LEG]}")
    if counts[Kind.HEAD] != 1:
        out.append(f"kinds: expected one HEAD vertex, found {counts[Kind.HEAD]}")
    if counts[Kind.NODE]:
        out.append("kinds: NODE vertex in a rail diagram")
    for vid, v in sorted(d.vertices.items()):
        n = len(v.darts)
        if v.kind is Kind.INF and n != 4:
            out.append(f"kinds: INF vertex {vid} has degree {n}")
        elif v.kind in (Kind.LEG, Kind.HEAD):
            if n != 3:
                out.append(f"kinds: {v.kind.value} vertex {vid} has degree {n}")
            elif v.arc not in v.darts:
                out.append(f"kinds: {v.kind.value} vertex {vid} arc dart not in its rotation")
        elif v.kind is Kind.XING:
            if n != 4:
                out.append(f"kinds: XING {vid} has degree {n}")
            elif v.over not in (frozenset(v.darts[0::2]), frozenset(v.darts[1::2])):
                out.append(f"kinds: XING {vid} over strand is not an opposite dart pair")
        elif v.kind is Kind.RAILX:
            if n != 4:
                out.append(f"kinds: RAILX {vid} has degree {n}")
            elif v.rail not in (1, 2):
                out.append(f"kinds: RAILX {vid} has rail {v.rail}")
        if out:
            break
    return out


def _walk_rail(d: RailDiagram):
    errs = _kind_violations(d)
    if errs:
        return None, tuple(errs)
    a, opp, dv = d.alpha, d.opp, d.dart_vertex
    V = d.vertices
    inf_vid = d.find(Kind.INF)
    t1, t2, b2, b1 = V[inf_vid].darts
    dart_type = {x: "inf" for x in (t1, t2, b2, b1)}
    up, down = {}, {}
    rails = {}
    for rail, top, bottom, end_kind in ((1, t1, b1, Kind.LEG), (2, t2, b2, Kind.HEAD)):
        seq = []
        x = a[top]
        ends = 0
        while True:
            vid = dv[x]
            v = V[vid]
            if v.kind is Kind.INF:
                if x != bottom:
                    return None, (f"rails: rail {rail} returns to INF at the wrong dart",)
                break
            if vid in up:
                return None, (f"rails: rail {rail} is not a simple path",)
            if v.kind is end_kind:
                if x == v.arc:
                    return None, (f"rails: rail {rail} enters its endpoint along the arc dart",)
                nxt = next(y for y in v.darts if y != x and y != v.arc)
                ends += 1
            elif v.kind is Kind.RAILX and v.rail == rail:
                nxt = opp(x)
            else:
                return None, (f"rails: rail {rail} passes through a {v.kind.value} vertex",)
            up[vid], down[vid] = x, nxt
            dart_type[x] = dart_type[nxt] = rail
            seq.append((vid, x, nxt))
            x = a[nxt]
            if len(seq) > len(V):
                return None, (f"rails: rail {rail} does not terminate",)
        if ends != 1:
            return None, (f"rails: rail {rail} passes its endpoint {ends} times",)
        rails[rail] = tuple(seq)
    for vid, v in V.items():
        if v.kind is Kind.RAILX and vid not in up:
            return None, (f"rails: RAILX {vid} is not on rail {v.rail}",)
    # arc walk
    leg = V[d.find(Kind.LEG)]
    head_vid = d.find(Kind.HEAD)
    arc = [(d.find(Kind.LEG), None, leg.arc)]
    dart_type[leg.arc] = "arc"
    visits = {}
    x = a[leg.arc]
    while True:
        vid = dv[x]
        v = V[vid]
        if dart_type.get(x) is not None:
            return None, ("arc: arc walk enters a rail dart",)
        if v.kind is Kind.HEAD:
            if x != v.arc:
                return None, ("arc: arc reaches HEAD off its arc dart",)
            dart_type[x] = "arc"
            arc.append((vid, x, None))
            break
        if v.kind not in (Kind.XING, Kind.RAILX):
            return None, (f"arc: arc walk passes through a {v.kind.value} vertex",)
        visits[vid] = visits.get(vid, 0) + 1
        limit = 2 if v.kind is Kind.XING else 1
        if visits[vid] > limit:
            return None, (f"arc: vertex {vid} visited too often",)
        y = opp(x)
        if dart_type.get(y) is not None:
            return None, ("arc: arc walk leaves along a rail dart",)
        dart_type[x] = dart_type[y] = "arc"
        arc.append((vid, x, y))
        x = a[y]
    for vid, v in V.items():
        if v.kind is Kind.XING and visits.get(vid) != 2:
            return None, (f"arc: XING {vid} visited {visits.get(vid, 0)} times",)
        if v.kind is Kind.RAILX and visits.get(vid) != 1:
            return None, (f"arc: RAILX {vid} visited {visits.get(vid, 0)} times",)
    if len(dart_type) != len(a):
        return None, ("arc: some edges are neither rail nor arc",)
    return RailStructure(tuple(arc), rails, dart_type, up, down), ()


def validate(d: RailDiagram) -> ValidationReport:
    """Check every rail diagram invariant; one message per failing category."""
    basic = d._basic_violations()
    if basic and not basic[0].startswith("genus"):
        return ValidationReport(tuple(basic))
    _, errs = d._walk
    return ValidationReport(tuple(errs) + tuple(basic))


def trivial_diagram() -> RailDiagram:
    """Straight arc from the leg on l1 to the head on l2, no crossings."""
    # INF rotation (t1, t2, b2, b1); LEG arc leaves to the right, HEAD arc arrives from the left
    t1, t2, b2, b1 = 0, 1, 2, 3
    lu, ld, la = 4, 5, 6
    hu, hd, ha = 7, 8, 9
    alpha = {}
    for x, y in ((t1, lu), (b1, ld), (t2, hu), (b2, hd), (la, ha)):
        alpha[x], alpha[y] = y, x
    vertices = {
        0: Vertex(Kind.INF, (t1, t2, b2, b1)),
        1: Vertex(Kind.LEG, (lu, ld, la), arc=la),
        2: Vertex(Kind.HEAD, (hu, ha, hd), arc=ha),
    }
    return RailDiagram(alpha, vertices)


# --------------------------------------------------------------------------
# knotoid diagrams


@dataclass(frozen=True, eq=False)
class KnotoidDiagram(_Map):
    alpha: dict
    vertices: dict
    hints: dict | None = field(default=None)

    def __eq__(self, other):
        if not isinstance(other, KnotoidDiagram):
            return NotImplemented
        return canonical_code(self) == canonical_code(other)

    def __hash__(self):
        return hash(canonical_code(self))

    @cached_property
    def _walk(self):
        return _walk_knotoid(self)

    @property
    def arc(self):
        st, errs = self._walk
        if st is None:
            raise DiagramError(errs)
        return st

    def validate(self) -> ValidationReport:
        basic = self._basic_violations()
        if basic and not basic[0].startswith("genus"):
            return ValidationReport(tuple(basic))
        _, errs = self._walk
        return ValidationReport(tuple(errs) + tuple(basic))


def _walk_knotoid(k: KnotoidDiagram):
    V = k.vertices
    for kind in (Kind.LEG, Kind.HEAD):
        if k.count(kind) != 1:
            return None, (f"kinds: expected one {kind.value} vertex",)
    for vid, v in sorted(V.items()):
        if v.kind in (Kind.LEG, Kind.HEAD):
            if len(v.darts) != 1:
                return None, (f"kinds: {v.kind.value} must have degree 1",)
        elif v.kind is Kind.XING:
            if len(v.darts) != 4 or v.over not in (frozenset(v.darts[0::2]), frozenset(v.darts[1::2])):
                return None, (f"kinds: XING {vid} malformed",)
        else:
            return None, (f"kinds: {v.kind.value} vertex in a knotoid diagram",)
    leg = k.find(Kind.LEG)
    arc = [(leg, None, V[leg].darts[0])]
    visits = {}
    x = k.alpha[V[leg].darts[0]]
    used = {V[leg].darts[0]}
    while True:
        vid = k.dart_vertex[x]
        v = V[vid]
        used.add(x)
        if v.kind is Kind.HEAD:
            arc.append((vid, x, None))
            break
        if v.kind is Kind.LEG:
            return None, ("arc: walk returns to the leg",)
        visits[vid] = visits.get(vid, 0) + 1
        if visits[vid] > 2:
            return None, (f"arc: XING {vid} visited too often",)
        y = k.opp(x)
        used.add(y)
        arc.append((vid, x, y))
        x = k.alpha[y]
    if any(visits.get(vid) != 2 for vid, v in V.items() if v.kind is Kind.XING):
        return None, ("arc: some XING not visited twice",)
    if len(used) != len(k.alpha):
        return None, ("arc: edges off the arc walk",)
    return tuple(arc), ()


def trivial_knotoid() -> KnotoidDiagram:
    return KnotoidDiagram({0: 1, 1: 0}, {0: Vertex(Kind.LEG, (0,)), 1: Vertex(Kind.HEAD, (1,))})


# --------------------------------------------------------------------------
# theta diagrams

UPPER, MIDDLE, LOWER = "U", "M", "L"


@dataclass(frozen=True, eq=False)
class ThetaDiagram(_Map):
    alpha: dict
    vertices: dict
    edge_class: dict  # dart -> U | M | L (both darts of an edge agree)
    connectors: tuple | None = None  # ((u_v0side, u_v1side), (l_v0side, l_v1side)) cut edges

    def __eq__(self, other):
        if not isinstance(other, ThetaDiagram):
            return NotImplemented
        return canonical_code(self) == canonical_code(other)

    def __hash__(self):
        return hash(canonical_code(self))

    @cached_property
    def _walk(self):
        return _walk_theta(self)

    @property
    def walks(self) -> dict:
        st, errs = self._walk
        if st is None:
            raise DiagramError(errs)
        return st

    def validate(self) -> ValidationReport:
        basic = self._basic_violations()
        if basic and not basic[0].startswith("genus"):
            return ValidationReport(tuple(basic))
        _, errs = self._walk
        return ValidationReport(tuple(errs) + tuple(basic))


def _walk_theta(t: ThetaDiagram):
    V = t.vertices
    nodes = {v.node: vid for vid, v in V.items() if v.kind is Kind.NODE}
    if t.count(Kind.NODE) != 2 or set(nodes) != {0, 1}:
        return None, ("kinds: expected NODE v0 and NODE v1",)
    for vid, v in V.items():
        if v.kind is Kind.NODE and len(v.darts) != 3:
            return None, (f"kinds: NODE {vid} must have degree 3",)
        if v.kind is Kind.XING and (
            len(v.darts) != 4 or v.over not in (frozenset(v.darts[0::2]), frozenset(v.darts[1::2]))
        ):
            return None, (f"kinds: XING {vid} malformed",)
        if v.kind not in (Kind.NODE, Kind.XING):
            return None, (f"kinds: {v.kind.value} vertex in a theta diagram",)
    ec = t.edge_class
    if set(ec) != set(t.alpha) or any(ec[d] != ec[t.alpha[d]] for d in ec):
        return None, ("edges: edge classes missing or inconsistent",)
    v0 = V[nodes[0]]
    if sorted(ec[d] for d in v0.darts) != sorted((UPPER, MIDDLE, LOWER)):
        return None, ("edges: v0 does not carry one edge of each class",)
    walks = {}
    used = set()
    for d0 in v0.darts:
        cls = ec[d0]
        seq = [(nodes[0], None, d0)]
        used.add(d0)
        x = t.alpha[d0]
        while True:
            vid = t.dart_vertex[x]
            v = V[vid]
            used.add(x)
            if ec[x] != cls:
                return None, (f"edges: {cls} walk changes class",)
            if v.kind is Kind.NODE:
                if v.node != 1:
                    return None, (f"edges: {cls} walk returns to v0",)
                seq.append((vid, x, None))
                break
            y = t.opp(x)
            if y in used:
                return None, (f"edges: {cls} walk is not simple",)
            used.add(y)
            seq.append((vid, x, y))
            x = t.alpha[y]
            if len(seq) > len(t.alpha):
                return None, (f"edges: {cls} walk does not terminate",)
        walks[cls] = tuple(seq)
    if len(used) != len(t.alpha):
        return None, ("edges: darts off the three walks",)
    return walks, ()


# --------------------------------------------------------------------------
# canonical codes


def _root(d: _Map) -> int:
    if isinstance(d, RailDiagram):
        return d.vertices[d.find(Kind.INF)].darts[0]
    if isinstance(d, KnotoidDiagram):
        return d.vertices[d.find(Kind.LEG)].darts[0]
    v0 = next(v for v in d.vertices.values() if v.kind is Kind.NODE and v.node == 0)
    return next(x for x in v0.darts if d.edge_class[x] == UPPER)


def _tag(d: _Map, x: int) -> str:
    v = d.vertex_of(x)
    k = v.kind
    if k is Kind.INF:
        return "I"
    if k in (Kind.LEG, Kind.HEAD):
        base = ("L" if k is Kind.LEG else "H") + ("a" if x == v.arc or v.arc is None else "r")
    elif k is Kind.XING:
        base = "Xo" if x in v.over else "Xu"
    elif k is Kind.RAILX:
        typ = d.structure.dart_type[x]
        base = f"R{v.rail}{'o' if v.arc_over else 'u'}{'r' if typ != 'arc' else 'a'}"
    else:
        base = f"N{v.node}"
    if isinstance(d, ThetaDiagram):
        base += d.edge_class[x]
    return base


def canonical_labeling(d: _Map) -> dict[int, int]:
    """First-visit numbering of darts from the root along sigma, then alpha."""
    a, s = d.alpha, d.sigma
    root = _root(d)
    num = {root: 0}
    order = [root]
    i = 0
    while i < len(order):
        x = order[i]
        i += 1
        for y in (s[x], a[x]):
            if y not in num:
                num[y] = len(order)
                order.append(y)
    return num


def canonical_code(d: _Map) -> bytes:
    """Byte string equal for two diagrams iff they are isomorphic rooted typed maps."""
    cached = d.__dict__.get("_code")
    if cached is not None:
        return cached
    rep = d.validate()
    if not rep.ok:
        raise DiagramError(rep.violations)
    num = canonical_labeling(d)
    if len(num) != len(d.alpha):
        raise DiagramError("map is not connected")
    order = sorted(num, key=num.get)
    prefix = {RailDiagram: "rkd", KnotoidDiagram: "knd", ThetaDiagram: "thd"}[type(d)]
    body = ";".join(f"{num[d.sigma[x]]},{num[d.alpha[x]]},{_tag(d, x)}" for x in order)
    code = f"{prefix}|{body}".encode()
    d.__dict__["_code"] = code
    return code


def relabel(d: _Map, mapping: Mapping[int, int]):
    """Rename darts by ``mapping``; vertex ids and hints are kept."""
    m = mapping
    alpha = {m[x]: m[y] for x, y in d.alpha.items()}
    verts = {}
    for vid, v in d.vertices.items():
        verts[vid] = replace(
            v,
            darts=tuple(m[x] for x in v.darts),
            over=frozenset(m[x] for x in v.over),
            arc=None if v.arc is None else m[v.arc],
        )
    if isinstance(d, ThetaDiagram):
        conn = None
        if d.connectors is not None:
            conn = tuple(tuple(m[x] for x in pair) for pair in d.connectors)
        return ThetaDiagram(alpha, verts, {m[x]: c for x, c in d.edge_class.items()}, conn)
    return type(d)(alpha, verts, d.hints)


def with_hints(d: RailDiagram, hints: Mapping[int, tuple[Fraction, Fraction]] | None) -> RailDiagram:
    return RailDiagram(dict(d.alpha), dict(d.vertices), None if hints is None else dict(hints))


def darts_of(vertices: Iterable[Vertex]) -> list[int]:
    return [x for v in vertices for x in v.darts]

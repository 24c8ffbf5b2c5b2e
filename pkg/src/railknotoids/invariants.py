"""Invariants: the F2 double-coset word and the Kauffman bracket."""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .maps import DiagramError, Kind, KnotoidDiagram, RailDiagram

# ---------------------------------------------------------------------------
# free group words

_NAMES = {1: "x1", -1: "x1^-1", 2: "x2", -2: "x2^-1"}


@dataclass(frozen=True)
class F2Word:
    """Letters +-1 (x1^{+-1}) and +-2 (x2^{+-1})."""

    letters: tuple[int, ...] = ()

    def __str__(self) -> str:
        return " ".join(_NAMES[x] for x in self.letters) if self.letters else "ε"

    def __len__(self) -> int:
        return len(self.letters)

    @classmethod
    def parse(cls, text: str) -> "F2Word":
        text = text.strip()
        if text in ("", "ε", "e"):
            return cls()
        rev = {v: k for k, v in _NAMES.items()}
        rev.update({"x1^-1": -1, "x1⁻¹": -1, "x2⁻¹": -2, "X1": -1, "X2": -2})
        out = []
        for tok in text.split():
            if tok not in rev:
                raise ValueError(f"bad letter {tok!r}")
            out.append(rev[tok])
        return cls(tuple(out))

    @property
    def is_normal(self) -> bool:
        w = self.letters
        reduced = all(w[i] != -w[i + 1] for i in range(len(w) - 1))
        return reduced and not (w and abs(w[0]) == 1) and not (w and abs(w[-1]) == 2)


def _check(d) -> None:
    rep = d.validate()
    if not rep.ok:
        raise DiagramError(rep.violations)


def f2_word(d: RailDiagram) -> F2Word:
    """Read x_i^{+-1} at every over-type crossing of rail i along the arc.

    The exponent is +1 when the arc passes the rail from left to right.
    """
    _check(d)
    st = d.structure
    out = []
    for vid, _, out_dart in st.arc[1:-1]:
        v = d.vertices[vid]
        if v.kind is Kind.RAILX and v.arc_over:
            eps = 1 if d.sigma[out_dart] == st.up[vid] else -1
            out.append(eps * v.rail)
    return F2Word(tuple(out))


def free_reduce(letters) -> tuple[int, ...]:
    stack = []
    for x in letters:
        if stack and stack[-1] == -x:
            stack.pop()
        else:
            stack.append(x)
    return tuple(stack)


def f2_normal_form(w: F2Word) -> F2Word:
    """Representative of the double coset <x1> w <x2>."""
    r = list(free_reduce(w.letters))
    i = 0
    while i < len(r) and abs(r[i]) == 1:
        i += 1
    r = r[i:]
    j = len(r)
    while j > 0 and abs(r[j - 1]) == 2:
        j -= 1
    return F2Word(tuple(r[:j]))


# ---------------------------------------------------------------------------
# Laurent polynomials


class LaurentPoly:
    """Integer Laurent polynomial in A; immutable by convention."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        t = {}
        for e, c in (terms or {}).items():
            if c:
                t[int(e)] = int(c)
        self.terms = t

    @classmethod
    def monomial(cls, e: int, c: int = 1) -> "LaurentPoly":
        return cls({e: c})

    def __add__(self, other):
        other = _lift(other)
        t = dict(self.terms)
        for e, c in other.terms.items():
            t[e] = t.get(e, 0) + c
        return LaurentPoly(t)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-_lift(other))

    def __mul__(self, other):
        other = _lift(other)
        t = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                t[e1 + e2] = t.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(t)

    __rmul__ = __mul__

    def shift(self, k: int) -> "LaurentPoly":
        return LaurentPoly({e + k: c for e, c in self.terms.items()})

    def __pow__(self, n: int):
        if n < 0:
            if len(self.terms) != 1:
                raise ValueError("only monomials have inverses")
            ((e, c),) = self.terms.items()
            if c not in (1, -1):
                raise ValueError("monomial with non-unit coefficient")
            return LaurentPoly({e * n: c ** (-n)})
        out = LaurentPoly({0: 1})
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly({0: other})
        return isinstance(other, LaurentPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{self.terms[e]}*A^{e}" for e in sorted(self.terms, reverse=True))

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"

    @classmethod
    def parse(cls, text: str) -> "LaurentPoly":
        text = text.strip()
        if text == "0":
            return cls()
        t = {}
        for term in text.split(" + "):
            c, e = term.split("*A^")
            t[int(e)] = t.get(int(e), 0) + int(c)
        return cls(t)


def _lift(x) -> LaurentPoly:
    return x if isinstance(x, LaurentPoly) else LaurentPoly({0: int(x)})


LOOP = LaurentPoly({2: -1, -2: -1})  # -A^2 - A^-2

# ---------------------------------------------------------------------------
# writhe and bracket

BRACKET_LIMIT = 40


def crossing_signs(d) -> dict[int, int]:
    """Sign of every XING: +1 iff sigma(outgoing over dart) is the outgoing under dart."""
    _check(d)
    arc = d.structure.arc if isinstance(d, RailDiagram) else d.arc
    outs = {}
    for vid, _, out in arc[1:-1]:
        if d.vertices[vid].kind is Kind.XING:
            outs.setdefault(vid, []).append(out)
    signs = {}
    for vid, (o1, o2) in outs.items():
        over = d.vertices[vid].over
        o_over, o_under = (o1, o2) if o1 in over else (o2, o1)
        signs[vid] = 1 if d.sigma[o_over] == o_under else -1
    return signs


def writhe(d) -> int:
    return sum(crossing_signs(d).values())


def _smoothing_pairs(k, vid):
    """(A pairs, B pairs): A joins each over dart to its clockwise neighbour."""
    v = k.vertices[vid]
    si, s = k.sigma_inv, k.sigma
    o1, o2 = sorted(v.over)
    return ((o1, si[o1]), (o2, si[o2])), ((o1, s[o1]), (o2, s[o2]))


def _crossing_order(k: KnotoidDiagram) -> list[int]:
    seen = []
    for vid, _, _ in k.arc[1:-1]:
        if vid not in seen:
            seen.append(vid)
    return seen


def bracket(k: KnotoidDiagram, limit: int = BRACKET_LIMIT) -> LaurentPoly:
    """Kauffman bracket by the state sum, accumulated crossing by crossing.

    States that agree on how the already-smoothed strands connect the
    unprocessed ends are summed together, so the cost grows with the width of
    that frontier rather than with 2^n.
    """
    _check(k)
    order = _crossing_order(k)
    if len(order) > limit:
        raise ValueError(f"crossing limit exceeded: {len(order)} > {limit}")
    a = k.alpha
    leg = k.vertices[k.find(Kind.LEG)].darts[0]
    head = k.vertices[k.find(Kind.HEAD)].darts[0]
    # partner maps over path ends; "L"/"H" are the terminals
    start = {leg: "L", "L": leg, head: "H", "H": head}
    if a[leg] == head:
        return LaurentPoly({0: 1})
    states = {_freeze(start): LaurentPoly({0: 1})}
    for vid in order:
        pairs_a, pairs_b = _smoothing_pairs(k, vid)
        darts = k.vertices[vid].darts
        nxt: dict = {}
        for key, weight in states.items():
            for pairs, power in ((pairs_a, 1), (pairs_b, -1)):
                P = dict(key)
                for x, y in pairs:
                    P[x], P[y] = y, x
                loops = 0
                for x in darts:
                    y = a[x]
                    if y in P and x in P and (y not in darts or x < y):
                        loops += _join(P, x, y)
                nk = _freeze(P)
                w = weight.shift(power) * (LOOP ** loops if loops else 1)
                nxt[nk] = nxt[nk] + w if nk in nxt else w
        states = nxt
    total = LaurentPoly()
    for key, w in states.items():
        if dict(key).get("L") != "H":
            raise AssertionError("open strand not closed up")
        total = total + w
    return total


def _join(P: dict, u, v) -> int:
    """Connect path ends u and v; returns 1 if a closed loop forms."""
    pu, pv = P.pop(u), P.pop(v)
    if pu == v:
        return 1
    P[pu], P[pv] = pv, pu
    return 0


def _freeze(P: dict):
    return frozenset(P.items())


def bracket_states(k: KnotoidDiagram) -> LaurentPoly:
    """Plain enumeration of all 2^n smoothings (reference implementation)."""
    _check(k)
    order = _crossing_order(k)
    total = LaurentPoly()
    for choice in itertools.product((0, 1), repeat=len(order)):
        parent = {x: x for x in k.alpha}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(x, y):
            rx, ry = find(x), find(y)
            if rx != ry:
                parent[rx] = ry

        for x, y in k.alpha.items():
            union(x, y)
        for vid, c in zip(order, choice):
            for x, y in _smoothing_pairs(k, vid)[c]:
                union(x, y)
        comps = len({find(x) for x in k.alpha})
        n_a = choice.count(0)
        total = total + LaurentPoly({n_a - (len(order) - n_a): 1}) * LOOP ** (comps - 1)
    return total


def normalized_bracket(k: KnotoidDiagram, limit: int = BRACKET_LIMIT) -> LaurentPoly:
    w = writhe(k)
    return LaurentPoly({-3 * w: -1 if w % 2 else 1}) * bracket(k, limit)


# ---------------------------------------------------------------------------
# independent skein oracle on a planar-diagram code


def pd_code(k: KnotoidDiagram):
    """Edge-labelled crossings (labels ccw from an over dart) and the two end labels."""
    label = {}
    for n, (x, y) in enumerate(sorted((x, y) for x, y in k.alpha.items() if x < y)):
        label[x] = label[y] = n
    crossings = []
    for vid, v in sorted(k.vertices.items()):
        if v.kind is Kind.XING:
            ds = v.darts
            i = next(j for j in range(4) if ds[j] in v.over)
            crossings.append(tuple(label[ds[(i + j) % 4]] for j in range(4)))
    ends = tuple(label[k.vertices[k.find(kind)].darts[0]] for kind in (Kind.LEG, Kind.HEAD))
    return crossings, ends


def bracket_skein_oracle(k: KnotoidDiagram, limit: int = 8) -> LaurentPoly:
    """<K> = A <K_A> + A^-1 <K_B>, smoothing the first crossing of a PD code."""
    crossings, ends = pd_code(k)
    if len(crossings) > limit:
        raise ValueError(f"crossing limit exceeded: {len(crossings)} > {limit}")
    return _skein(tuple(crossings))


def _skein(crossings) -> LaurentPoly:
    if not crossings:
        return LaurentPoly({0: 1})
    (p, q, r, s), rest = crossings[0], crossings[1:]
    # over strand is p-r; the A channel joins q with r and s with p
    out = LaurentPoly()
    for joins, power in ((((q, r), (s, p)), 1), (((p, q), (r, s)), -1)):
        cs = [list(c) for c in rest]
        loops = 0
        pending = list(joins)
        while pending:
            x, y = pending.pop()
            if x == y:
                loops += 1
                continue
            for c in cs:
                for i in range(4):
                    if c[i] == y:
                        c[i] = x
            pending = [(x if u == y else u, x if v == y else v) for u, v in pending]
        sub = _skein(tuple(tuple(c) for c in cs))
        out = out + sub.shift(power) * (LOOP ** loops if loops else 1)
    return out

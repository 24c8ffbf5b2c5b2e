"""Greedy simplification and bounded bidirectional search for rail equivalence.

A NOT_FOUND outcome only means that no path exists inside the bounds; it is
never a proof of inequivalence.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .maps import DiagramError, canonical_code
from .moves import (
    MoveSite,
    _apply,
    enumerate_creations,
    enumerate_reductions,
    inverse_site,
    translate_site,
)


def simplify_path(d):
    """Apply the lowest reduction site until none is left; returns (diagram, path)."""
    rep = d.validate()
    if not rep.ok:
        raise DiagramError(rep.violations)
    path = []
    while True:
        sites = enumerate_reductions(d)
        if not sites:
            return d, path
        d, _ = _apply(d, sites[0])
        path.append(sites[0])


def simplify(d):
    return simplify_path(d)[0]


@dataclass
class SearchOutcome:
    status: str  # CONNECTED | NOT_FOUND
    path: list = field(default_factory=list)
    explored: tuple = (0, 0)
    bounds: dict = field(default_factory=dict)
    reason: str = ""

    @property
    def connected(self) -> bool:
        return self.status == "CONNECTED"


@dataclass
class _Node:
    diagram: object
    parent: bytes | None
    site: MoveSite | None
    depth: int


def _monotone(d, max_crossings):
    sites = enumerate_reductions(d)
    sites += [m for m in enumerate_creations(d, d.crossing_count()) if m.is_neutral]
    return sites


def _everything(d, max_crossings):
    return enumerate_reductions(d) + enumerate_creations(d, max_crossings)


class _Side:
    def __init__(self, d):
        c = canonical_code(d)
        self.seen = {c: _Node(d, None, None, 0)}
        self.frontier = [c]
        self.depth = 0

    def expand(self, neighbours, max_crossings) -> None:
        nxt = []
        for c in sorted(self.frontier):
            node = self.seen[c]
            for m in neighbours(node.diagram, max_crossings):
                nd, _ = _apply(node.diagram, m)
                nc = canonical_code(nd)
                if nc not in self.seen:
                    self.seen[nc] = _Node(nd, c, m, node.depth + 1)
                    nxt.append(nc)
        self.frontier = nxt
        self.depth += 1

    def chain(self, code) -> list[_Node]:
        """Nodes from the root to ``code``."""
        out = []
        while code is not None:
            node = self.seen[code]
            out.append(node)
            code = node.parent
        return out[::-1]

    def key(self):
        return (len(self.frontier), min(self.frontier) if self.frontier else b"")


def _meet(a: _Side, b: _Side):
    common = a.seen.keys() & b.seen.keys()
    if not common:
        return None
    return min(common, key=lambda c: (a.seen[c].depth + b.seen[c].depth, c))


def _bidirectional(d1, d2, neighbours, max_crossings, max_depth, max_nodes):
    A, B = _Side(d1), _Side(d2)
    while True:
        meet = _meet(A, B)
        if meet is not None:
            return A, B, meet, ""
        remaining = max_depth - A.depth - B.depth
        if remaining <= 0:
            return A, B, None, "depth bound reached"
        if len(A.seen) + len(B.seen) > max_nodes:
            return A, B, None, "node budget exhausted"
        live = [s for s in (A, B) if s.frontier]
        if not live:
            return A, B, None, "search space exhausted"
        if remaining == 1 or len(live) == 1:
            live = [min(live, key=_Side.key)]
        for s in live:
            s.expand(neighbours, max_crossings)


def _replay(d1, A: _Side, B: _Side, meet) -> list[MoveSite]:
    path = [n.site for n in A.chain(meet)[1:]]
    current = A.seen[meet].diagram
    back = B.chain(meet)  # root of B ... meet
    for i in range(len(back) - 1, 0, -1):
        prev, node = back[i - 1], back[i]
        inv = inverse_site(prev.diagram, node.site, node.diagram)
        site = translate_site(inv, node.diagram, current)
        current, _ = _apply(current, site)
        path.append(site)
    return path


def connect(d1, d2, max_crossings: int, max_depth: int, max_nodes: int = 20000) -> SearchOutcome:
    """Search for a move path from d1 to d2.

    Crossing-non-increasing moves are tried first; if the two sides do not
    meet, the search restarts with all moves, creations capped by
    ``max_crossings``.
    """
    for d in (d1, d2):
        rep = d.validate()
        if not rep.ok:
            raise DiagramError(rep.violations)
    bounds = {"max_crossings": max_crossings, "max_depth": max_depth, "max_nodes": max_nodes}
    if canonical_code(d1) == canonical_code(d2):
        return SearchOutcome("CONNECTED", [], (1, 1), bounds)
    explored = [0, 0]
    reason = ""
    for neighbours in (_monotone, _everything):
        A, B, meet, reason = _bidirectional(d1, d2, neighbours, max_crossings, max_depth, max_nodes)
        explored[0] += len(A.seen)
        explored[1] += len(B.seen)
        if meet is not None:
            return SearchOutcome("CONNECTED", _replay(d1, A, B, meet), tuple(explored), bounds)
    return SearchOutcome("NOT_FOUND", [], tuple(explored), bounds, reason)


def replay(d, path):
    """Apply a path of sites, returning every intermediate diagram."""
    out = [d]
    for m in path:
        d, _ = _apply(d, m)
        out.append(d)
    return out

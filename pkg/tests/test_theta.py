from __future__ import annotations

import pytest

from gen import random_rail_diagram
from railknotoids.maps import Kind, LOWER, MIDDLE, UPPER, ThetaDiagram, canonical_code, trivial_diagram
from railknotoids.moves import MoveSite, apply_move
from railknotoids.theta import ThetaScopeError, from_theta, strip_connectors, to_theta


def rail_loop(end: Kind, where: str):
    t = trivial_diagram()
    return apply_move(t, MoveSite("R1+", (t.vertices[t.find(end)].arc,), ("over", where)))


def test_trivial_theta_shape():
    t = to_theta(trivial_diagram())
    assert t.crossing_count() == 0
    assert len(t.vertices) == 2
    assert all(v.kind is Kind.NODE for v in t.vertices.values())
    assert sorted(t.walks) == [LOWER, MIDDLE, UPPER]
    assert len(t.alpha) == 6  # three edges


@pytest.mark.parametrize("end", [Kind.LEG, Kind.HEAD])
@pytest.mark.parametrize("where, cls", [("above", UPPER), ("below", LOWER)])
def test_rail_crossing_becomes_middle_crossing(end, where, cls):
    t = to_theta(rail_loop(end, where))
    (x,) = [v for v in t.vertices.values() if v.kind is Kind.XING]
    assert {t.edge_class[z] for z in x.darts} == {MIDDLE, cls}
    # the arc passes over, so the middle strand is on top
    assert {t.edge_class[z] for z in x.over} == {MIDDLE}


def test_trivial_round_trip():
    d = trivial_diagram()
    assert canonical_code(from_theta(to_theta(d))) == canonical_code(d)


@pytest.mark.parametrize("seed", range(30))
def test_round_trip(seed):
    d = random_rail_diagram(seed)
    t = to_theta(d)
    assert t.count(Kind.NODE) == 2 and len(t.walks) == 3
    assert t.crossing_count() == d.crossing_count()
    assert canonical_code(from_theta(t)) == canonical_code(d)


@pytest.mark.parametrize("seed", range(10))
def test_cut_without_connectors_gives_rail_diagram(seed):
    d = random_rail_diagram(seed)
    e = from_theta(strip_connectors(to_theta(d)))
    assert e.validate().ok
    assert e.crossing_count() == d.crossing_count()


def test_rails_crossing_each_other_are_out_of_scope():
    t = to_theta(rail_loop(Kind.LEG, "above"))
    swap = {MIDDLE: LOWER, LOWER: MIDDLE, UPPER: UPPER}
    bad = ThetaDiagram(dict(t.alpha), dict(t.vertices), {x: swap[c] for x, c in t.edge_class.items()})
    assert bad.validate().ok
    (x,) = [v for v in bad.vertices.values() if v.kind is Kind.XING]
    assert {bad.edge_class[z] for z in x.darts} == {UPPER, LOWER}
    with pytest.raises(ThetaScopeError):
        from_theta(bad)


def test_connectors_can_be_stripped():
    t = to_theta(random_rail_diagram(2))
    assert t.connectors is not None
    assert strip_connectors(t).connectors is None

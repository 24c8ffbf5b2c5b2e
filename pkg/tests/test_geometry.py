from __future__ import annotations

import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gen import FIXTURES
from railknotoids.geometry import (
    GeometryError,
    RailArc3D,
    crossing_counts,
    is_generic_perpendicular,
    is_generic_railplane,
    perturb,
    project_perpendicular,
    project_railplane,
    random_arc,
    segment_interval,
    segments_meet_2d,
    validate_arc,
)
from railknotoids.io import read_arc
from railknotoids.maps import Kind, canonical_code, trivial_diagram, trivial_knotoid

STRAIGHT = RailArc3D([(0, 0, 0), (1, 0, 0)])
Y_PARALLEL = RailArc3D([(0, 0, 0), (F(1, 2), 0, F(1, 2)), (F(1, 2), 1, F(1, 2)), (1, 0, 0)])


def fixture(name):
    return read_arc(str(FIXTURES / name))


def test_straight_arc_is_valid_and_generic():
    assert validate_arc(STRAIGHT).ok
    assert is_generic_railplane(STRAIGHT).ok
    assert is_generic_perpendicular(STRAIGHT).ok
    assert crossing_counts(STRAIGHT) == (0, 0)


def test_interior_vertex_on_rail():
    a = RailArc3D([(0, 0, 0), (0, 0, 5), (1, 0, 0)])
    assert "interior touches rail" in validate_arc(a).violations


def test_endpoints_must_sit_on_their_rails():
    rep = validate_arc(RailArc3D([(1, 0, 0), (0, 0, 0)]))
    assert "first vertex not on rail 1" in rep.violations
    assert "last vertex not on rail 2" in rep.violations


def test_self_crossing_polyline():
    a = RailArc3D([(0, 0, 0), (2, 2, 0), (2, 0, 0), (F(1, 2), F(3, 2), 0), (1, 0, 1)])
    assert "not embedded" in validate_arc(a).violations


def test_vertical_segment_is_not_generic():
    rep = is_generic_railplane(Y_PARALLEL)
    assert not rep.ok
    assert any("segment projects to a point" in v for v in rep.violations)


def test_vertex_over_rail_line_is_not_generic():
    a = RailArc3D([(0, 0, 0), (0, 1, F(1, 2)), (1, 0, 0)])
    assert validate_arc(a).ok
    rep = is_generic_railplane(a)
    assert any("projects onto a rail line" in v for v in rep.violations)


def test_projection_of_non_generic_arc_raises():
    with pytest.raises(GeometryError):
        project_railplane(Y_PARALLEL)


def test_straight_projects_to_trivial():
    assert canonical_code(project_railplane(STRAIGHT)) == canonical_code(trivial_diagram())
    assert canonical_code(project_perpendicular(STRAIGHT)) == canonical_code(trivial_knotoid())


def test_front_pass_of_rail2():
    d = project_railplane(fixture("x2.arc"))
    (rx,) = [v for v in d.vertices.values() if v.kind is Kind.RAILX]
    assert rx.rail == 2 and rx.arc_over
    assert d.count(Kind.XING) == 0


def test_figure1_fixture_has_two_arc_crossings():
    d = project_railplane(fixture("figure1.arc"))
    assert (d.count(Kind.XING), d.count(Kind.RAILX)) == (2, 0)


def test_figure6_fixture_perpendicular_crossings():
    a = fixture("figure6.arc")
    assert project_perpendicular(a).crossing_count() == 2
    assert crossing_counts(a, "perp") == (2, 0)


def test_hints_follow_the_chart():
    d = project_railplane(fixture("figure1.arc"))
    leg = d.find(Kind.LEG)
    assert d.hints[leg][0] == 0


def test_perturb_keeps_generic_arcs():
    a = fixture("figure1.arc")
    assert perturb(a, 5) is a


def test_perturb_is_deterministic():
    b = perturb(Y_PARALLEL, 1)
    assert is_generic_railplane(b).ok and is_generic_perpendicular(b).ok
    assert b.vertices == perturb(Y_PARALLEL, 1).vertices
    assert b.vertices[0] == Y_PARALLEL.vertices[0]
    assert b.vertices[-1] == Y_PARALLEL.vertices[-1]


def test_random_arc_is_deterministic():
    assert random_arc(6, 3).vertices == random_arc(6, 3).vertices
    assert len(random_arc(6, 3).segments) == 6


@pytest.mark.parametrize("seed", range(100))
def test_random_arc_projections_validate(seed):
    a = random_arc(random.Random(seed).randint(1, 10), seed)
    assert validate_arc(a).ok
    d = project_railplane(a)
    k = project_perpendicular(a)
    assert d.validate().ok and k.validate().ok
    assert d.crossing_count() == sum(crossing_counts(a, "rail"))
    assert k.crossing_count() == sum(crossing_counts(a, "perp"))


coords = st.fractions(min_value=-2, max_value=2, max_denominator=6)
points = st.tuples(coords, coords)


@settings(max_examples=200, deadline=None)
@given(p=points, q=points, r=points, s=points)
def test_segment_meeting_is_symmetric(p, q, r, s):
    assert segments_meet_2d(p, q, r, s) == segments_meet_2d(r, s, p, q) == segments_meet_2d(q, p, s, r)


def test_segment_interval_on_crossing_segments():
    assert segment_interval((0, 0, 0), (2, 0, 0), (1, -1, 0), (1, 1, 0)) == (F(1, 2), F(1, 2))
    assert segment_interval((0, 0, 0), (2, 0, 0), (1, -1, 1), (1, 1, 1)) is None
    assert segment_interval((0, 0, 0), (2, 0, 0), (1, 0, 0), (3, 0, 0)) == (F(1, 2), 1)

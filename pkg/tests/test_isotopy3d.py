from __future__ import annotations

import random
from fractions import Fraction as F

import pytest

from railknotoids.geometry import RailArc3D, project_railplane, random_arc, validate_arc
from railknotoids.io import parse_arc
from railknotoids.isotopy3d import (
    DECOMPOSE_SCOPE,
    IsotopyError,
    TriangleMove3D,
    apply_triangle,
    decompose_to_nice,
    propose_move,
    random_isotopy,
    replay_isotopy,
    scope_features,
    triangle_move_valid,
)
from railknotoids.maps import canonical_code
from railknotoids.search import replay

STRAIGHT = RailArc3D([(0, 0, 0), (1, 0, 0)])
H = F(1, 2)


def sub(i, *p):
    return TriangleMove3D("SUBDIVIDE", index=i, point=p)


def arc(text):
    return parse_arc("rail-arc v1\n" + "\n".join("v " + row for row in text.strip().splitlines()))


def replays(a, m):
    sites = decompose_to_nice(a, m)
    got = replay(project_railplane(a), sites)[-1]
    assert canonical_code(got) == canonical_code(project_railplane(apply_triangle(a, m)))
    return sites


# validity


def test_clear_subdivide_is_valid():
    assert triangle_move_valid(STRAIGHT, sub(0, H, 1, H)).ok


def test_triangle_through_rail():
    a = RailArc3D([(0, 0, 0), (H, 1, 0), (H, 1, 1), (1, 0, 1)])
    rep = triangle_move_valid(a, sub(1, -1, -2, H))
    assert "triangle meets rail" in rep.violations


def test_merge_triangle_pierced_by_far_segment():
    a = RailArc3D([(0, 0, 0), (2, 2, 0), (2, -2, 0), (2, -2, 1), (1, 1, 1), (F(3, 2), 0, -1), (1, 0, -2)])
    assert validate_arc(a).ok
    rep = triangle_move_valid(a, TriangleMove3D("MERGE", index=1))
    assert "triangle meets arc" in rep.violations


def test_invalid_move_is_not_applied():
    with pytest.raises(IsotopyError):
        apply_triangle(STRAIGHT, TriangleMove3D("MERGE", index=0))


# inverse, commuting and splitting laws


def test_subdivide_then_merge_restores_arc():
    b = apply_triangle(STRAIGHT, sub(0, H, 1, H))
    assert len(b.vertices) == 3
    assert apply_triangle(b, TriangleMove3D("MERGE", index=1)).vertices == STRAIGHT.vertices


def test_space_slide_moves_endpoint():
    b = apply_triangle(STRAIGHT, TriangleMove3D("SPACE_SLIDE", end="leg", point=(0, 0, 1)))
    assert b.vertices[0] == (0, 0, 1)
    assert b.vertices[1:] == STRAIGHT.vertices[1:]


def test_compatible_moves_commute():
    a = RailArc3D([(0, 0, 0), (F(1, 3), 0, 0), (F(2, 3), 0, 0), (1, 0, 0)])
    m0 = sub(0, F(1, 6), 1, F(1, 2))
    m2 = sub(2, F(5, 6), -1, F(1, 2))
    first = apply_triangle(apply_triangle(a, m0), sub(3, *m2.point))
    second = apply_triangle(apply_triangle(a, m2), m0)
    assert first.vertices == second.vertices


def test_move_splits_inside_its_triangle():
    C = (H, 1, H)
    whole = apply_triangle(STRAIGHT, sub(0, *C))
    D = tuple((x + y) / 2 for x, y in zip(STRAIGHT.vertices[0], C))
    steps = [sub(0, *D), sub(1, *C), TriangleMove3D("MERGE", index=1)]
    b = STRAIGHT
    for m in steps:
        assert triangle_move_valid(b, m).ok, m
        b = apply_triangle(b, m)
    assert b.vertices == whole.vertices


# random isotopies


def test_zero_steps():
    a = random_arc(4, 1)
    b, moves = random_isotopy(a, 0, 9)
    assert b.vertices == a.vertices and moves == []


@pytest.mark.parametrize("seed", range(10))
def test_random_isotopy_replays(seed):
    a = random_arc(10, seed)
    b, moves = random_isotopy(a, 6, seed)
    assert len(moves) == 6
    assert random_isotopy(a, 6, seed)[0].vertices == b.vertices
    cur = a
    for m in moves:
        assert triangle_move_valid(cur, m).ok
        cur = apply_triangle(cur, m)
        assert validate_arc(cur).ok
    assert replay_isotopy(a, moves).vertices == b.vertices


def test_move_text_round_trip():
    for text in ("SUBDIVIDE 0 1/2 1 1/2", "MERGE 2", "SPACE_SLIDE leg 0 0 1"):
        assert str(TriangleMove3D.parse(text)) == text
    with pytest.raises(ValueError):
        TriangleMove3D.parse("SUBDIVIDE 0 1/0 1 1")


# decomposition


def test_empty_triangle_needs_no_moves():
    assert replays(STRAIGHT, sub(0, H, 1, H)) == []


def test_merge_across_a_strand_is_one_omega2():
    a = arc("""
0 0 1/12
-5/24 1/12 -7/8
-1/8 -11/12 -5/24
-3/8 5/12 -23/24
7/24 1/6 -1/3
1 0 -1/2
""")
    sites = replays(a, TriangleMove3D("MERGE", index=1))
    assert [m.kind for m in sites] == ["O2-"]


def test_subdivide_across_a_rail_is_one_rail_omega2():
    a = arc("""
0 0 5/8
13/8 -7/12 -3/8
29/24 -7/8 5/6
-1/12 1/3 11/12
5/4 5/12 7/8
1 0 -1
""")
    sites = replays(a, sub(1, F(109, 128), F(-787, 768), F(211, 256)))
    assert [m.kind for m in sites] == ["R2+"]


def test_space_slide_across_a_strand_is_one_slide():
    a = arc("""
0 0 1/6
4/3 -1/4 -1/3
37/24 3/4 -19/24
25/24 23/24 -19/24
-5/8 3/4 -1/2
1 0 -1/4
""")
    sites = replays(a, TriangleMove3D("SPACE_SLIDE", end="head", point=(1, 0, F(21, 32))))
    assert [m.kind for m in sites] == ["slide"]


def test_crowded_triangle_is_out_of_scope():
    for seed in range(400):
        rng = random.Random(seed)
        a = random_arc(8, seed)
        m = propose_move(a, rng)
        if triangle_move_valid(a, m).ok and scope_features(a, m) > DECOMPOSE_SCOPE:
            break
    else:
        pytest.fail("no crowded triangle found")
    with pytest.raises(IsotopyError, match="scope"):
        decompose_to_nice(a, m)

from __future__ import annotations

import itertools
from collections import Counter

import pytest

from gen import flip_railx, flip_xing, rail_bigons, random_knotoid, random_rail_diagram, site_sampler
from railknotoids.maps import Kind, canonical_code, trivial_diagram, trivial_knotoid
from railknotoids.moves import (
    KINDS,
    MoveError,
    MoveSite,
    apply_move,
    enumerate_all,
    enumerate_creations,
    enumerate_reductions,
    inverse_site,
)


def code(d):
    return canonical_code(d)


def over_over_bigon():
    """Arc pushed twice across rail 1, both times in front of it."""
    return apply_move(trivial_diagram(), MoveSite("R2+", (4, 9), ("over",)))


def test_trivial_has_no_reductions():
    assert enumerate_reductions(trivial_diagram()) == []


def test_kink_has_one_monogon_site():
    d = apply_move(trivial_diagram(), MoveSite("O1+", (6,), ("R", "second")))
    sites = [m for m in enumerate_reductions(d) if m.kind == "O1-"]
    assert len(sites) == 1
    assert code(apply_move(d, sites[0])) == code(trivial_diagram())


def test_rail_bigon_flags_decide_the_site():
    d = over_over_bigon()
    ((_, u, w),) = rail_bigons(d)
    assert d.vertices[u].rail == 1
    assert [m.kind for m in enumerate_reductions(d)].count("R2-") == 1
    mixed = flip_railx(d, u)
    assert mixed.validate().ok
    assert [m.kind for m in enumerate_reductions(mixed)].count("R2-") == 0


def test_trivial_creation_counts():
    sites = enumerate_creations(trivial_diagram(), 1)
    by_kind = Counter(m.kind for m in sites)
    assert by_kind["O1+"] == 4  # two sides times two over choices
    per_end = Counter(m.params for m in sites if m.kind == "R1+")
    assert sorted(per_end.values()) == [4, 4]


def test_creation_bound_is_respected():
    d = trivial_diagram()
    assert enumerate_creations(d, 0) == []
    assert all(m.delta == 1 for m in enumerate_creations(d, 1))


def test_rail_omega1_round_trip():
    t = trivial_diagram()
    leg = t.vertices[t.find(Kind.LEG)]
    d = apply_move(t, MoveSite("R1+", (leg.arc,), ("over", "above")))
    (site,) = [m for m in enumerate_reductions(d) if m.kind == "R1-"]
    assert code(apply_move(d, site)) == code(t)


def test_rail_omega1_under_loop_removed():
    t = trivial_diagram()
    leg = t.vertices[t.find(Kind.LEG)]
    d = apply_move(t, MoveSite("R1+", (leg.arc,), ("under", "below")))
    rx = [v for v in d.vertices.values() if v.kind is Kind.RAILX]
    assert len(rx) == 1 and rx[0].rail == 1 and not rx[0].arc_over
    (site,) = [m for m in enumerate_reductions(d) if m.kind == "R1-"]
    e = apply_move(d, site)
    assert e.crossing_count() == 0
    assert code(e) == code(t)


def _o3_face(d, site):
    a, s = d.alpha, d.sigma
    f = [site.params[0]]
    for _ in range(2):
        f.append(a[s[f[-1]]])
    return sorted({d.dart_vertex[x] for x in f})


def test_cyclic_triangle_has_no_omega3():
    (d, site), = site_sampler("O3", 1, seed=5)
    vids = _o3_face(d, site)
    assert all(d.vertices[v].kind is Kind.XING for v in vids)
    offered = 0
    for flips in itertools.product((0, 1), repeat=3):
        e = d
        for v, f in zip(vids, flips):
            if f:
                e = flip_xing(e, v)
        if any(m.kind == "O3" and _o3_face(e, m) == vids for m in enumerate_all(e, 0)):
            offered += 1
    # of the eight over/under patterns on a triangle exactly two are cyclic
    assert offered == 6


@pytest.mark.parametrize("seed", range(15))
def test_every_enumerated_site_applies(seed):
    d = random_rail_diagram(seed, cap=6)
    for m in enumerate_all(d, d.crossing_count() + 2):
        e = apply_move(d, m)
        assert e.validate().ok
        assert e.crossing_count() == d.crossing_count() + m.delta


@pytest.mark.parametrize("seed", range(8))
def test_knotoid_sites_apply(seed):
    k = random_knotoid(seed)
    for m in enumerate_all(k, k.crossing_count() + 2):
        assert m.kind in ("O1-", "O1+", "O2-", "O2+", "O3")
        assert apply_move(k, m).validate().ok


def test_invalid_site_raises_and_leaves_input():
    d = trivial_diagram()
    before = code(d)
    with pytest.raises(MoveError):
        apply_move(d, MoveSite("O1-", (6,)))
    with pytest.raises(MoveError):
        apply_move(d, MoveSite("O1+", (999,), ("L", "first")))
    assert code(d) == before


def test_rail_moves_rejected_on_knotoids():
    with pytest.raises(MoveError):
        apply_move(trivial_knotoid(), MoveSite("R1+", (0,), ("over", "above")))


@pytest.mark.parametrize("kind", KINDS)
def test_inverse_round_trip(kind):
    for d, m in site_sampler(kind, 10, seed=KINDS.index(kind)):
        e = apply_move(d, m)
        back = apply_move(e, inverse_site(d, m, e))
        assert code(back) == code(d)


def test_slide_flags_and_delta():
    pairs = site_sampler("slide", 30, seed=2)
    flags = {m.flags for _, m in pairs}
    assert flags <= {("-",), ("+",)}
    for d, m in pairs:
        assert apply_move(d, m).crossing_count() == d.crossing_count() + m.delta


def test_move_site_text_round_trip():
    for text in ("O1+ 6 L first", "R2- 11 17", "slide 9 21 +", "O3 4"):
        assert str(MoveSite.parse(text)) == text
    with pytest.raises(ValueError):
        MoveSite.parse("Q9 1")


def test_delta_values():
    assert MoveSite("O2+", (1, 2), ("first",)).delta == 2
    assert MoveSite("R1-", (3,)).delta == -1
    assert MoveSite("R3", (3,)).delta == 0
    assert MoveSite("slide", (1, 2), ("-",)).delta == -1


@pytest.mark.parametrize("seed", range(40))
def test_no_mixed_bigon_is_ever_reduced(seed):
    """Pattern audit: every offered rail bigon removal has matching flags."""
    d = random_rail_diagram(seed, cap=8)
    for m in enumerate_all(d, d.crossing_count() + 2):
        if m.kind == "R2-":
            u, w = (d.dart_vertex[x] for x in m.params)
            assert d.vertices[u].arc_over == d.vertices[w].arc_over
        if m.kind in ("R2-", "R1-", "slide") and m.delta < 0:
            e = apply_move(d, m)
            removed = {vid for vid in d.vertices if vid not in e.vertices}
            flags = {d.vertices[v].arc_over for v in removed if d.vertices[v].kind is Kind.RAILX}
            assert len(flags) <= 1

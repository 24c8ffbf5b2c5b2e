from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gen import FIXTURES, random_knotoid, random_walk
from railknotoids.geometry import (
    crossing_signs_geometric,
    project_perpendicular,
    project_railplane,
    random_arc,
    rail_word_geometric,
)
from railknotoids.invariants import (
    F2Word,
    LaurentPoly,
    bracket,
    bracket_skein_oracle,
    bracket_states,
    crossing_signs,
    f2_normal_form,
    f2_word,
    free_reduce,
    normalized_bracket,
    writhe,
)
from railknotoids.io import read_arc
from railknotoids.maps import Kind, trivial_diagram, trivial_knotoid
from railknotoids.moves import MoveSite, apply_move, enumerate_creations

ONE = LaurentPoly({0: 1})


def nf(text):
    return str(f2_normal_form(F2Word.parse(text)))


def knotoid_kinks():
    k = trivial_knotoid()
    return [apply_move(k, MoveSite("O1+", (0,), (s, w))) for s in "LR" for w in ("first", "second")]


# free group words


def test_trivial_word_is_empty():
    assert str(f2_word(trivial_diagram())) == "ε"


def test_single_front_pass_reads_x2():
    d = project_railplane(read_arc(str(FIXTURES / "x2.arc")))
    assert str(f2_word(d)) == "x2"


def test_under_passes_contribute_nothing():
    d = apply_move(trivial_diagram(), MoveSite("R2+", (4, 9), ("under",)))
    assert d.count(Kind.RAILX) == 2
    assert f2_word(d).letters == ()


@pytest.mark.parametrize(
    "word, expected",
    [
        ("x1 x1^-1", "ε"),
        ("x1 x1 x2 x1 x2 x2^-1 x2", "x2 x1"),
        ("x1 x2", "ε"),
        ("x2 x1", "x2 x1"),
        ("x2^-1 x1^-1 x2", "x2^-1 x1^-1"),
    ],
)
def test_normal_form_examples(word, expected):
    assert nf(word) == expected


letters = st.lists(st.sampled_from([1, -1, 2, -2]), max_size=8)


@settings(max_examples=200, deadline=None)
@given(w=letters, left=st.integers(-3, 3), right=st.integers(-3, 3))
def test_normal_form_is_a_double_coset_invariant(w, left, right):
    pad = (1 if left > 0 else -1,) * abs(left) + tuple(w) + (2 if right > 0 else -2,) * abs(right)
    assert f2_normal_form(F2Word(pad)) == f2_normal_form(F2Word(tuple(w)))


@settings(max_examples=200, deadline=None)
@given(w=letters)
def test_normal_form_is_idempotent_and_normal(w):
    n = f2_normal_form(F2Word(tuple(w)))
    assert n.is_normal
    assert f2_normal_form(n) == n


def _coset(w, k=3):
    sign = lambda n, g: (g if n > 0 else -g,) * abs(n)
    return {free_reduce(sign(a, 1) + tuple(w) + sign(b, 2)) for a in range(-k, k + 1) for b in range(-k, k + 1)}


def test_normal_form_brute_force_short_words():
    """Every short word lies in its normal form's double coset, and the normal form is its shortest member."""
    words = [w for n in range(4) for w in itertools.product([1, -1, 2, -2], repeat=n)]
    for w in words:
        target = f2_normal_form(F2Word(w)).letters
        assert free_reduce(w) in _coset(target)
        assert len(target) == min(len(x) for x in _coset(w))


def test_word_text_round_trip():
    for text in ("ε", "x1 x2^-1", "x2 x1"):
        assert str(F2Word.parse(text)) == text


@pytest.mark.parametrize("seed", range(30))
def test_word_matches_geometric_reading(seed):
    a = random_arc(random.Random(seed).randint(2, 8), seed)
    assert f2_word(project_railplane(a)).letters == rail_word_geometric(a)


# brackets


def test_trivial_bracket_is_one():
    k = trivial_knotoid()
    assert bracket(k) == ONE
    assert normalized_bracket(k) == ONE
    assert bracket_skein_oracle(k) == ONE


def test_kink_bracket_states():
    """Two states: one keeps a loop (-A^2 - A^-2), the other does not."""
    expected = {LaurentPoly({3: -1}), LaurentPoly({-3: -1})}
    for k in knotoid_kinks():
        assert bracket(k) in expected
        assert bracket_states(k) == bracket(k)
        assert normalized_bracket(k) == ONE


def test_omega2_expansion_keeps_bracket():
    k = random_knotoid(4)
    sites = [m for m in enumerate_creations(k, k.crossing_count() + 2) if m.kind == "O2+"]
    assert sites
    for m in sites[:5]:
        assert bracket(apply_move(k, m)) == bracket(k)


@pytest.mark.parametrize("seed", range(20))
def test_normalized_bracket_survives_moves(seed):
    k = random_knotoid(seed, cap=6)
    walked = random_walk(seed + 7, 8, cap=6, start=k)
    assert normalized_bracket(walked) == normalized_bracket(k)


@pytest.mark.parametrize("seed", range(30))
def test_state_sum_matches_skein_oracle(seed):
    k = random_knotoid(seed)
    assert bracket(k) == bracket_states(k) == bracket_skein_oracle(k)


def test_oracle_limit():
    k = trivial_knotoid()
    for _ in range(9):
        m = next(m for m in enumerate_creations(k, k.crossing_count() + 1) if m.kind == "O1+")
        k = apply_move(k, m)
    assert k.crossing_count() == 9
    with pytest.raises(ValueError):
        bracket_skein_oracle(k)


def test_polynomial_text():
    p = LaurentPoly({-3: -1, 2: 4})
    assert LaurentPoly.parse(str(p)) == p
    assert str(ONE) == "1*A^0"


# writhe


def test_writhe_of_kinks():
    assert writhe(trivial_knotoid()) == 0
    assert writhe(trivial_diagram()) == 0
    assert sorted({writhe(k) for k in knotoid_kinks()}) == [-1, 1]


@pytest.mark.parametrize("seed", range(20))
def test_crossing_signs_match_geometry(seed):
    a = random_arc(random.Random(seed).randint(2, 8), seed)
    for plane, project in (("rail", project_railplane), ("perp", project_perpendicular)):
        d = project(a)
        assert sorted(crossing_signs(d).values()) == sorted(crossing_signs_geometric(a, plane))

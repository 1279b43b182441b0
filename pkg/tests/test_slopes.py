from math import gcd

import mpmath as mp
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from markovsum import (
    INFINITY_SLOPE,
    MODULAR_PAIR,
    HolonomyPair,
    Slope,
    canonical_slopes,
    christoffel_word,
    dihedral_group,
    dihedral_orbit,
    farey_markov,
    holonomy_trace,
    mcshane_term,
    mcshane_term_from_trace,
    mcshane_term_sqrt_form,
    ulp,
)
from conftest import stream_triples_up_to


def box_slopes(bound):
    return list(canonical_slopes(bound))


# -- Slope type ----------------------------------------------------------------


def test_slope_canonicalization():
    assert Slope.from_pair(1, -1) == Slope(-1, 1)
    assert Slope.from_pair(-1, 0) == Slope(1, 0)
    assert Slope.from_pair(0, -1) == Slope(0, 1)
    assert Slope.from_pair(-3, -2) == Slope(3, 2)


def test_slope_rejects_bad_input():
    with pytest.raises(ValueError):
        Slope(2, 4)  # not primitive
    with pytest.raises(ValueError):
        Slope(1, -2)  # not canonical
    with pytest.raises(ValueError):
        Slope(0, 0)
    with pytest.raises(ValueError):
        Slope.from_pair(2, 6)


# -- Farey recursion and the trace oracle ---------------------------------------


def test_farey_markov_anchors():
    assert farey_markov(Slope(0, 1)) == 1
    assert farey_markov(INFINITY_SLOPE) == 1
    assert farey_markov(Slope(1, 1)) == 2
    assert farey_markov(Slope(1, 2)) == 5


def test_farey_markov_cross_checked_by_trace():
    for s in (Slope(0, 1), Slope(1, 1), Slope(1, 2)):
        assert holonomy_trace(s) == 3 * farey_markov(s)


def test_holonomy_trace_examples():
    assert christoffel_word(Slope(0, 1)) == "a"
    assert holonomy_trace(Slope(0, 1)) == 3
    assert len(christoffel_word(Slope(1, 1))) == 2
    assert holonomy_trace(Slope(1, 1)) == 6
    assert holonomy_trace(Slope(1, 2)) == 15


def test_christoffel_word_letter_counts():
    for s in box_slopes(12):
        word = christoffel_word(s)
        assert word.count("a") == s.q
        assert word.count("b") + word.count("B") == abs(s.p)
        if s.p > 0:
            assert "b" not in word
        if s.p < 0:
            assert "B" not in word


def test_oracle_agreement_box_30():
    for s in box_slopes(30):
        tau = holonomy_trace(s)
        assert tau == 3 * farey_markov(s)
        assert tau % 3 == 0 and tau > 0


def test_markov_values_appear_in_tree():
    values = {farey_markov(s) for s in box_slopes(30)}
    bound = max(values)
    from markovsum import MarkovStream

    stream = MarkovStream()
    tree_values = set()
    while stream.peek_next_value() <= bound:
        tree_values.add(stream.next_markov().value)
    assert values <= tree_values


# -- dihedral action -------------------------------------------------------------


def test_dihedral_group_has_six_elements():
    group = dihedral_group()
    assert len(group) == 6


def test_orbit_examples():
    assert len(dihedral_orbit(Slope(1, 1))) == 3
    assert len(dihedral_orbit(Slope.from_pair(1, -1))) == 3
    assert len(dihedral_orbit(Slope(1, 2))) == 6


def test_orbit_of_swap_fixed_points():
    # the swap fixes exactly [1:1] and [1:-1]; their orbits carry the two
    # smallest Markov numbers
    assert dihedral_orbit(Slope(1, 1)) == {Slope(1, 1), Slope(-1, 2), Slope(-2, 1)}
    assert dihedral_orbit(Slope(-1, 1)) == {Slope(-1, 1), Slope(0, 1), Slope(1, 0)}
    assert farey_markov(Slope(1, 1)) == 2
    assert farey_markov(Slope(-1, 1)) == 1


def test_orbit_sizes_box_30():
    small = {Slope(1, 1), Slope(-1, 1)}
    for s in box_slopes(30):
        expected = 3 if (s in dihedral_orbit(Slope(1, 1)) or s in dihedral_orbit(Slope(-1, 1))) else 6
        assert len(dihedral_orbit(s)) == expected
        if s in small:
            assert len(dihedral_orbit(s)) == 3


def test_farey_constant_on_orbits_box_30():
    for s in box_slopes(30):
        assert len({farey_markov(t) for t in dihedral_orbit(s)}) == 1


@settings(max_examples=80, deadline=None)
@given(st.integers(-40, 40), st.integers(0, 40))
def test_orbit_properties_random(p, q):
    if gcd(abs(p), q) != 1:
        return
    s = Slope.from_pair(p, q)
    orbit = dihedral_orbit(s)
    assert len(orbit) in (3, 6)
    assert s in orbit
    assert len({farey_markov(t) for t in orbit}) == 1
    # acting again on any member reproduces the same orbit
    for t in orbit:
        assert dihedral_orbit(t) == orbit


# -- holonomy pair invariants -----------------------------------------------------


def test_modular_pair_invariants():
    assert MODULAR_PAIR.trace_triple() == (3, 3, 3)
    assert MODULAR_PAIR.commutator_trace() == -2
    x, y, z = MODULAR_PAIR.trace_triple()
    assert x * x + y * y + z * z == x * y * z
    # the character-variety relation forces the commutator trace
    assert x * x + y * y + z * z - x * y * z - 2 == -2


def test_holonomy_pair_rejects_bad_matrices():
    with pytest.raises(ValueError):
        HolonomyPair((1, 0, 0, 1), (1, 1, 0, 1))  # commutator trace 2, triple off-cubic
    with pytest.raises(ValueError):
        HolonomyPair((2, 0, 0, 1), (1, -1, -1, 2))  # det 2


# -- length-series terms -----------------------------------------------------------


def test_mcshane_term_trace_three():
    # closed form (1 - sqrt(5)/3)/2 evaluated independently
    with mp.workdps(60):
        expected = (1 - mp.sqrt(5) / 3) / 2
    term = mcshane_term(Slope(0, 1), 50)
    assert mp.almosteq(term.value, expected, abs_eps=mp.mpf(10) ** -48)
    # frozen leading digits
    assert mp.nstr(term.value, 11) == "0.12732200375"


def test_mcshane_term_forms_agree_within_2_ulp():
    # the identity is between 2/(1 + e^len) and 1 - sqrt(1 - 4/trace^2),
    # both order-one expressions, so the ulp scale is 1
    from markovsum import PrecisionReal

    one_ulp = ulp(PrecisionReal.from_int(1, 40))
    for tau in [3, 6, 15, 39, 87, 582, 3 * 433494437]:
        a = mcshane_term_from_trace(tau, 40)
        b = mcshane_term_sqrt_form(tau, 40)
        assert abs(2 * a - 2 * b) <= 2 * one_ulp


def test_mcshane_term_decreasing_in_trace():
    values = [mcshane_term_from_trace(tau, 30) for tau in (3, 6, 15, 39, 87)]
    assert all(a > b for a, b in zip(values, values[1:]))
    assert all(v > 0 for v in values)


def test_mcshane_term_rejects_small_trace():
    with pytest.raises(ValueError):
        mcshane_term_from_trace(2, 30)


# -- canonical slope listing --------------------------------------------------------


def test_canonical_slopes_rings_and_uniqueness():
    slopes = box_slopes(9)
    assert slopes[0] == INFINITY_SLOPE
    assert len(slopes) == len(set(slopes))
    heights = [max(abs(s.p), s.q) for s in slopes]
    assert heights == sorted(heights)
    # prefix property: box(k) listing is a prefix of box(k+1) listing
    assert box_slopes(5) == slopes[: len(box_slopes(5))]
    # contents: exactly the canonical primitive pairs in the box
    expected = {(1, 0)} | {
        (p, q)
        for q in range(1, 10)
        for p in range(-9, 10)
        if gcd(abs(p), q) == 1
    }
    assert {(s.p, s.q) for s in slopes} == expected

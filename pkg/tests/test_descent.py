import random
from collections import Counter

import pytest
from hypothesis import assume, given, strategies as st

from hmfweights import (
    Embedding,
    InapplicableError,
    PlaceStructure,
    StripLimitExceeded,
    Weight,
    classify_residual,
    compute_transfer,
    expected_pattern,
    greedy_strip,
    hasse_weight,
    in_minimal_cone,
    intermediate_weight,
    verify_roundtrip,
)
from hmfweights.descent import Boundary, ResidualCase, pattern_mismatches, roundtrip_applicable
from hmfweights.sweep import highest_first

from conftest import all_weights, place_layouts, structure_and_weight

T = Embedding


def octic(k2):
    return (1, 1, k2, 2, 2, 1, 2, 2)


@pytest.mark.parametrize("p", [3, 5, 7])
def test_octic_intermediate_weight(p):
    ps = PlaceStructure(p, [8])
    for k2 in range(3, p + 1):
        assert intermediate_weight(ps, octic(k2)).k == (0, p + 1, k2, 1, p + 2, 0, p + 1, p + 2)


def test_intermediate_weight_equals_input_without_residual_set():
    ps = PlaceStructure(5, [4])
    assert intermediate_weight(ps, (3, 1, 4, 1)).k == (3, 1, 4, 1)


@pytest.mark.parametrize("p", [3, 5])
def test_intermediate_weight_for_cubic_with_a_two(p):
    # residual set {tau0, tau1}; both defining formulas agree inside the call
    assert intermediate_weight(PlaceStructure(p, [3]), (1, 1, 2)).k == (0, p, p + 2)


def test_octic_classification():
    ps = PlaceStructure(3, [8])
    cases = {c.tau: c for c in classify_residual(ps, octic(3))}
    assert set(cases) == {T(0, 0), T(0, 3), T(0, 5), T(0, 6)}
    assert cases[T(0, 0)] == ResidualCase(T(0, 0), "i", 1, 0, Boundary.ONE_OUTSIDE_HASSE)
    assert cases[T(0, 5)] == ResidualCase(T(0, 5), "i", 1, 0, Boundary.TWO_OUTSIDE_THETA)
    assert cases[T(0, 3)] == ResidualCase(T(0, 3), "iii", 1, 0, Boundary.TWO_IN_THETA)
    assert cases[T(0, 6)] == ResidualCase(T(0, 6), "iii", 1, 1, Boundary.TWO_IN_THETA)
    assert cases[T(0, 6)].segment(ps) == (T(0, 5), T(0, 6), T(0, 7))
    assert pattern_mismatches(ps, octic(3)) == []


def test_cubic_classification():
    ps = PlaceStructure(3, [3])
    assert classify_residual(ps, (1, 1, 3)) == [ResidualCase(T(0, 0), "i", 1, 0, Boundary.ONE_OUTSIDE_HASSE)]
    assert classify_residual(ps, (3, 4, 5)) == []


def test_case_two_with_a_one_behind():
    # tau0 has (k, k_Fr^-1, k_Fr^-2) = (2, 1, 3): case ii
    ps = PlaceStructure(5, [4])
    (c,) = [c for c in classify_residual(ps, (2, 1, 3, 3)) if c.tau == T(0, 0)]
    assert c.case == "ii"


def _case(case, s, t, boundary):
    return ResidualCase(T(0, 0), case, s, t, boundary)


@pytest.mark.parametrize("p", [3, 5])
def test_expected_patterns(p):
    assert expected_pattern(_case("i", 1, 0, Boundary.ONE_OUTSIDE_HASSE), p) == (0, p + 1)
    assert expected_pattern(_case("i", 1, 0, Boundary.ONE_IN_HASSE), p) == (0, p)
    assert expected_pattern(_case("i", 3, 0, Boundary.TWO_IN_THETA), p) == (0, p, p, p + 2)
    assert expected_pattern(_case("iii", 2, 0, Boundary.OTHERWISE), p) == (1, p + 1, p + 1)
    assert expected_pattern(_case("ii", 1, 1, Boundary.TWO_IN_THETA), p) == (0, p + 1, p + 2)
    assert expected_pattern(_case("iii", 2, 3, Boundary.OTHERWISE), p) == (0, p, p, p + 1, p + 1, p + 1)


def test_greedy_strip_on_octic():
    ps = PlaceStructure(3, [8])
    trace = greedy_strip(ps, (0, 4, 3, 1, 5, 0, 4, 5))
    assert trace.final.k == octic(3)
    assert trace.stripped == (T(0, 0), T(0, 3), T(0, 5), T(0, 6))
    assert trace.stripped_multiset == Counter({T(0, i): 1 for i in (0, 3, 5, 6)})


def test_greedy_strip_small_cases():
    ps = PlaceStructure(3, [2])
    trace = greedy_strip(ps, (0, 4))
    assert trace.stripped == (T(0, 0),) and trace.final.k == (1, 1)
    assert greedy_strip(ps, (1, 1)).steps == ()


def test_greedy_strip_detects_divergence():
    with pytest.raises(StripLimitExceeded):
        greedy_strip(PlaceStructure(3, [1]), (-1,))


def test_greedy_strip_rejects_bad_chooser():
    with pytest.raises(ValueError):
        greedy_strip(PlaceStructure(3, [2]), (0, 4), choose=lambda c: T(0, 1))


def test_roundtrip_examples():
    assert verify_roundtrip(PlaceStructure(3, [8]), octic(3)).ok
    rep = verify_roundtrip(PlaceStructure(3, [3]), (1, 1, 3))
    assert rep.ok and rep.intermediate.k == (0, 4, 3)
    regular = verify_roundtrip(PlaceStructure(3, [2]), (3, 4))
    assert regular.ok and regular.trace.steps == ()


@pytest.mark.parametrize("k, reason", [
    ((1, 2, 4), "1 mod p"),
    ((1, 4, 1), "minimal cone"),
    ((1, 1, 1), "parallel weight one"),
])
def test_roundtrip_refuses_outside_its_hypotheses(k, reason):
    ps = PlaceStructure(3, [3])
    assert reason in roundtrip_applicable(ps, k)
    with pytest.raises(InapplicableError):
        verify_roundtrip(ps, k)


@given(structure_and_weight(lo=1, hi=9))
def test_intermediate_weight_minus_residual_hasse_weights_is_k(data):
    ps, k = data
    kpp = list(intermediate_weight(ps, k).k)
    for tau in compute_transfer(ps, k).residual_set:
        kpp = [a - b for a, b in zip(kpp, hasse_weight(ps, tau))]
    assert tuple(kpp) == k


@given(structure_and_weight(lo=-2, hi=15), st.randoms(use_true_random=False))
def test_strip_outcome_does_not_depend_on_order(data, rnd):
    ps, k = data
    try:
        a = greedy_strip(ps, k)
    except StripLimitExceeded:
        assume(False)
    b = greedy_strip(ps, k, highest_first)
    c = greedy_strip(ps, k, lambda cands: rnd.choice(sorted(cands)))
    assert a.final == b.final == c.final
    assert a.stripped_multiset == b.stripped_multiset == c.stripped_multiset
    assert in_minimal_cone(ps, a.final)
    assert sum(k) - sum(a.final.k) == (ps.p - 1) * len(a.steps)


@pytest.mark.parametrize("places", list(place_layouts(4)))
def test_roundtrip_and_patterns_exhaustive_small(places):
    ps = PlaceStructure(3, places)
    rng = random.Random(7)
    for k in all_weights(ps, 1, 3):
        if roundtrip_applicable(ps, k) is not None:
            continue
        assert verify_roundtrip(ps, k).ok, k
        assert pattern_mismatches(ps, k) == [], k
        kpp = intermediate_weight(ps, k)
        ref = greedy_strip(ps, kpp)
        alt = greedy_strip(ps, kpp, lambda c: rng.choice(sorted(c)))
        assert (alt.final, alt.stripped_multiset) == (ref.final, ref.stripped_multiset)


def test_strip_keeps_l():
    trace = greedy_strip(PlaceStructure(3, [2]), Weight((0, 4), (1, -1)))
    assert trace.final.l == (1, -1)

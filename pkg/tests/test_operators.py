import pytest
from hypothesis import given, strategies as st

from hmfweights import (
    Embedding,
    PlaceStructure,
    Weight,
    apply_hasse,
    basis_vector,
    frobenius_inverse,
    hasse_weight,
    in_minimal_cone,
    strict_shifted_cone,
    strippable_set,
    theta_shift,
    unapply_hasse,
)

from conftest import structure_and_weight

T = Embedding


@pytest.mark.parametrize("places, tau, expected", [
    ([2], (0, 0), (-1, 3)),
    ([1], (0, 0), (2,)),
    ([3], (0, 2), (3, 0, -1)),
    ([2, 1], (1, 0), (0, 0, 2)),
])
def test_hasse_weight_examples(places, tau, expected):
    assert hasse_weight(PlaceStructure(3, places), T(*tau)) == expected


def test_hasse_invariants_build_the_cubic_lift():
    ps = PlaceStructure(3, [3])
    w = apply_hasse(ps, apply_hasse(ps, Weight((1, 1, 3)), T(0, 0)), T(0, 2))
    assert w.k == (3, 4, 2)
    assert apply_hasse(PlaceStructure(3, [1]), Weight((0,)), T(0, 0)).k == (2,)


def test_theta_examples():
    ps = PlaceStructure(3, [3])
    w = theta_shift(ps, Weight((3, 4, 2)), T(0, 2))
    assert (w.k, w.l) == ((6, 4, 3), (0, 0, -1))
    one = theta_shift(PlaceStructure(3, [1]), Weight((1,)), T(0, 0))
    assert (one.k, one.l) == ((5,), (-1,))


def test_strippable_examples():
    ps = PlaceStructure(3, [8])
    assert strippable_set(ps, (0, 4, 3, 1, 5, 0, 4, 5)) == {T(0, 0), T(0, 3), T(0, 5)}
    assert strippable_set(ps, (1, 1, 3, 2, 2, 1, 1, 5)) == {T(0, 6)}
    assert strippable_set(PlaceStructure(3, [3]), (1, 1, 3)) == frozenset()


@pytest.mark.parametrize("places, k, expected", [
    ([3], (3, 4, 2), False),
    ([3], (4, 4, 4), True),
    ([2], (2, 2), False),
    ([1], (3,), True),
])
def test_strict_shifted_cone_examples(places, k, expected):
    assert strict_shifted_cone(PlaceStructure(3, places), k) is expected


@st.composite
def weight_and_embedding(draw):
    ps, k = draw(structure_and_weight())
    l = draw(st.lists(st.integers(-3, 3), min_size=ps.n, max_size=ps.n))
    tau = ps.embedding_at(draw(st.integers(0, ps.n - 1)))
    return ps, Weight(k, l), tau


@given(weight_and_embedding())
def test_hasse_is_invertible_and_keeps_l(data):
    ps, w, tau = data
    assert unapply_hasse(ps, apply_hasse(ps, w, tau), tau) == w
    assert apply_hasse(ps, w, tau).l == w.l
    assert sum(hasse_weight(ps, tau)) == ps.p - 1


@given(weight_and_embedding())
def test_theta_totals(data):
    ps, w, tau = data
    shifted = theta_shift(ps, w, tau)
    assert sum(shifted.k) - sum(w.k) == ps.p + 1
    assert [b - a for a, b in zip(w.l, shifted.l)] == [-x for x in basis_vector(ps, tau)]
    # Theta and the Hasse invariant at the same embedding differ by 2 e_tau
    diff = [a - b for a, b in zip(theta_shift(ps, w, tau).k, apply_hasse(ps, w, tau).k)]
    assert diff == [2 * x for x in basis_vector(ps, tau)]


@given(weight_and_embedding(), st.integers(0, 10))
def test_theta_operators_commute(data, j):
    ps, w, tau = data
    sigma = ps.embedding_at(j % ps.n)
    assert theta_shift(ps, theta_shift(ps, w, tau), sigma) == theta_shift(ps, theta_shift(ps, w, sigma), tau)


@given(structure_and_weight())
def test_strippable_set_is_empty_exactly_in_the_cone(data):
    ps, k = data
    assert (not strippable_set(ps, k)) == in_minimal_cone(ps, k)
    for t in strippable_set(ps, k):
        assert ps.p * k[ps.index(t)] < k[ps.index(frobenius_inverse(ps, t))]


@given(structure_and_weight(lo=1, hi=12))
def test_strict_shifted_cone_implies_regular_with_f_above_one(data):
    ps, k = data
    # on a place with f = 1 the inequality reads (p - 1)(k - 2) > 0
    if strict_shifted_cone(ps, k):
        assert min(k) >= 2

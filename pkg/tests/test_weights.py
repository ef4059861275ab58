import itertools

import pytest
from hypothesis import given, strategies as st

from hmfweights import (
    Embedding,
    PlaceStructure,
    StructureError,
    Weight,
    basis_vector,
    frobenius,
    frobenius_inverse,
    in_minimal_cone,
    is_regular,
)

from conftest import place_layouts, structure_and_weight


@pytest.mark.parametrize("places, tau, expected", [
    ([1], (0, 0), (0, 0)),
    ([3], (0, 0), (0, 1)),
    ([3], (0, 2), (0, 0)),
    ([2, 3], (1, 2), (1, 0)),
])
def test_frobenius_inverse_examples(places, tau, expected):
    ps = PlaceStructure(3, places)
    assert frobenius_inverse(ps, Embedding(*tau)) == Embedding(*expected)


@pytest.mark.parametrize("places, tau, expected", [
    ([2], (0, 1), (0, 1)),
    ([1, 1], (1, 0), (0, 1)),
    ([3], (0, 0), (1, 0, 0)),
])
def test_basis_vectors(places, tau, expected):
    assert basis_vector(PlaceStructure(3, places), Embedding(*tau)) == expected


@pytest.mark.parametrize("p", [3, 5, 7])
def test_regularity_of_cubic_weights(p):
    assert is_regular((2, 2, 2))
    for k2 in range(2, p + 1):
        assert not is_regular((1, 1, k2))
        if k2 >= 3:
            assert is_regular((p, p + 1, k2 - 1))


def test_minimal_cone_examples():
    assert in_minimal_cone(PlaceStructure(3, [2]), (1, 1))
    assert not in_minimal_cone(PlaceStructure(3, [8]), (0, 4, 3, 1, 5, 0, 4, 5))
    assert in_minimal_cone(PlaceStructure(3, [1]), (0,))


def test_structure_validation():
    with pytest.raises(StructureError):
        PlaceStructure(4, [2])
    with pytest.raises(StructureError):
        PlaceStructure(2, [2])
    with pytest.raises(StructureError):
        PlaceStructure(3, [0])
    with pytest.raises(StructureError):
        PlaceStructure(3, [])
    ps = PlaceStructure(3, [2])
    with pytest.raises(StructureError):
        ps.check(Embedding(0, 2))
    with pytest.raises(StructureError):
        ps.check_vector((1, 2, 3))


def test_embedding_order_is_place_major():
    ps = PlaceStructure(5, [2, 1, 3])
    assert [ps.index(t) for t in ps] == list(range(6))
    assert ps.embedding_at(3) == Embedding(2, 0)
    assert ps.restrict((1, 2, 3, 4, 5, 6), 2) == (4, 5, 6)


def test_weight_defaults_to_zero_l():
    w = Weight((1, 2, 3))
    assert w.l == (0, 0, 0)
    with pytest.raises(StructureError):
        Weight((1, 2), (0,))


@pytest.mark.parametrize("places", list(place_layouts(6)))
def test_frobenius_cycles(places):
    ps = PlaceStructure(3, places)
    for tau in ps:
        assert frobenius(ps, frobenius_inverse(ps, tau)) == tau
        assert frobenius_inverse(ps, frobenius(ps, tau)) == tau
        orbit = tau
        for _ in range(places[tau.place]):
            orbit = frobenius_inverse(ps, orbit)
        assert orbit == tau
        # the orbit of tau under Fr^-1 is exactly its place
        seen = {ps.shift(tau, s) for s in range(places[tau.place])}
        assert seen == set(ps.place_embeddings(tau.place))


def test_frobenius_relabels_the_index_downwards():
    ps = PlaceStructure(3, [4])
    for i, j in itertools.product(range(4), repeat=2):
        # Fr^j applied to tau_i lands on tau_{i-j}
        tau = Embedding(0, i)
        for _ in range(j):
            tau = frobenius(ps, tau)
        assert tau.i == (i - j) % 4


@given(structure_and_weight(), st.randoms(use_true_random=False))
def test_minimal_cone_is_place_permutation_invariant(data, rnd):
    ps, k = data
    order = list(range(len(ps.places)))
    rnd.shuffle(order)
    permuted = PlaceStructure(ps.p, [ps.places[v] for v in order])
    k_perm = tuple(x for v in order for x in ps.restrict(k, v))
    assert in_minimal_cone(ps, k) == in_minimal_cone(permuted, k_perm)


@given(structure_and_weight())
def test_minimal_cone_matches_pointwise_definition(data):
    ps, k = data
    pointwise = all(ps.p * k[ps.index(t)] >= k[ps.index(frobenius_inverse(ps, t))] for t in ps)
    assert in_minimal_cone(ps, k) == pointwise

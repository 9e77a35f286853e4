import pytest

from koszul_derham.core.ring import RingContext, divides, monomial_basis, multiply_monomials
from koszul_derham.errors import InputError
from koszul_derham.utils.series import polynomial_ring_series


def test_ring_context_sums_weights():
    ring = RingContext(["x", "y", "z"], [3, 2, 1])
    assert ring.n == 3
    assert ring.omega == 6
    assert ring.index_of("y") == 1
    assert ring.degree_of((1, 1, 1)) == 6


@pytest.mark.parametrize(
    "names, weights, reason",
    [
        ([], [], "bad_variables"),
        (["x", "x"], [1, 1], "bad_variables"),
        (["x", "y"], [1], "bad_weights"),
        (["x", "y"], [1, 0], "bad_weights"),
        (["1x"], [1], "bad_variables"),
    ],
)
def test_ring_context_rejects_bad_input(names, weights, reason):
    with pytest.raises(InputError) as excinfo:
        RingContext(names, weights)
    assert excinfo.value.reason == reason


def test_monomial_basis_standard_grading():
    ring = RingContext.standard(["x", "y"])
    basis = monomial_basis(ring, 2)
    assert list(basis) == [(2, 0), (1, 1), (0, 2)]
    assert basis.index((1, 1)) == 1


def test_monomial_basis_weighted_and_negative():
    ring = RingContext(["x", "y", "z"], [3, 2, 1])
    assert len(monomial_basis(ring, 6)) == 7
    assert all(ring.degree_of(m) == 6 for m in monomial_basis(ring, 6))
    assert len(monomial_basis(ring, -1)) == 0
    assert list(monomial_basis(ring, 0)) == [(0, 0, 0)]


@pytest.mark.parametrize("weights", [[1, 1, 1], [3, 2, 1], [1, 1, 1, 1], [2, 5]])
def test_basis_sizes_match_generating_function(weights):
    ring = RingContext([f"x{i}" for i in range(len(weights))], weights)
    oracle = polynomial_ring_series(weights, 30)
    assert [len(monomial_basis(ring, t)) for t in range(31)] == oracle


def test_monomial_helpers():
    assert multiply_monomials((1, 0, 2), (0, 3, 1)) == (1, 3, 3)
    assert divides((1, 0), (2, 1))
    assert not divides((0, 2), (2, 1))

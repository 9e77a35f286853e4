import logging
import random
from fractions import Fraction

import pytest

from koszul_derham.errors import PreconditionError
from koszul_derham.utils.linalg import (
    QuotientSpace,
    RationalMatrix,
    Subspace,
    image_basis,
    kernel_basis,
    membership,
    quotient_coordinates,
    rank,
    solve,
)


def F(*values):
    return [Fraction(v) for v in values]


def test_rank_of_singular_and_full_rank_matrices():
    singular = RationalMatrix.from_dense([F(1, 2, 3), F(2, 4, 6), F(1, 0, 1)])
    assert rank(singular) == 2
    assert rank(singular, use_modular=False) == 2
    identity = RationalMatrix.from_dense([F(1, 0), F(0, 1)])
    assert rank(identity) == 2
    assert rank(RationalMatrix.zero(3, 4)) == 0


def test_rank_with_fractional_entries():
    M = RationalMatrix.from_dense([[Fraction(1, 3), Fraction(1, 2)], [Fraction(2, 3), Fraction(1)]])
    assert rank(M) == 1


def test_kernel_basis_annihilated_by_matrix():
    M = RationalMatrix.from_dense([F(1, 2, 3, 4), F(2, 4, 6, 8), F(0, 1, 1, 1)])
    kernel = kernel_basis(M)
    assert kernel.dim == 4 - rank(M)
    for v in kernel.basis:
        assert M.apply(v) == {}


def test_image_basis_is_canonical():
    M = RationalMatrix.from_dense([F(1, 2), F(2, 4), F(3, 6)])
    image = image_basis(M)
    assert image.dim == 1
    assert membership({0: Fraction(2), 1: Fraction(4), 2: Fraction(6)}, image)
    assert not membership({0: Fraction(1)}, image)


def test_subspace_equality_ignores_basis_choice():
    a = Subspace.span(3, [{0: Fraction(1), 1: Fraction(1)}, {1: Fraction(1)}])
    b = Subspace.span(3, [{0: Fraction(1)}, {1: Fraction(5)}])
    assert a == b
    assert a != Subspace.full(3)


def test_quotient_coordinates():
    Z = Subspace.span(3, [{0: Fraction(1)}, {1: Fraction(1)}])
    B = Subspace.span(3, [{0: Fraction(1), 1: Fraction(1)}])
    H = QuotientSpace(Z, B)
    assert H.dim == 1
    x = {0: Fraction(1)}
    y = {1: Fraction(-1)}
    # e0 = (e0 + e1) - e1, so e0 and -e1 share a class
    assert H.coordinates(x) == H.coordinates(y)
    assert H.coordinates(x) != [0]
    assert H.is_zero_class({0: Fraction(3), 1: Fraction(3)})
    assert quotient_coordinates({0: Fraction(2)}, Z, B) == [2 * c for c in H.coordinates(x)]


def test_quotient_rejects_non_cycles_and_bad_boundaries():
    Z = Subspace.span(3, [{0: Fraction(1)}])
    with pytest.raises(PreconditionError):
        quotient_coordinates({2: Fraction(1)}, Z, Subspace.zero(3))
    with pytest.raises(PreconditionError):
        QuotientSpace(Z, Subspace.span(3, [{1: Fraction(1)}]))


def test_lift_inverts_coordinates():
    Z = Subspace.span(4, [{0: Fraction(1), 3: Fraction(2)}, {1: Fraction(1)}, {2: Fraction(1)}])
    B = Subspace.span(4, [{1: Fraction(1), 2: Fraction(1)}])
    H = QuotientSpace(Z, B)
    for k in range(H.dim):
        coords = [Fraction(1) if m == k else Fraction(0) for m in range(H.dim)]
        assert H.coordinates(H.lift(coords)) == coords


def test_solve():
    M = RationalMatrix.from_dense([F(1, 1), F(0, 2)])
    x = solve(M, {0: Fraction(3), 1: Fraction(4)})
    assert M.apply(x) == {0: Fraction(3), 1: Fraction(4)}
    singular = RationalMatrix.from_dense([F(1, 1), F(1, 1)])
    assert solve(singular, {0: Fraction(1)}) is None


def test_composition():
    A = RationalMatrix.from_dense([F(1, -1)])
    B = RationalMatrix.from_dense([F(1), F(1)])
    assert (A @ B).is_zero()
    with pytest.raises(PreconditionError):
        B @ B


def random_matrix(rng, rows, cols):
    return RationalMatrix(
        rows,
        cols,
        {
            i: {j: Fraction(rng.randint(-3, 3), rng.randint(1, 2)) for j in range(cols) if rng.random() < 0.4}
            for i in range(rows)
        },
    )


def test_rank_equals_rank_of_transpose():
    rng = random.Random(17)
    for _ in range(60):
        M = random_matrix(rng, rng.randint(1, 7), rng.randint(1, 7))
        assert rank(M) == rank(M.transpose())
        assert rank(M, use_modular=False) == rank(M)


def test_image_of_kernel_lies_in_kernel():
    rng = random.Random(29)
    for _ in range(40):
        M = random_matrix(rng, rng.randint(1, 6), rng.randint(2, 8))
        kernel = kernel_basis(M)
        assert kernel.dim + rank(M) == M.cols
        if not kernel.dim:
            continue
        N = RationalMatrix.from_columns(M.cols, kernel.basis)
        assert (M @ N).is_zero()
        assert kernel.contains_subspace(image_basis(N))


def test_modular_disagreement_is_logged(monkeypatch, caplog):
    from koszul_derham.config import EngineSettings
    from koszul_derham.utils import linalg

    monkeypatch.setattr(linalg, "_settings", lambda: EngineSettings(modular_prime=3))
    M = RationalMatrix.from_dense([F(1, 1), F(1, 4)])
    with caplog.at_level(logging.WARNING, logger="koszul_derham.utils.linalg"):
        assert rank(M) == 2
    assert "differs from the exact rank 2" in caplog.text

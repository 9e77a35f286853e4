from fractions import Fraction

import numpy as np

from koszul_derham.utils.modular import gauss_rank_modp, modular_rank, reduce_entries
from koszul_derham.utils.series import complete_intersection_series, polynomial_ring_series

PRIME = 2147483647


def test_modular_rank_is_exact_on_small_integer_matrices():
    entries = {0: {0: Fraction(1), 1: Fraction(2)}, 1: {0: Fraction(2), 1: Fraction(4)}, 2: {2: Fraction(5)}}
    assert modular_rank(entries, 3, 3, PRIME) == 2


def test_reduction_handles_fractions():
    A = reduce_entries({0: {0: Fraction(1, 2)}}, 1, 1, 7)
    assert int(A[0, 0]) * 2 % 7 == 1
    assert reduce_entries({0: {0: Fraction(1, 7)}}, 1, 1, 7) is None


def test_gauss_rank_small_prime_collapses():
    # full rank over Q, singular mod 5
    A = np.array([[1, 2], [3, 1]], dtype=np.int64)
    assert gauss_rank_modp(A.copy(), 5) == 1
    assert gauss_rank_modp(A.copy(), 7) == 2


def test_ring_series():
    assert polynomial_ring_series([1, 1], 4) == [1, 2, 3, 4, 5]
    assert polynomial_ring_series([3, 2, 1], 6)[6] == 7


def test_complete_intersection_series():
    # Fermat cubic: three quadrics in three variables
    assert complete_intersection_series([2, 2, 2], [1, 1, 1], 5) == [1, 3, 3, 1, 0, 0]
    # x^2+y^3+z^6 with weights (3,2,1): partials of degrees 3, 4, 5
    series = complete_intersection_series([3, 4, 5], [3, 2, 1], 8)
    assert sum(series) == 1 * 2 * 5
    assert max(t for t, c in enumerate(series) if c) == 6

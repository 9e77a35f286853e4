# koszul_derham/utils/series.py
from typing import List, Sequence

import numpy as np


def _truncate(coefficients: np.ndarray, length: int) -> np.ndarray:
    out = np.zeros(length, dtype=np.int64)
    out[: min(length, len(coefficients))] = coefficients[:length]
    return out


def geometric_inverse(weight: int, length: int) -> np.ndarray:
    """Coefficients of 1/(1 - s^weight) up to s^(length-1)."""
    out = np.zeros(length, dtype=np.int64)
    out[::weight] = 1
    return out


def binomial_factor(exponent: int, length: int) -> np.ndarray:
    """Coefficients of (1 - s^exponent); exponent 0 gives the zero series."""
    out = np.zeros(length, dtype=np.int64)
    if exponent == 0:
        return out
    out[0] = 1
    if exponent < length:
        out[exponent] = -1
    return out


def series_product(factors: Sequence[np.ndarray], length: int) -> np.ndarray:
    result = _truncate(np.array([1], dtype=np.int64), length)
    for factor in factors:
        result = _truncate(np.convolve(result, factor), length)
    return result


def polynomial_ring_series(weights: Sequence[int], max_degree: int) -> List[int]:
    """dim R_t for t = 0..max_degree, from prod_i 1/(1 - s^w_i)."""
    length = max_degree + 1
    series = series_product([geometric_inverse(w, length) for w in weights], length)
    return [int(c) for c in series]


def complete_intersection_series(
    degrees: Sequence[int], weights: Sequence[int], max_degree: int
) -> List[int]:
    """Hilbert function of R/(g_1..g_k) for a regular sequence of the given degrees."""
    length = max_degree + 1
    factors = [binomial_factor(e, length) for e in degrees]
    factors += [geometric_inverse(w, length) for w in weights]
    return [int(c) for c in series_product(factors, length)]

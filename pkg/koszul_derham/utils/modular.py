# koszul_derham/utils/modular.py
import logging
from fractions import Fraction
from typing import Dict, Optional

import numpy as np

logger = logging.getLogger(__name__)


def reduce_entries(
    entries: Dict[int, Dict[int, Fraction]], rows: int, cols: int, prime: int
) -> Optional[np.ndarray]:
    """
    Dense int64 image of a rational matrix over F_p, or None when some
    denominator vanishes mod p.
    """
    A = np.zeros((rows, cols), dtype=np.int64)
    for i, row in entries.items():
        for j, value in row.items():
            denominator = value.denominator % prime
            if denominator == 0:
                return None
            A[i, j] = (value.numerator % prime) * pow(denominator, -1, prime) % prime
    return A


def gauss_rank_modp(A: np.ndarray, prime: int) -> int:
    """Rank over F_p by row elimination; A is consumed."""
    m, n = A.shape
    r = 0
    for c in range(n):
        if r == m:
            break
        nonzero = np.nonzero(A[r:, c])[0]
        if nonzero.size == 0:
            continue
        pivot = r + int(nonzero[0])
        if pivot != r:
            A[[r, pivot], :] = A[[pivot, r], :]
        inv = pow(int(A[r, c]), -1, prime)
        A[r, :] = (A[r, :] * inv) % prime
        below = r + 1 + np.nonzero(A[r + 1:, c])[0]
        if below.size:
            factors = A[below, c].reshape(-1, 1)
            # residues < 2^31, so each product fits in int64
            A[below, :] = (A[below, :] - (factors * A[r, :]) % prime) % prime
        r += 1
    return r


def modular_rank(
    entries: Dict[int, Dict[int, Fraction]], rows: int, cols: int, prime: int
) -> Optional[int]:
    """Rank of the reduction mod `prime`; a lower bound for the rational rank."""
    if rows == 0 or cols == 0:
        return 0
    A = reduce_entries(entries, rows, cols, prime)
    if A is None:
        logger.debug(f"Modular rank unavailable: denominator divisible by {prime}")
        return None
    return gauss_rank_modp(A, prime)

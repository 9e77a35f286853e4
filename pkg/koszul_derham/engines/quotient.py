# koszul_derham/engines/quotient.py
import logging
from typing import Dict, List, Sequence, Tuple

from koszul_derham.core.polynomial import Polynomial, weighted_degree
from koszul_derham.core.ring import GradedBasis, Monomial, RingContext, monomial_basis
from koszul_derham.errors import InputError, NotHomogeneousError
from koszul_derham.utils.linalg import RationalMatrix, Subspace, Vector, rank

logger = logging.getLogger(__name__)


class QuotientSlice:
    """
    (R/I)_s realized as a complement of I_s inside R_s: the monomials that are
    not pivots of the echelon form of I_s.
    """

    def __init__(self, basis: GradedBasis, ideal: Subspace):
        self.basis = basis
        self.degree = basis.degree
        self.ideal = ideal
        pivots = set(ideal.pivots)
        self.standard: Tuple[int, ...] = tuple(k for k in range(len(basis)) if k not in pivots)
        self._position = {k: pos for pos, k in enumerate(self.standard)}

    @property
    def dim(self) -> int:
        return len(self.standard)

    def __len__(self) -> int:
        return self.dim

    def standard_monomials(self) -> List[Monomial]:
        return [self.basis[k] for k in self.standard]

    def reduce_vector(self, v: Vector) -> Vector:
        """R_s coordinates -> coordinates on the standard monomials."""
        residue = self.ideal.reduce(v)
        return {self._position[k]: c for k, c in residue.items()}

    def reduce(self, p: Polynomial) -> Vector:
        if p.is_zero():
            return {}
        return self.reduce_vector(p.coordinates(self.basis))

    def in_ideal(self, p: Polynomial) -> bool:
        return not self.reduce(p)

    def representative(self, coords: Vector) -> Polynomial:
        """The polynomial on standard monomials with the given coordinates."""
        ring = self.basis.ring
        return Polynomial(ring, {self.basis[self.standard[pos]]: c for pos, c in coords.items()})


class GradedQuotient:
    """R/(g_1..g_k) for homogeneous generators, one degree at a time."""

    def __init__(self, ring: RingContext, generators: Sequence[Polynomial], name: str = "R/I"):
        self.ring = ring
        self.name = name
        self.generators: List[Tuple[Polynomial, int]] = []
        for g in generators:
            if g.is_zero():
                continue
            degree = weighted_degree(g)
            if not isinstance(degree, int):
                raise NotHomogeneousError(f"generator of {name} is not homogeneous")
            if g.ring != ring:
                raise InputError(f"generator of {name} lives in another ring")
            self.generators.append((g, degree))
        self._slices: Dict[int, QuotientSlice] = {}
        self._dims: Dict[int, int] = {}

    def ideal_columns(self, s: int) -> List[Vector]:
        basis = monomial_basis(self.ring, s)
        columns: List[Vector] = []
        for g, degree in self.generators:
            for m in monomial_basis(self.ring, s - degree):
                columns.append(g.times_monomial(m).coordinates(basis))
        return columns

    def slice(self, s: int) -> QuotientSlice:
        if s not in self._slices:
            basis = monomial_basis(self.ring, s)
            ideal = Subspace.span(len(basis), self.ideal_columns(s))
            self._slices[s] = QuotientSlice(basis, ideal)
            self._dims[s] = self._slices[s].dim
            logger.debug(f"{self.name} slice {s}: dim R_s={len(basis)}, dim quotient={self._dims[s]}")
        return self._slices[s]

    def dim(self, s: int) -> int:
        """dim (R/I)_s; uses the rank fast path when no exact slice is cached."""
        if s not in self._dims:
            size = len(monomial_basis(self.ring, s))
            if size == 0:
                self._dims[s] = 0
            else:
                columns = self.ideal_columns(s)
                self._dims[s] = size - rank(RationalMatrix.from_columns(size, columns))
        return self._dims[s]

    def contains(self, p: Polynomial) -> bool:
        """Membership of a homogeneous polynomial in the ideal."""
        degree = weighted_degree(p)
        if not isinstance(degree, int):
            if p.is_zero():
                return True
            raise NotHomogeneousError("membership needs a homogeneous polynomial")
        return self.slice(degree).in_ideal(p)

    def hilbert_function(self, max_degree: int) -> List[int]:
        return [self.dim(s) for s in range(max_degree + 1)]

# koszul_derham/core/polynomial.py
from fractions import Fraction
from numbers import Rational
from typing import Dict, List, Mapping, Optional, Tuple, Union

from koszul_derham.core.ring import (
    DegreeMarker,
    GradedBasis,
    Monomial,
    RingContext,
    divide_monomials,
    divides,
    monomial_basis,
    monomial_sort_key,
    multiply_monomials,
)
from koszul_derham.errors import InputError, NotHomogeneousError

Scalar = Union[int, Fraction]


class Polynomial:
    """
    Sparse polynomial with exact rational coefficients.

    Instances are immutable; zero coefficients are never stored.
    """
    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring: RingContext, terms: Optional[Mapping[Monomial, Scalar]] = None):
        self.ring = ring
        clean: Dict[Monomial, Fraction] = {}
        for monomial, coefficient in (terms or {}).items():
            if len(monomial) != ring.n:
                raise InputError(f"exponent vector {monomial} does not fit {ring}")
            if any(e < 0 for e in monomial):
                raise InputError(f"negative exponent in {monomial}")
            value = Fraction(coefficient)
            if value != 0:
                clean[tuple(monomial)] = value
        self._terms = clean
        self._hash = None

    # -- constructors -----------------------------------------------------
    @classmethod
    def zero(cls, ring: RingContext) -> "Polynomial":
        return cls(ring)

    @classmethod
    def constant(cls, ring: RingContext, value: Scalar) -> "Polynomial":
        return cls(ring, {ring.one(): value})

    @classmethod
    def monomial(cls, ring: RingContext, exponents: Monomial, coefficient: Scalar = 1) -> "Polynomial":
        return cls(ring, {tuple(exponents): coefficient})

    @classmethod
    def variable(cls, ring: RingContext, i: int) -> "Polynomial":
        return cls(ring, {ring.variable(i): 1})

    @classmethod
    def _trusted(cls, ring: RingContext, terms: Dict[Monomial, Fraction]) -> "Polynomial":
        # terms already validated and free of zeros
        poly = cls.__new__(cls)
        poly.ring = ring
        poly._terms = terms
        poly._hash = None
        return poly

    # -- inspection -------------------------------------------------------
    @property
    def terms(self) -> Dict[Monomial, Fraction]:
        return dict(self._terms)

    def sorted_terms(self) -> List[Tuple[Monomial, Fraction]]:
        """Terms in canonical order (weighted degree, then lex; descending)."""
        return sorted(
            self._terms.items(), key=lambda item: monomial_sort_key(self.ring, item[0]), reverse=True
        )

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def coefficient(self, monomial: Monomial) -> Fraction:
        return self._terms.get(tuple(monomial), Fraction(0))

    def leading_term(self) -> Tuple[Monomial, Fraction]:
        if not self._terms:
            raise InputError("the zero polynomial has no leading term")
        monomial = max(self._terms, key=lambda m: monomial_sort_key(self.ring, m))
        return monomial, self._terms[monomial]

    def degrees(self) -> List[int]:
        return sorted({self.ring.degree_of(m) for m in self._terms})

    # -- arithmetic -------------------------------------------------------
    def _check_ring(self, other: "Polynomial") -> None:
        if other.ring != self.ring:
            raise InputError(f"ring mismatch: {self.ring} vs {other.ring}")

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check_ring(other)
            return other
        if isinstance(other, (int, Rational)):
            return Polynomial.constant(self.ring, Fraction(other))
        return NotImplemented

    def __add__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        terms = dict(self._terms)
        for monomial, coefficient in other._terms.items():
            value = terms.get(monomial, 0) + coefficient
            if value:
                terms[monomial] = value
            else:
                terms.pop(monomial, None)
        return Polynomial._trusted(self.ring, terms)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial._trusted(self.ring, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Polynomial":
        return (-self) + other

    def scale(self, factor: Scalar) -> "Polynomial":
        factor = Fraction(factor)
        if factor == 0:
            return Polynomial.zero(self.ring)
        return Polynomial._trusted(self.ring, {m: c * factor for m, c in self._terms.items()})

    def times_monomial(self, monomial: Monomial, coefficient: Scalar = 1) -> "Polynomial":
        coefficient = Fraction(coefficient)
        if coefficient == 0:
            return Polynomial.zero(self.ring)
        return Polynomial._trusted(
            self.ring, {multiply_monomials(m, monomial): c * coefficient for m, c in self._terms.items()}
        )

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, (int, Rational)):
            return self.scale(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return multiply(self, other)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "Polynomial":
        if not isinstance(exponent, int) or exponent < 0:
            raise InputError(f"exponent must be a non-negative integer, got {exponent!r}")
        result = Polynomial.constant(self.ring, 1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    # -- equality ---------------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self._terms == other._terms
        if isinstance(other, (int, Rational)):
            return self == Polynomial.constant(self.ring, Fraction(other))
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self) -> str:
        from koszul_derham.core.parser import format_polynomial

        return f"Polynomial({format_polynomial(self)!r})"

    # -- graded coordinates -----------------------------------------------
    def coordinates(self, basis: GradedBasis) -> Dict[int, Fraction]:
        """Sparse coordinates in a graded basis; every term must belong to it."""
        try:
            return {basis.index(m): c for m, c in self._terms.items()}
        except KeyError as e:
            raise InputError(f"term {e.args[0]} is not of degree {basis.degree}") from e

    @classmethod
    def from_coordinates(cls, basis: GradedBasis, coordinates: Mapping[int, Scalar]) -> "Polynomial":
        return cls(basis.ring, {basis[i]: c for i, c in coordinates.items()})


# -- module level operations ----------------------------------------------

def weighted_degree(p: Polynomial) -> Union[int, DegreeMarker]:
    """Weighted degree of a homogeneous polynomial, or a DegreeMarker."""
    if p.is_zero():
        return DegreeMarker.NEG_INFINITY
    degrees = p.degrees()
    if len(degrees) > 1:
        return DegreeMarker.NOT_HOMOGENEOUS
    return degrees[0]


def partial_derivative(p: Polynomial, i: int) -> Polynomial:
    """Formal derivative with respect to the variable at (0-based) index i."""
    if not 0 <= i < p.ring.n:
        raise InputError(f"variable index {i} out of range for {p.ring}")
    terms: Dict[Monomial, Fraction] = {}
    for monomial, coefficient in p._terms.items():
        e = monomial[i]
        if e == 0:
            continue
        lowered = monomial[:i] + (e - 1,) + monomial[i + 1:]
        terms[lowered] = coefficient * e
    return Polynomial._trusted(p.ring, terms)


def gradient(p: Polynomial) -> Tuple[Polynomial, ...]:
    return tuple(partial_derivative(p, i) for i in range(p.ring.n))


def euler_check(f: Polynomial) -> bool:
    """True iff sum_i w_i x_i d_i f == deg(f) * f."""
    degree = weighted_degree(f)
    if not isinstance(degree, int):
        raise NotHomogeneousError(f"euler_check needs a nonzero homogeneous polynomial ({degree.value})")
    ring = f.ring
    euler = Polynomial.zero(ring)
    for i, w in enumerate(ring.weights):
        euler = euler + partial_derivative(f, i).times_monomial(ring.variable(i), w)
    return euler == f.scale(degree)


def multiply(p: Polynomial, q: Polynomial) -> Polynomial:
    p._check_ring(q)
    terms: Dict[Monomial, Fraction] = {}
    for ma, ca in p._terms.items():
        for mb, cb in q._terms.items():
            m = multiply_monomials(ma, mb)
            value = terms.get(m, 0) + ca * cb
            if value:
                terms[m] = value
            else:
                terms.pop(m, None)
    return Polynomial._trusted(p.ring, terms)


def exact_divide(p: Polynomial, f: Polynomial) -> Optional[Polynomial]:
    """
    Quotient q with p == q * f, or None when f does not divide p.

    Long division in the canonical monomial order; a single polynomial is a
    Groebner basis of its ideal, so a nonzero remainder term decides.
    """
    p._check_ring(f)
    if f.is_zero():
        raise InputError("division by the zero polynomial", reason="division_by_zero")
    lead_monomial, lead_coefficient = f.leading_term()
    remainder = p
    quotient_terms: Dict[Monomial, Fraction] = {}
    while not remainder.is_zero():
        monomial, coefficient = remainder.leading_term()
        if not divides(lead_monomial, monomial):
            return None
        shift = divide_monomials(monomial, lead_monomial)
        factor = coefficient / lead_coefficient
        quotient_terms[shift] = quotient_terms.get(shift, 0) + factor
        remainder = remainder - f.times_monomial(shift, factor)
    return Polynomial(p.ring, quotient_terms)


def random_homogeneous(
    ring: RingContext, degree: int, rng, max_terms: int = 4, coefficient_range: int = 5
) -> Polynomial:
    """A seeded random homogeneous polynomial; zero when R_degree is empty."""
    basis = monomial_basis(ring, degree)
    if len(basis) == 0:
        return Polynomial.zero(ring)
    count = rng.randint(1, min(max_terms, len(basis)))
    terms: Dict[Monomial, Fraction] = {}
    for monomial in rng.sample(list(basis), count):
        value = 0
        while value == 0:
            value = rng.randint(-coefficient_range, coefficient_range)
        terms[monomial] = Fraction(value, rng.randint(1, 3))
    return Polynomial(ring, terms)

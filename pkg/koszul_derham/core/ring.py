# koszul_derham/core/ring.py
import re
from enum import Enum
from functools import lru_cache
from typing import Dict, Iterator, List, Sequence, Tuple

from koszul_derham.errors import InputError

# Exponent vector of a monomial in the ring's variable order
Monomial = Tuple[int, ...]

_IDENTIFIER = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


class DegreeMarker(Enum):
    """Non-integer outcomes of a weighted degree computation."""
    NEG_INFINITY = "-inf"
    NOT_HOMOGENEOUS = "not homogeneous"


class RingContext:
    """
    The weighted-graded polynomial ring Q[x_1..x_n] with deg x_i = w_i.
    """

    def __init__(self, var_names: Sequence[str], weights: Sequence[int]):
        var_names = tuple(var_names)
        weights = tuple(int(w) for w in weights)

        if len(var_names) == 0:
            raise InputError("a ring needs at least one variable", reason="bad_variables")
        if len(var_names) != len(weights):
            raise InputError(
                f"{len(var_names)} variables but {len(weights)} weights", reason="bad_weights"
            )
        if len(set(var_names)) != len(var_names):
            raise InputError(f"duplicate variable names in {list(var_names)}", reason="bad_variables")
        for name in var_names:
            if not _IDENTIFIER.match(name):
                raise InputError(f"invalid variable name {name!r}", reason="bad_variables")
        if any(w < 1 for w in weights):
            raise InputError(f"weights must be positive integers, got {list(weights)}", reason="bad_weights")

        self.var_names = var_names
        self.weights = weights
        self.n = len(var_names)
        self.omega = sum(weights)
        self._index = {name: i for i, name in enumerate(var_names)}

    @classmethod
    def standard(cls, var_names: Sequence[str]) -> "RingContext":
        return cls(var_names, [1] * len(var_names))

    def index_of(self, name: str) -> int:
        return self._index[name]

    def has_variable(self, name: str) -> bool:
        return name in self._index

    def degree_of(self, monomial: Monomial) -> int:
        return sum(e * w for e, w in zip(monomial, self.weights))

    def one(self) -> Monomial:
        return (0,) * self.n

    def variable(self, i: int) -> Monomial:
        return tuple(1 if k == i else 0 for k in range(self.n))

    def _key(self) -> Tuple[Tuple[str, ...], Tuple[int, ...]]:
        return (self.var_names, self.weights)

    def __eq__(self, other) -> bool:
        return isinstance(other, RingContext) and self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        return f"RingContext(vars={list(self.var_names)}, weights={list(self.weights)})"


def monomial_sort_key(ring: RingContext, monomial: Monomial) -> Tuple[int, Monomial]:
    """Canonical order key: weighted degree first, then lex. Sort descending."""
    return (ring.degree_of(monomial), monomial)


def multiply_monomials(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def divide_monomials(b: Monomial, a: Monomial) -> Monomial:
    return tuple(y - x for x, y in zip(a, b))


class GradedBasis:
    """
    All monomials of one weighted degree, in canonical (descending lex) order,
    with an index for coordinate lookups.
    """

    def __init__(self, ring: RingContext, degree: int, monomials: Sequence[Monomial]):
        self.ring = ring
        self.degree = degree
        self.monomials: Tuple[Monomial, ...] = tuple(monomials)
        self._position: Dict[Monomial, int] = {m: i for i, m in enumerate(self.monomials)}

    def __len__(self) -> int:
        return len(self.monomials)

    def __iter__(self) -> Iterator[Monomial]:
        return iter(self.monomials)

    def __getitem__(self, i: int) -> Monomial:
        return self.monomials[i]

    def index(self, monomial: Monomial) -> int:
        return self._position[monomial]

    def __contains__(self, monomial: Monomial) -> bool:
        return monomial in self._position


def _exponent_vectors(weights: Tuple[int, ...], degree: int) -> List[Monomial]:
    # Lex-descending: largest exponent of the first variable first
    if len(weights) == 1:
        return [(degree // weights[0],)] if degree % weights[0] == 0 else []
    head, rest = weights[0], weights[1:]
    out: List[Monomial] = []
    for e in range(degree // head, -1, -1):
        for tail in _exponent_vectors(rest, degree - e * head):
            out.append((e,) + tail)
    return out


@lru_cache(maxsize=4096)
def _cached_basis(ring: RingContext, degree: int) -> GradedBasis:
    if degree < 0:
        return GradedBasis(ring, degree, [])
    return GradedBasis(ring, degree, _exponent_vectors(ring.weights, degree))


def monomial_basis(ring: RingContext, degree: int) -> GradedBasis:
    """All monomials of weighted degree `degree`; empty for negative degrees."""
    return _cached_basis(ring, degree)

# koszul_derham/engines/koszul.py
"""
Index-set bookkeeping and the two Koszul differentials in a fixed internal degree:

  phi_p on K(d; R_f), truncated at a pole order, on numerators over f^C:
      a/f^C  ->  sum_i (-1)^sigma (d_i(a) f - C a d_i f) / f^(C+1)
  psi_p on K'(df; A): multiplication by d_i f with the same signs.
"""
import logging
from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

from koszul_derham.core.polynomial import Polynomial, gradient, partial_derivative, weighted_degree
from koszul_derham.core.ring import GradedBasis, RingContext, monomial_basis
from koszul_derham.engines.quotient import GradedQuotient, QuotientSlice
from koszul_derham.errors import InputError, NotHomogeneousError, PreconditionError
from koszul_derham.utils.linalg import RationalMatrix, Vector

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class IndexSubset:
    """Strictly increasing variable indices (0-based)."""
    members: Tuple[int, ...]

    def __post_init__(self):
        members = tuple(self.members)
        object.__setattr__(self, "members", members)
        if any(a >= b for a, b in zip(members, members[1:])) or any(m < 0 for m in members):
            raise InputError(f"index subset must be strictly increasing and non-negative: {members}")

    @property
    def p(self) -> int:
        return len(self.members)

    def __contains__(self, i: int) -> bool:
        return i in self.members

    def __iter__(self):
        return iter(self.members)

    def without(self, i: int) -> "IndexSubset":
        return IndexSubset(tuple(m for m in self.members if m != i))

    def with_index(self, i: int) -> "IndexSubset":
        if i in self.members:
            raise PreconditionError(f"{i} already belongs to {self}")
        return IndexSubset(tuple(sorted(self.members + (i,))))

    def weight(self, ring: RingContext) -> int:
        return sum(ring.weights[i] for i in self.members)

    def __str__(self) -> str:
        return "{" + ",".join(str(i + 1) for i in self.members) + "}"


def all_subsets(n: int, p: int) -> List[IndexSubset]:
    """All subsets of size p of {0..n-1}, lexicographic."""
    if p < 0 or p > n:
        return []
    return [IndexSubset(c) for c in combinations(range(n), p)]


def koszul_sign(J: IndexSubset, i: int) -> int:
    """sigma(J u {i}) = #{j in J : j < i}, the position of i in J u {i}."""
    if i in J:
        raise PreconditionError(f"index {i} already belongs to {J}")
    return sum(1 for j in J.members if j < i)


def sign_of(exponent: int) -> int:
    return -1 if exponent % 2 else 1


class LayerKind(str, Enum):
    DERHAM = "derham"
    JACOBIAN = "jacobian"


class KoszulLayer:
    """
    One homological degree of a Koszul complex restricted to a single graded
    slice; the coefficient space of subset I is `components[k]`.
    """

    def __init__(
        self,
        kind: LayerKind,
        ring: RingContext,
        p: int,
        internal_degree: int,
        shifts: Sequence[int],
        subsets: Sequence[IndexSubset],
        components: Sequence[Union[GradedBasis, QuotientSlice]],
        pole: Optional[int] = None,
    ):
        self.kind = kind
        self.ring = ring
        self.p = p
        self.internal_degree = internal_degree
        self.pole = pole
        self.subsets: List[IndexSubset] = list(subsets)
        self.shifts: List[int] = list(shifts)
        self.components = list(components)
        self._index = {I: k for k, I in enumerate(self.subsets)}
        self.offsets: List[int] = []
        total = 0
        for component in self.components:
            self.offsets.append(total)
            total += len(component)
        self.dim = total

    @classmethod
    def derham(cls, ring: RingContext, d: int, p: int, pole: int, j: int) -> "KoszulLayer":
        """Numerators over f^pole of (K_p)_j; subset I has R_{pole*d + j + w_I}."""
        subsets = all_subsets(ring.n, p)
        shifts = [I.weight(ring) for I in subsets]
        components = [monomial_basis(ring, pole * d + j + shift) for shift in shifts]
        return cls(LayerKind.DERHAM, ring, p, j, shifts, subsets, components, pole=pole)

    @classmethod
    def jacobian(cls, quotient: GradedQuotient, d: int, p: int, t: int) -> "KoszulLayer":
        """(K'_p)_t over A; subset I has A_{t - p*d + w_I}."""
        ring = quotient.ring
        subsets = all_subsets(ring.n, p)
        shifts = [-p * d + I.weight(ring) for I in subsets]
        components = [quotient.slice(t + shift) for shift in shifts]
        return cls(LayerKind.JACOBIAN, ring, p, t, shifts, subsets, components)

    def component_degree(self, k: int) -> int:
        if self.kind is LayerKind.DERHAM:
            return self.components[k].degree
        return self.internal_degree + self.shifts[k]

    def index_of(self, subset: IndexSubset) -> int:
        return self._index[subset]

    def block(self, k: int) -> range:
        return range(self.offsets[k], self.offsets[k] + len(self.components[k]))

    def locate(self, index: int) -> Tuple[int, int]:
        """Global coordinate -> (subset position, local coordinate)."""
        for k in range(len(self.subsets) - 1, -1, -1):
            if index >= self.offsets[k]:
                return k, index - self.offsets[k]
        raise IndexError(index)

    def vector_from_components(self, components: Mapping[IndexSubset, Polynomial]) -> Vector:
        """Coordinates of per-subset numerators (reduced mod f for A-layers)."""
        out: Vector = {}
        for subset, poly in components.items():
            if poly.is_zero():
                continue
            k = self._index[subset]
            if self.kind is LayerKind.DERHAM:
                local = poly.coordinates(self.components[k])
            else:
                local = self.components[k].reduce(poly)
            offset = self.offsets[k]
            out.update({offset + c: value for c, value in local.items()})
        return out

    def components_from_vector(self, v: Vector) -> Dict[IndexSubset, Polynomial]:
        """Per-subset numerators; A-layers return standard-monomial representatives."""
        grouped: Dict[int, Vector] = {}
        for index, value in v.items():
            k, local = self.locate(index)
            grouped.setdefault(k, {})[local] = value
        out: Dict[IndexSubset, Polynomial] = {I: Polynomial.zero(self.ring) for I in self.subsets}
        for k, local in grouped.items():
            component = self.components[k]
            if self.kind is LayerKind.DERHAM:
                out[self.subsets[k]] = Polynomial.from_coordinates(component, local)
            else:
                out[self.subsets[k]] = component.representative(local)
        return out

    def __repr__(self) -> str:
        pole = f", pole={self.pole}" if self.pole is not None else ""
        return f"KoszulLayer({self.kind.value}, p={self.p}, degree={self.internal_degree}{pole}, dim={self.dim})"


@dataclass
class DifferentialMatrix:
    source: KoszulLayer
    target: KoszulLayer
    matrix: RationalMatrix

    def composes_to_zero(self, previous: "DifferentialMatrix") -> bool:
        """True iff self o previous == 0 (previous lands in self's source)."""
        if previous.target.dim != self.source.dim:
            raise PreconditionError("differentials are not composable")
        return (self.matrix @ previous.matrix).is_zero()


# -- numerator level differentials ----------------------------------------

def phi_numerators(
    f: Polynomial,
    partials: Sequence[Polynomial],
    components: Mapping[IndexSubset, Polynomial],
    pole: int,
) -> Dict[IndexSubset, Polynomial]:
    """Numerators over f^(pole+1) of phi applied to sum_I a_I/f^pole e_I."""
    out: Dict[IndexSubset, Polynomial] = {}
    for I, a in components.items():
        if a.is_zero():
            continue
        for i in I.members:
            J = I.without(i)
            term = partial_derivative(a, i) * f - (a * partials[i]).scale(pole)
            if sign_of(koszul_sign(J, i)) < 0:
                term = -term
            out[J] = out[J] + term if J in out else term
    return out


def psi_numerators(
    partials: Sequence[Polynomial], components: Mapping[IndexSubset, Polynomial]
) -> Dict[IndexSubset, Polynomial]:
    """psi on representatives in R: sum_i (-1)^sigma a_I d_i f e_{I - i}."""
    out: Dict[IndexSubset, Polynomial] = {}
    for I, a in components.items():
        if a.is_zero():
            continue
        for i in I.members:
            J = I.without(i)
            term = a * partials[i]
            if sign_of(koszul_sign(J, i)) < 0:
                term = -term
            out[J] = out[J] + term if J in out else term
    return out


# -- matrix builders ------------------------------------------------------

def _degree_of(f: Polynomial) -> int:
    d = weighted_degree(f)
    if not isinstance(d, int):
        raise NotHomogeneousError(f"f must be nonzero and weighted-homogeneous ({d.value})")
    return d


def build_jacobian_differential(
    f: Polynomial, p: int, t: int, quotient: Optional[GradedQuotient] = None
) -> DifferentialMatrix:
    """psi_p: (K'_p)_t -> (K'_{p-1})_t in A-coordinates."""
    d = _degree_of(f)
    quotient = quotient or GradedQuotient(f.ring, [f], name="A")
    partials = gradient(f)
    source = KoszulLayer.jacobian(quotient, d, p, t)
    target = KoszulLayer.jacobian(quotient, d, p - 1, t)

    columns: List[Vector] = []
    for I, component in zip(source.subsets, source.components):
        for monomial in component.standard_monomials():
            image = psi_numerators(partials, {I: Polynomial.monomial(f.ring, monomial)})
            columns.append(target.vector_from_components(image))
    matrix = RationalMatrix.from_columns(target.dim, columns)
    logger.debug(f"psi_{p} at t={t}: {matrix}")
    return DifferentialMatrix(source, target, matrix)


def build_derham_differential(f: Polynomial, p: int, C: int, j: int) -> DifferentialMatrix:
    """phi_p from the pole-C slice of (K_p)_j to the pole-(C+1) slice of (K_{p-1})_j."""
    if C < 0:
        raise InputError(f"pole cap must be non-negative, got {C}")
    d = _degree_of(f)
    partials = gradient(f)
    source = KoszulLayer.derham(f.ring, d, p, C, j)
    target = KoszulLayer.derham(f.ring, d, p - 1, C + 1, j)

    columns: List[Vector] = []
    for I, basis in zip(source.subsets, source.components):
        for monomial in basis:
            image = phi_numerators(f, partials, {I: Polynomial.monomial(f.ring, monomial)}, C)
            columns.append(target.vector_from_components(image))
    matrix = RationalMatrix.from_columns(target.dim, columns)
    logger.debug(f"phi_{p} at pole {C}, j={j}: {matrix}")
    return DifferentialMatrix(source, target, matrix)


def multiply_numerators(layer: KoszulLayer, v: Vector, factor: Polynomial, target: KoszulLayer) -> Vector:
    """Coordinates in `target` of the numerators of v multiplied by `factor`."""
    components = layer.components_from_vector(v)
    return target.vector_from_components({I: a * factor for I, a in components.items() if not a.is_zero()})


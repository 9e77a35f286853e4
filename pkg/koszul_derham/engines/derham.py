# koszul_derham/engines/derham.py
"""
De Rham homology of R_f in a fixed internal degree, computed through pole-order
truncations: the level-c complex uses numerators over f^c, and the homology is
the stable image of the truncated homologies under multiplication by f.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import total_ordering
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from koszul_derham.config import EngineSettings, get_settings
from koszul_derham.core.polynomial import Polynomial, exact_divide, random_homogeneous, weighted_degree
from koszul_derham.engines.jacobian import HypersurfaceContext, JacobianEngine
from koszul_derham.engines.koszul import (
    DifferentialMatrix,
    IndexSubset,
    KoszulLayer,
    all_subsets,
    build_derham_differential,
    multiply_numerators,
    phi_numerators,
)
from koszul_derham.errors import (
    AutoCapUnavailableError,
    DegreeCapRequiredError,
    HypothesisNotMetError,
    InputError,
    InternalConsistencyError,
    NotStabilizedError,
    PreconditionError,
)
from koszul_derham.utils.linalg import (
    QuotientSpace,
    RationalMatrix,
    Subspace,
    Vector,
    add_scaled,
    image_basis,
    kernel_basis,
    rank,
    solve,
)

logger = logging.getLogger(__name__)


@total_ordering
class PoleOrder:
    """A pole order: a non-negative integer, or -inf for the zero element."""
    __slots__ = ("value",)

    def __init__(self, value: Optional[int]):
        if value is not None and value < 0:
            raise InputError(f"pole order must be non-negative, got {value}")
        self.value = value

    @classmethod
    def neg_infinity(cls) -> "PoleOrder":
        return cls(None)

    @property
    def is_neg_infinity(self) -> bool:
        return self.value is None

    def _rank(self) -> int:
        return -1 if self.value is None else self.value

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self.value == other
        if isinstance(other, PoleOrder):
            return self.value == other.value
        return NotImplemented

    def __lt__(self, other) -> bool:
        if isinstance(other, int):
            other = PoleOrder(other)
        if not isinstance(other, PoleOrder):
            return NotImplemented
        return self._rank() < other._rank()

    def __hash__(self) -> int:
        return hash(self.value)

    def __str__(self) -> str:
        return "-inf" if self.value is None else str(self.value)

    def __repr__(self) -> str:
        return f"PoleOrder({self})"

    def to_json(self):
        return "-inf" if self.value is None else self.value


NEG_INFINITY = PoleOrder.neg_infinity()


class LocalizedVector:
    """
    sum_I a_I / f^pole e_I in (K_p)_j. Numerators of subset I are homogeneous
    of degree pole*d + j + w_I. Immutable; arithmetic goes through a common pole.
    """

    def __init__(
        self,
        h: HypersurfaceContext,
        p: int,
        components: Mapping[IndexSubset, Polynomial],
        pole: int,
        internal_degree: Optional[int] = None,
    ):
        if pole < 0:
            raise InputError(f"pole must be non-negative, got {pole}")
        self.h = h
        self.p = p
        self.pole = pole
        self.components: Dict[IndexSubset, Polynomial] = {
            I: a for I, a in components.items() if not a.is_zero()
        }
        for I in self.components:
            if I.p != p or (I.members and I.members[-1] >= h.n):
                raise InputError(f"subset {I} does not index layer {p} of {h.ring}")
        if internal_degree is None:
            internal_degree = self._infer_degree()
        self.internal_degree = internal_degree
        for I, a in self.components.items():
            expected = pole * h.d + internal_degree + I.weight(h.ring)
            if weighted_degree(a) != expected:
                raise InputError(
                    f"numerator of {I} must be homogeneous of degree {expected}", reason="bad_numerator"
                )

    def _infer_degree(self) -> int:
        for I, a in self.components.items():
            degree = weighted_degree(a)
            if not isinstance(degree, int):
                raise InputError(f"numerator of {I} is not homogeneous", reason="bad_numerator")
            return degree - self.pole * self.h.d - I.weight(self.h.ring)
        return -self.h.omega

    @classmethod
    def zero(cls, h: HypersurfaceContext, p: int, internal_degree: int) -> "LocalizedVector":
        return cls(h, p, {}, 0, internal_degree)

    @classmethod
    def from_vector(cls, layer: KoszulLayer, h: HypersurfaceContext, v: Vector) -> "LocalizedVector":
        return cls(h, layer.p, layer.components_from_vector(v), layer.pole, layer.internal_degree)

    @property
    def layer(self) -> KoszulLayer:
        return KoszulLayer.derham(self.h.ring, self.h.d, self.p, self.pole, self.internal_degree)

    def to_vector(self) -> Vector:
        return self.layer.vector_from_components(self.components)

    def is_zero(self) -> bool:
        return not self.components

    def is_polynomial(self) -> bool:
        return normal_form(self).pole == 0

    def numerator(self, subset: IndexSubset) -> Polynomial:
        return self.components.get(subset, Polynomial.zero(self.h.ring))

    def raise_pole(self, pole: int) -> "LocalizedVector":
        """The same element written over f^pole (pole >= self.pole)."""
        if pole < self.pole:
            raise PreconditionError(f"cannot lower pole {self.pole} to {pole} by multiplication")
        factor = self.h.f ** (pole - self.pole)
        return LocalizedVector(
            self.h, self.p, {I: a * factor for I, a in self.components.items()}, pole, self.internal_degree
        )

    def _check_compatible(self, other: "LocalizedVector") -> None:
        if other.h is not self.h and other.h.f != self.h.f:
            raise InputError("vectors belong to different hypersurfaces")
        if other.p != self.p:
            raise InputError(f"cannot combine layers {self.p} and {other.p}")
        if other.components and self.components and other.internal_degree != self.internal_degree:
            raise InputError("vectors live in different internal degrees")

    def __add__(self, other: "LocalizedVector") -> "LocalizedVector":
        self._check_compatible(other)
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        pole = max(self.pole, other.pole)
        a, b = self.raise_pole(pole), other.raise_pole(pole)
        components = dict(a.components)
        for I, value in b.components.items():
            components[I] = components[I] + value if I in components else value
        return LocalizedVector(self.h, self.p, components, pole, self.internal_degree)

    def scale(self, factor) -> "LocalizedVector":
        factor = Fraction(factor)
        return LocalizedVector(
            self.h, self.p, {I: a.scale(factor) for I, a in self.components.items()}, self.pole, self.internal_degree
        )

    def __neg__(self) -> "LocalizedVector":
        return self.scale(-1)

    def __sub__(self, other: "LocalizedVector") -> "LocalizedVector":
        return self + (-other)

    def __rmul__(self, factor) -> "LocalizedVector":
        return self.scale(factor)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LocalizedVector):
            return NotImplemented
        a, b = normal_form(self), normal_form(other)
        if a.is_zero() or b.is_zero():
            return a.is_zero() and b.is_zero() and a.p == b.p
        return (a.p, a.pole, a.internal_degree, a.components) == (b.p, b.pole, b.internal_degree, b.components)

    def __hash__(self) -> int:
        nf = normal_form(self)
        return hash((nf.p, nf.pole, frozenset(nf.components.items())))

    def __repr__(self) -> str:
        from koszul_derham.core.parser import format_polynomial

        parts = ", ".join(f"{I}: {format_polynomial(a)}" for I, a in sorted(self.components.items()))
        return f"LocalizedVector(p={self.p}, pole={self.pole}, j={self.internal_degree}, {{{parts}}})"


# -- normal form and pole order -------------------------------------------

def normal_form(v: LocalizedVector) -> LocalizedVector:
    """Divide every numerator by f while all of them are divisible and pole > 0."""
    if v.is_zero():
        return LocalizedVector(v.h, v.p, {}, 0, v.internal_degree)
    components = dict(v.components)
    pole = v.pole
    while pole > 0:
        quotients = {}
        for I, a in components.items():
            q = exact_divide(a, v.h.f)
            if q is None:
                break
            quotients[I] = q
        else:
            components = quotients
            pole -= 1
            continue
        break
    if pole == v.pole:
        return v
    return LocalizedVector(v.h, v.p, components, pole, v.internal_degree)


def L_of(v: LocalizedVector) -> PoleOrder:
    if v.is_zero():
        return NEG_INFINITY
    return PoleOrder(normal_form(v).pole)


def apply_differential(v: LocalizedVector) -> LocalizedVector:
    """phi_p on an element of R_f^m, returned in normal form."""
    h = v.h
    if v.p == 0 or v.is_zero():
        return LocalizedVector.zero(h, max(v.p - 1, 0), v.internal_degree)
    image = phi_numerators(h.f, h.partials, v.components, v.pole)
    return normal_form(LocalizedVector(h, v.p - 1, image, v.pole + 1, v.internal_degree))


def is_cycle(v: LocalizedVector) -> bool:
    return apply_differential(v).is_zero()


# -- truncated homology ---------------------------------------------------

@dataclass
class TruncatedLevel:
    """Z^(c)/B^(c) for the pole-c truncation of (K_p)_j."""
    p: int
    pole: int
    internal_degree: int
    layer: KoszulLayer
    cycles: Subspace
    boundaries: Subspace
    homology: QuotientSpace

    @property
    def dim(self) -> int:
        return self.homology.dim


@dataclass
class ThetaValue:
    """theta of a cycle: class coordinates in H_p(df;A)_t."""
    t: int
    pole: int
    coordinates: List[Fraction]
    slice_dim: int

    @property
    def is_zero(self) -> bool:
        return not any(self.coordinates)


@dataclass
class DeRhamHomology:
    p: int
    internal_degree: int
    pole_cap: int
    dim: int
    transition_ranks: List[int]
    level_dims: List[int]
    stabilized: bool
    certificate_bound: Optional[int]
    # H^(C) and the stable image of H^(C-1) inside it
    top: Optional[TruncatedLevel] = None
    image: Optional[Subspace] = None
    class_basis: List[LocalizedVector] = field(default_factory=list)

    def class_of(self, v: LocalizedVector) -> List[Fraction]:
        """Coordinates in H^(C) of a cycle with pole <= cap."""
        if v.is_zero():
            return [Fraction(0)] * self.top.dim
        lifted = v.raise_pole(self.pole_cap)
        return self.top.homology.coordinates(lifted.to_vector())


@dataclass
class EtaStep:
    nu: int
    target_degree: int
    target_dim: int
    filtration_dim: int
    quotient_dim: int
    eta_rank: int

    @property
    def injective(self) -> bool:
        return self.eta_rank == self.quotient_dim

    @property
    def kernel_dim(self) -> int:
        return self.quotient_dim - self.eta_rank


@dataclass
class FiltrationReport:
    p: int
    n: int
    dim: int
    steps: List[EtaStep]
    saturation_index: Optional[int]
    kernel_cycle_generates: Optional[bool] = None
    assertions: Dict[str, bool] = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return all(self.assertions.values())


class DeRhamEngine:
    """Truncated de Rham homology, theta, the pole filtration and its eta maps."""

    def __init__(
        self,
        h: HypersurfaceContext,
        jacobian: Optional[JacobianEngine] = None,
        settings: Optional[EngineSettings] = None,
    ):
        self.h = h
        self.settings = settings or get_settings()
        self.jacobian = jacobian or JacobianEngine(h, self.settings)
        self._differentials: Dict[Tuple[int, int, int], DifferentialMatrix] = {}
        self._levels: Dict[Tuple[int, int, int], TruncatedLevel] = {}

    # -- truncations ------------------------------------------------------
    def differential(self, p: int, pole: int, j: int) -> DifferentialMatrix:
        key = (p, pole, j)
        if key not in self._differentials:
            self._differentials[key] = build_derham_differential(self.h.f, p, pole, j)
        return self._differentials[key]

    def level(self, p: int, pole: int, j: int) -> TruncatedLevel:
        key = (p, pole, j)
        if key not in self._levels:
            phi = self.differential(p, pole, j)
            cycles = kernel_basis(phi.matrix)
            if pole == 0:
                boundaries = Subspace.zero(phi.source.dim)
            else:
                boundaries = image_basis(self.differential(p + 1, pole - 1, j).matrix)
            homology = QuotientSpace(cycles, boundaries)
            self._levels[key] = TruncatedLevel(p, pole, j, phi.source, cycles, boundaries, homology)
            logger.debug(
                f"H_{p}^({pole}) at j={j}: source {phi.source.dim}, cycles {cycles.dim}, "
                f"boundaries {boundaries.dim}, dim {homology.dim}"
            )
        return self._levels[key]

    def source_size(self, p: int, pole: int, j: Optional[int] = None) -> int:
        j = -self.h.omega if j is None else j
        return KoszulLayer.derham(self.h.ring, self.h.d, p, pole, j).dim

    def transition(self, p: int, c: int, C: int, j: int) -> List[List[Fraction]]:
        """Rows: images of the basis classes of H^(c) in H^(C) coordinates."""
        source, target = self.level(p, c, j), self.level(p, C, j)
        factor = self.h.f ** (C - c)
        rows: List[List[Fraction]] = []
        for k in range(source.dim):
            coords = [Fraction(1) if m == k else Fraction(0) for m in range(source.dim)]
            lifted = multiply_numerators(source.layer, source.homology.lift(coords), factor, target.layer)
            rows.append(target.homology.coordinates(lifted))
        return rows

    def image_in(self, p: int, c: int, C: int, j: int) -> Subspace:
        """image(H^(c) -> H^(C)) as a subspace of H^(C) coordinates."""
        ambient = self.level(p, C, j).dim
        rows = self.transition(p, c, C, j)
        return Subspace.span(ambient, [{k: x for k, x in enumerate(row) if x} for row in rows])

    # -- caps -------------------------------------------------------------
    def hypothesis_holds(self, p: int, degree_cap: Optional[int] = None) -> bool:
        """H_{p+1}(df;A) vanishes in scan range."""
        return self.jacobian.vanishes(p + 1, degree_cap)

    def certificate_bound(self, p: int, degree_cap: Optional[int] = None) -> int:
        targets = self.jacobian.eta_target_degrees(p, degree_cap)
        nu_star = max((target.nu for target in targets), default=0)
        return max(nu_star, 1) + 2

    def auto_cap(self, p: int, degree_cap: Optional[int] = None) -> int:
        if not self.hypothesis_holds(p, degree_cap):
            raise AutoCapUnavailableError(
                f"H_{p + 1}(df;A) does not vanish in scan range; pass an explicit pole cap"
            )
        return self.certificate_bound(p, degree_cap)

    # -- homology ---------------------------------------------------------
    def derham_homology(
        self,
        p: int,
        j: Optional[int] = None,
        pole_cap: Optional[int] = None,
        degree_cap: Optional[int] = None,
        strict: bool = True,
    ) -> DeRhamHomology:
        """
        Stable dimension of H_p(d; R_f)_j. With no pole cap the cap is derived from
        the eta targets; `strict` raises NotStabilizedError instead of returning an
        unstabilized result.
        """
        h = self.h
        if not 0 <= p <= h.n:
            raise InputError(f"p must lie in 0..{h.n}, got {p}")
        j = -h.omega if j is None else j
        bound: Optional[int] = None
        if pole_cap is None:
            pole_cap = self.auto_cap(p, degree_cap)
            bound = pole_cap
        else:
            if pole_cap < 0:
                raise InputError(f"pole cap must be non-negative, got {pole_cap}")
            try:
                if self.hypothesis_holds(p, degree_cap):
                    bound = self.certificate_bound(p, degree_cap)
            except DegreeCapRequiredError:
                bound = None

        logger.info(f"de Rham homology p={p}, j={j}, pole cap {pole_cap} (certificate bound {bound})")
        level_dims = [self.level(p, c, j).dim for c in range(pole_cap + 1)]
        ranks = [self._rank_of(self.transition(p, c, c + 1, j)) for c in range(pole_cap)]
        enough_levels = len(ranks) >= 2 and ranks[-1] == ranks[-2]
        stabilized = enough_levels and (bound is None or pole_cap >= bound)
        dim = ranks[-1] if ranks else 0

        result = DeRhamHomology(p, j, pole_cap, dim, ranks, level_dims, stabilized, bound)
        if not stabilized:
            message = f"not stabilized at cap {pole_cap} (transition ranks {ranks}); raise the pole cap"
            if strict:
                raise NotStabilizedError(message)
            logger.warning(message)
            return result

        result.top = self.level(p, pole_cap, j)
        result.image = self.image_in(p, pole_cap - 1, pole_cap, j)
        result.class_basis = [
            normal_form(LocalizedVector.from_vector(result.top.layer, h, result.top.homology.lift(
                [row.get(k, Fraction(0)) for k in range(result.top.dim)]
            )))
            for row in result.image.basis
        ]
        return result

    @staticmethod
    def _rank_of(rows: Sequence[Sequence[Fraction]]) -> int:
        if not rows or not rows[0]:
            return 0
        return rank(RationalMatrix.from_dense(rows), use_modular=False)

    # -- theta and pole orders --------------------------------------------
    def theta(self, v: LocalizedVector) -> ThetaValue:
        """Numerators of a non-polynomial cycle, reduced mod f, as a class in H_p(df;A)."""
        if v.h.f != self.h.f:
            raise InputError("vector belongs to another hypersurface")
        nf = normal_form(v)
        if nf.is_zero() or nf.pole == 0:
            raise PreconditionError("theta needs a nonzero cycle with a pole")
        if not is_cycle(nf):
            raise PreconditionError("theta needs a cycle")
        t = (nf.pole + nf.p) * self.h.d + nf.internal_degree
        if not self.jacobian.is_cycle(nf.p, t, nf.components):
            raise InternalConsistencyError(
                f"numerators of a pole-{nf.pole} cycle do not form a psi_{nf.p}-cycle mod f"
            )
        slice_ = self.jacobian.jacobian_homology(nf.p, t)
        coords = slice_.coordinates_of_components(nf.components)
        return ThetaValue(t, nf.pole, coords, slice_.dim)

    def class_pole_order(self, H: DeRhamHomology, x: Sequence[Fraction]) -> PoleOrder:
        """Least c with x in the image of H^(c) -> H^(cap); -inf for the zero class."""
        vector = {k: Fraction(value) for k, value in enumerate(x) if value}
        if not vector:
            return NEG_INFINITY
        for c in range(H.pole_cap + 1):
            if self.image_in(H.p, c, H.pole_cap, H.internal_degree).contains(vector):
                return PoleOrder(c)
        raise PreconditionError("coordinates do not describe a class of this homology")

    def minimal_representative(self, H: DeRhamHomology, x: Sequence[Fraction]) -> LocalizedVector:
        """A cycle of pole order L(x) whose class is x."""
        order = self.class_pole_order(H, x)
        if order.is_neg_infinity:
            return LocalizedVector.zero(self.h, H.p, H.internal_degree)
        c = order.value
        rows = self.transition(H.p, c, H.pole_cap, H.internal_degree)
        M = RationalMatrix.from_columns(len(x), [{k: v for k, v in enumerate(row) if v} for row in rows])
        y = solve(M, {k: Fraction(v) for k, v in enumerate(x) if v})
        if y is None:
            raise InternalConsistencyError("class lies in an image but has no preimage")
        level = self.level(H.p, c, H.internal_degree)
        coords = [y.get(k, Fraction(0)) for k in range(level.dim)]
        rep = LocalizedVector.from_vector(level.layer, self.h, level.homology.lift(coords))
        return normal_form(rep)

    def tilde_theta(self, H: DeRhamHomology, x: Sequence[Fraction]) -> Optional[ThetaValue]:
        """theta on classes via a minimal-pole representative; None for the zero class."""
        rep = self.minimal_representative(H, x)
        if rep.is_zero():
            return None
        return self.theta(rep)

    # -- filtration -------------------------------------------------------
    def filtration(self, p: int, H: DeRhamHomology, degree_cap: Optional[int] = None) -> FiltrationReport:
        h = self.h
        if not H.stabilized:
            raise PreconditionError("filtration needs a stabilized homology")
        if not self.hypothesis_holds(p, degree_cap):
            raise HypothesisNotMetError(f"H_{p + 1}(df;A) does not vanish; the filtration theorem does not apply")
        C, j = H.pole_cap, H.internal_degree
        ambient = H.top.dim

        previous = Subspace.zero(ambient)
        steps: List[EtaStep] = []
        saturation: Optional[int] = None
        f0 = self.image_in(p, 0, C, j)
        for nu in range(1, C):
            rows = self.transition(p, nu, C, j)
            current = Subspace.span(ambient, list(previous.basis) + [self._sparse(r) for r in rows])
            picks: List[int] = []
            spanned = previous
            for k, row in enumerate(rows):
                candidate = self._sparse(row)
                if not spanned.contains(candidate):
                    picks.append(k)
                    spanned = Subspace.span(ambient, list(spanned.basis) + [candidate])
            t = (nu + p) * h.d + j
            thetas: List[List[Fraction]] = []
            for k in picks:
                value = self.tilde_theta(H, rows[k])
                if value is None:
                    raise InternalConsistencyError(f"a class new to F_{nu} has no minimal representative")
                if value.t != t:
                    raise InternalConsistencyError(f"theta of a pole-{nu} representative landed in degree {value.t}")
                thetas.append(value.coordinates)
            eta_rank = self._rank_of(thetas) if thetas else 0
            target_dim = self.jacobian.slice_dim(p, t)
            steps.append(EtaStep(nu, t, target_dim, current.dim, len(picks), eta_rank))
            if saturation is None and current.dim == H.dim:
                saturation = nu
            previous = current
        if H.dim == 0:
            saturation = 0

        report = FiltrationReport(p, h.n, H.dim, steps, saturation)
        report.assertions["F_0 is zero"] = f0.dim == 0
        report.assertions["filtration is increasing"] = all(
            a.filtration_dim <= b.filtration_dim for a, b in zip(steps, steps[1:])
        )
        report.assertions["graded pieces add up to the homology"] = sum(s.quotient_dim for s in steps) == H.dim
        report.assertions["eta_nu injective for nu >= 2"] = all(s.injective for s in steps if s.nu >= 2)
        first = next((s for s in steps if s.nu == 1), None)
        if p != h.n - 1:
            report.assertions["eta_1 injective"] = first is None or first.injective
        elif h.n >= 2:
            report.assertions["eta_1 has one-dimensional kernel"] = first is not None and first.kernel_dim == 1
            report.kernel_cycle_generates = self._kernel_cycle_generates(H)
            report.assertions["explicit cycle spans ker eta_1"] = report.kernel_cycle_generates
        return report

    @staticmethod
    def _sparse(row: Sequence[Fraction]) -> Vector:
        return {k: x for k, x in enumerate(row) if x}

    def _kernel_cycle_generates(self, H: DeRhamHomology) -> bool:
        xi = self.explicit_kernel_cycle()
        if xi.internal_degree != H.internal_degree or xi.p != H.p:
            return False
        x = H.class_of(xi)
        if not any(x):
            return False
        if self.class_pole_order(H, x) != 1:
            return False
        return self.theta(xi).is_zero

    def explicit_kernel_cycle(self) -> LocalizedVector:
        """The pole-1 cycle of layer n-1 with component (+-) d_i f / f at the subset missing i."""
        h = self.h
        if h.n < 2:
            raise PreconditionError("the explicit kernel cycle needs at least two variables")
        full = IndexSubset(tuple(range(h.n)))
        patterns = (
            lambda i: -1 if i % 2 else 1,
            lambda i: -1 if (h.n - 1 - i) % 2 else 1,
        )
        for sign in patterns:
            components = {full.without(i): h.partials[i].scale(sign(i)) for i in range(h.n)}
            xi = LocalizedVector(h, h.n - 1, components, 1, -h.omega)
            if is_cycle(xi):
                return normal_form(xi)
        raise InternalConsistencyError("no sign pattern makes the explicit vector a cycle")

    # -- sampling ---------------------------------------------------------
    def random_vector(self, p: int, pole: int, rng, j: Optional[int] = None) -> LocalizedVector:
        """A seeded random element of the pole-level slice of (K_p)_j."""
        h = self.h
        j = -h.omega if j is None else j
        components = {
            I: random_homogeneous(h.ring, pole * h.d + j + I.weight(h.ring), rng)
            for I in all_subsets(h.n, p)
            if rng.random() < 0.7
        }
        return LocalizedVector(h, p, components, pole, j)

    def random_boundary(self, p: int, pole: int, rng, j: Optional[int] = None) -> LocalizedVector:
        """phi_{p+1} of a random element with pole `pole - 1`."""
        return apply_differential(self.random_vector(p + 1, max(pole - 1, 0), rng, j))

    def random_cycle(self, p: int, pole: int, rng, j: Optional[int] = None) -> LocalizedVector:
        """A random combination of the cycle basis at a pole level, in normal form."""
        h = self.h
        j = -h.omega if j is None else j
        level = self.level(p, pole, j)
        v: Vector = {}
        for basis_vector in level.cycles.basis:
            coefficient = rng.randint(-3, 3)
            if coefficient:
                add_scaled(v, basis_vector, Fraction(coefficient))
        return normal_form(LocalizedVector.from_vector(level.layer, h, v))

# koszul_derham/engines/jacobian.py
import logging
from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Tuple

from koszul_derham.config import EngineSettings, get_settings
from koszul_derham.core.polynomial import Polynomial, euler_check, gradient, weighted_degree
from koszul_derham.core.ring import monomial_basis
from koszul_derham.engines.koszul import (
    DifferentialMatrix,
    IndexSubset,
    KoszulLayer,
    build_jacobian_differential,
    psi_numerators,
)
from koszul_derham.engines.quotient import GradedQuotient
from koszul_derham.errors import (
    DegreeCapRequiredError,
    InputError,
    InternalConsistencyError,
    NotHomogeneousError,
)
from koszul_derham.utils.linalg import QuotientSpace, Vector, image_basis, kernel_basis, rank
from koszul_derham.utils.series import complete_intersection_series

logger = logging.getLogger(__name__)


class HypersurfaceContext:
    """A weighted-homogeneous f with its degree, partials, A = R/(f) and R/(df)."""

    def __init__(self, f: Polynomial):
        if f.is_zero():
            raise InputError("f must be nonzero", reason="zero_polynomial")
        d = weighted_degree(f)
        if not isinstance(d, int):
            raise NotHomogeneousError(
                f"f is not weighted-homogeneous for weights {list(f.ring.weights)} (degrees {f.degrees()})"
            )
        if d == 0:
            raise InputError("f must have positive degree", reason="constant_polynomial")
        if not euler_check(f):
            raise NotHomogeneousError("f fails the Euler identity")
        self.f = f
        self.ring = f.ring
        self.d = d
        self.n = f.ring.n
        self.omega = f.ring.omega
        self.max_weight = max(f.ring.weights)
        self.partials: Tuple[Polynomial, ...] = gradient(f)
        self.a_quotient = GradedQuotient(self.ring, [f], name="A")
        self.milnor = GradedQuotient(self.ring, list(self.partials), name="M")

    @property
    def milnor_top_degree(self) -> int:
        return self.n * self.d - 2 * self.omega

    @property
    def default_scan_bound(self) -> int:
        return max(self.milnor_top_degree + self.max_weight, 0)

    @property
    def smooth_eta_cutoff(self) -> int:
        return (self.n + 1) * self.d - 2 * self.omega + self.max_weight

    def __repr__(self) -> str:
        return f"HypersurfaceContext(n={self.n}, d={self.d}, omega={self.omega})"


@dataclass
class MilnorProfile:
    hilbert: List[int]
    scan_bound: int
    is_artinian: bool
    top_degree: Optional[int]
    matches_complete_intersection: Optional[bool] = None


@dataclass
class JacobianHomologySlice:
    p: int
    t: int
    layer: KoszulLayer
    homology: QuotientSpace

    @property
    def dim(self) -> int:
        return self.homology.dim

    def coordinates(self, v: Vector):
        return self.homology.coordinates(v)

    def coordinates_of_components(self, components: Mapping[IndexSubset, Polynomial]):
        """Class coordinates of per-subset numerators (reduced mod f)."""
        return self.coordinates(self.layer.vector_from_components(components))

    def basis(self) -> List[Dict[IndexSubset, Polynomial]]:
        """Representatives of the chosen basis of the slice."""
        out = []
        for k in range(self.dim):
            coords = [1 if m == k else 0 for m in range(self.dim)]
            out.append(self.layer.components_from_vector(self.homology.lift(coords)))
        return out


@dataclass
class EtaTarget:
    nu: int
    t: int
    dim: int


class JacobianEngine:
    """Milnor algebra profile and graded homology of K'(df; A), with caches."""

    def __init__(self, h: HypersurfaceContext, settings: Optional[EngineSettings] = None):
        self.h = h
        self.settings = settings or get_settings()
        self._differentials: Dict[Tuple[int, int], DifferentialMatrix] = {}
        self._slices: Dict[Tuple[int, int], JacobianHomologySlice] = {}
        self._dims: Dict[Tuple[int, int], int] = {}
        self._profile: Optional[MilnorProfile] = None

    # -- Milnor algebra ---------------------------------------------------
    def milnor_profile(self, scan_bound: Optional[int] = None) -> MilnorProfile:
        h = self.h
        bound = max(scan_bound or 0, h.default_scan_bound)
        if self._profile is not None and self._profile.scan_bound == bound:
            return self._profile

        hilbert = h.milnor.hilbert_function(bound)
        window = range(max(h.milnor_top_degree + 1, 0), h.milnor_top_degree + h.max_weight + 1)
        is_artinian = all(hilbert[t] == 0 for t in window)
        top_degree = None
        matches = None
        if is_artinian:
            nonzero = [t for t, dim in enumerate(hilbert) if dim]
            top_degree = nonzero[-1] if nonzero else None
            series = complete_intersection_series([h.d - w for w in h.ring.weights], h.ring.weights, bound)
            matches = series == hilbert
            if not matches:
                logger.warning(f"Milnor Hilbert function {hilbert} differs from the product series {series}")

        profile = MilnorProfile(hilbert, bound, is_artinian, top_degree, matches)
        logger.info(f"Milnor profile: artinian={is_artinian}, top degree={top_degree}, hilbert={hilbert}")
        if scan_bound is None:
            self._profile = profile
        return profile

    def is_smooth(self) -> bool:
        return self.milnor_profile().is_artinian

    def euler_consequence_holds(self, max_degree: Optional[int] = None) -> bool:
        """f * m lies in the Jacobian ideal for every monomial m up to the scan bound."""
        h = self.h
        bound = h.default_scan_bound if max_degree is None else max_degree
        for s in range(0, bound - h.d + 1):
            for m in monomial_basis(h.ring, s):
                if not h.milnor.contains(h.f.times_monomial(m)):
                    return False
        return True

    # -- Jacobian Koszul homology -----------------------------------------
    def differential(self, p: int, t: int) -> DifferentialMatrix:
        key = (p, t)
        if key not in self._differentials:
            self._differentials[key] = build_jacobian_differential(self.h.f, p, t, self.h.a_quotient)
        return self._differentials[key]

    def jacobian_homology(self, p: int, t: int) -> JacobianHomologySlice:
        key = (p, t)
        if key not in self._slices:
            psi_p = self.differential(p, t)
            psi_next = self.differential(p + 1, t)
            cycles = kernel_basis(psi_p.matrix)
            boundaries = image_basis(psi_next.matrix)
            homology = QuotientSpace(cycles, boundaries)
            self._slices[key] = JacobianHomologySlice(p, t, psi_p.source, homology)
            self._dims[key] = homology.dim
            logger.debug(f"H_{p}(df;A)_{t}: cycles {cycles.dim}, boundaries {boundaries.dim}, dim {homology.dim}")
        return self._slices[key]

    def slice_dim(self, p: int, t: int) -> int:
        """dim H_p(df;A)_t from two ranks; no basis is built."""
        key = (p, t)
        if key not in self._dims:
            psi_p = self.differential(p, t)
            psi_next = self.differential(p + 1, t)
            dim = psi_p.source.dim - rank(psi_p.matrix) - rank(psi_next.matrix)
            if dim < 0:
                raise InternalConsistencyError(f"negative homology dimension at p={p}, t={t}")
            self._dims[key] = dim
        return self._dims[key]

    def is_cycle(self, p: int, t: int, components: Mapping[IndexSubset, Polynomial]) -> bool:
        """psi_p(components) vanishes in A."""
        target = KoszulLayer.jacobian(self.h.a_quotient, self.h.d, p - 1, t)
        image = psi_numerators(self.h.partials, components)
        return not target.vector_from_components(image)

    # -- eta targets ------------------------------------------------------
    def eta_cutoff(self, degree_cap: Optional[int] = None) -> int:
        if degree_cap is not None:
            return degree_cap
        if self.is_smooth():
            return self.h.smooth_eta_cutoff
        raise DegreeCapRequiredError(
            "the Jacobian ring is not Artinian; supply --degree-cap to bound the slice scan"
        )

    def eta_slices(self, p: int, degree_cap: Optional[int] = None) -> List[EtaTarget]:
        """Every (nu, t=(nu+p)d-w, dim) up to the cutoff, zero dims included."""
        h = self.h
        cutoff = self.eta_cutoff(degree_cap)
        out: List[EtaTarget] = []
        nu = 1
        while (nu + p) * h.d - h.omega <= cutoff:
            t = (nu + p) * h.d - h.omega
            out.append(EtaTarget(nu, t, self.slice_dim(p, t)))
            nu += 1
        return out

    def eta_target_degrees(self, p: int, degree_cap: Optional[int] = None) -> List[EtaTarget]:
        """The potentially nonzero eta targets: slices with nonzero dimension."""
        return [target for target in self.eta_slices(p, degree_cap) if target.dim]

    def scan_dims(self, p: int, degrees) -> Dict[int, int]:
        return {t: self.slice_dim(p, t) for t in degrees}

    def vanishes(self, p: int, degree_cap: Optional[int] = None) -> bool:
        """H_p(df;A)_t = 0 for every t in 0..cutoff."""
        if p < 0 or p > self.h.n:
            return True
        cutoff = self.eta_cutoff(degree_cap)
        return all(self.slice_dim(p, t) == 0 for t in range(0, cutoff + 1))

    def vanishing_threshold(self, degree_cap: Optional[int] = None) -> int:
        """Least alpha >= 0 with H_i(df;A) = 0 in scan range for all i >= alpha+1."""
        alpha = self.h.n
        while alpha > 0 and self.vanishes(alpha, degree_cap):
            alpha -= 1
        return alpha

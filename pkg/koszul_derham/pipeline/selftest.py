# koszul_derham/pipeline/selftest.py
"""
Seeded property checks on one hypersurface: the algebra of the pole order,
normal forms, d o d = 0 for both complexes, theta on boundaries, the degree
theta lands in and the Hilbert series oracles.
"""
import logging
import random
from fractions import Fraction
from typing import Callable, List, Optional

from koszul_derham.config import EngineSettings, get_settings
from koszul_derham.core.polynomial import weighted_degree
from koszul_derham.core.ring import monomial_basis
from koszul_derham.engines.derham import (
    DeRhamEngine,
    LocalizedVector,
    L_of,
    normal_form,
)
from koszul_derham.engines.jacobian import HypersurfaceContext, JacobianEngine
from koszul_derham.engines.koszul import KoszulLayer, build_derham_differential
from koszul_derham.errors import KoszulDerhamError
from koszul_derham.pipeline.orchestrator import input_block
from koszul_derham.pipeline.report import PropertyBlock, SelftestReport
from koszul_derham.utils.series import polynomial_ring_series

logger = logging.getLogger(__name__)

HILBERT_ORACLE_DEGREE = 30


def _nonzero_scalar(rng: random.Random) -> Fraction:
    value = 0
    while value == 0:
        value = rng.randint(-4, 4)
    return Fraction(value, rng.randint(1, 3))


class PropertySuite:
    """Runs every property with its own budget of seeded samples."""

    def __init__(
        self,
        h: HypersurfaceContext,
        seed: int = 0,
        samples: Optional[int] = None,
        degree_cap: Optional[int] = None,
        settings: Optional[EngineSettings] = None,
    ):
        self.h = h
        self.seed = seed
        self.settings = settings or get_settings()
        self.samples = samples or self.settings.selftest_samples
        self.degree_cap = degree_cap
        self.rng = random.Random(seed)
        self.jacobian = JacobianEngine(h, self.settings)
        self.derham = DeRhamEngine(h, self.jacobian, self.settings)

    def run(self) -> SelftestReport:
        checks: List[Callable[[], PropertyBlock]] = [
            self.check_pole_order_clauses,
            self.check_normal_form,
            self.check_derham_square_zero,
            self.check_jacobian_square_zero,
            self.check_hilbert_oracles,
            self.check_theta_on_boundaries,
            self.check_theta_degree,
            self.check_theta_representative_independence,
        ]
        report = SelftestReport(input=input_block(self.h), seed=self.seed, samples=self.samples)
        for check in checks:
            logger.info(f"Property {check.__name__}")
            report.properties.append(check())
        if any(block.passed is False for block in report.properties):
            report.status = "failed"
        return report

    # -- helpers ----------------------------------------------------------
    def _random_vector(self, p: Optional[int] = None, max_pole: int = 3) -> LocalizedVector:
        p = self.rng.randint(0, self.h.n) if p is None else p
        return self.derham.random_vector(p, self.rng.randint(0, max_pole), self.rng)

    def _fits(self, p: int, pole: int) -> bool:
        return self.derham.source_size(p, pole) <= self.settings.max_slice_columns

    @staticmethod
    def _close(block: PropertyBlock) -> PropertyBlock:
        if block.checked:
            block.passed = block.failures == 0
        logger.info(f"{block.name}: {block.checked} checked, {block.failures} failed, {block.skipped} skipped")
        return block

    def _smooth_only(self, name: str) -> Optional[PropertyBlock]:
        if self.jacobian.is_smooth():
            return None
        return PropertyBlock(name=name, note="f is not smooth; property does not apply")

    # -- properties -------------------------------------------------------
    def check_pole_order_clauses(self) -> PropertyBlock:
        block = PropertyBlock(name="pole order clauses")
        for _ in range(self.samples * 5):
            p = self.rng.randint(0, self.h.n)
            xi1, xi2, xi3 = (self._random_vector(p) for _ in range(3))
            L1, L2, L3 = L_of(xi1), L_of(xi2), L_of(xi3)
            alpha, beta, gamma = (_nonzero_scalar(self.rng) for _ in range(3))
            total = L_of(xi1 + xi2)

            holds = total <= max(L1, L2)
            if L1 < L2:
                holds &= total == L2
            elif L2 < L1:
                holds &= total == L1
            else:
                holds &= total <= L2
            holds &= L_of(xi1.scale(alpha)) == L1
            holds &= L_of(xi1.scale(0)) <= L1
            holds &= L_of(xi1.scale(alpha) + xi2.scale(beta)) <= max(L1, L2)
            holds &= L_of(xi1.scale(alpha) + xi2.scale(beta) + xi3.scale(gamma)) <= max(L1, L2, L3)

            block.checked += 1
            if not holds:
                block.failures += 1
                logger.warning(f"Pole order clause failed for {xi1!r}, {xi2!r}")
        return self._close(block)

    def check_normal_form(self) -> PropertyBlock:
        block = PropertyBlock(name="normal form idempotent and unique")
        for _ in range(self.samples * 2):
            v = self._random_vector()
            nf = normal_form(v)
            raised = normal_form(v.raise_pole(v.pole + self.rng.randint(1, 2)))
            twice = normal_form(nf)
            block.checked += 1
            same = (
                twice.pole == nf.pole
                and twice.components == nf.components
                and raised.pole == nf.pole
                and raised.components == nf.components
            )
            if not same:
                block.failures += 1
                logger.warning(f"Normal form is not unique for {v!r}")
        return self._close(block)

    def check_derham_square_zero(self) -> PropertyBlock:
        block = PropertyBlock(name="phi o phi = 0")
        h = self.h
        if h.n < 2:
            block.note = "needs at least two variables"
            return block
        for _ in range(min(self.samples, 50)):
            p = self.rng.randint(2, h.n)
            pole = self.rng.randint(0, 2)
            j = self.rng.choice([-h.omega - 1, -h.omega, -h.omega + 1, 0])
            if not self._fits(p, pole):
                block.skipped += 1
                continue
            first = build_derham_differential(h.f, p, pole, j)
            second = build_derham_differential(h.f, p - 1, pole + 1, j)
            block.checked += 1
            if not second.composes_to_zero(first):
                block.failures += 1
                logger.warning(f"phi_{p - 1} o phi_{p} != 0 at pole {pole}, j={j}")
        return self._close(block)

    def check_jacobian_square_zero(self) -> PropertyBlock:
        block = PropertyBlock(name="psi o psi = 0")
        h = self.h
        if h.n < 2:
            block.note = "needs at least two variables"
            return block
        top = h.default_scan_bound + h.d
        for _ in range(min(self.samples, 50)):
            p = self.rng.randint(2, h.n)
            t = self.rng.randint(0, top)
            first = self.jacobian.differential(p, t)
            second = self.jacobian.differential(p - 1, t)
            block.checked += 1
            if not second.composes_to_zero(first):
                block.failures += 1
                logger.warning(f"psi_{p - 1} o psi_{p} != 0 at t={t}")
        return self._close(block)

    def check_hilbert_oracles(self) -> PropertyBlock:
        block = PropertyBlock(name="Hilbert functions match generating functions")
        ring = self.h.ring
        oracle = polynomial_ring_series(ring.weights, HILBERT_ORACLE_DEGREE)
        for t, expected in enumerate(oracle):
            block.checked += 1
            if len(monomial_basis(ring, t)) != expected:
                block.failures += 1
                logger.warning(f"dim R_{t} differs from the generating function ({expected})")
        profile = self.jacobian.milnor_profile()
        if profile.is_artinian:
            block.checked += 1
            if not profile.matches_complete_intersection:
                block.failures += 1
        return self._close(block)

    def check_theta_on_boundaries(self) -> PropertyBlock:
        name = "theta vanishes on boundaries"
        skipped = self._smooth_only(name)
        if skipped:
            return skipped
        block = PropertyBlock(name=name)
        for p in range(1, self.h.n):
            if not self.derham.hypothesis_holds(p, self.degree_cap):
                continue
            for _ in range(self.samples):
                pole = self.rng.randint(1, 3)
                delta = self.derham.random_boundary(p, pole, self.rng)
                if L_of(delta) <= 0:
                    block.skipped += 1
                    continue
                block.checked += 1
                try:
                    if not self.derham.theta(delta).is_zero:
                        block.failures += 1
                        logger.warning(f"theta of a boundary is nonzero: {delta!r}")
                except KoszulDerhamError as e:
                    block.failures += 1
                    logger.error(f"theta failed on a boundary: {e.message}", exc_info=True)
        return self._close(block)

    def check_theta_degree(self) -> PropertyBlock:
        block = PropertyBlock(name="theta lands in degree (c+p)d-w")
        h = self.h
        for _ in range(self.samples):
            p = self.rng.randint(1, max(h.n - 1, 1))
            pole = self.rng.randint(1, 2)
            if not self._fits(p, pole):
                block.skipped += 1
                continue
            xi = self.derham.random_cycle(p, pole, self.rng)
            c = L_of(xi)
            if c <= 0:
                block.skipped += 1
                continue
            t = (c.value + p) * h.d - h.omega
            layer = KoszulLayer.jacobian(h.a_quotient, h.d, p, t)
            block.checked += 1
            try:
                value = self.derham.theta(xi)
            except KoszulDerhamError as e:
                block.failures += 1
                logger.error(f"theta failed on a cycle: {e.message}", exc_info=True)
                continue
            degrees_match = all(
                weighted_degree(a) == layer.component_degree(layer.index_of(I)) for I, a in xi.components.items()
            )
            if value.t != t or not degrees_match:
                block.failures += 1
                logger.warning(f"theta of a pole-{c} cycle landed in degree {value.t}, expected {t}")
        return self._close(block)

    def check_theta_representative_independence(self) -> PropertyBlock:
        name = "theta independent of the representative"
        skipped = self._smooth_only(name)
        if skipped:
            return skipped
        block = PropertyBlock(name=name)
        h = self.h
        for _ in range(self.samples):
            p = self.rng.randint(1, max(h.n - 1, 1))
            pole = self.rng.randint(1, 2)
            if not self.derham.hypothesis_holds(p, self.degree_cap) or not self._fits(p, pole):
                block.skipped += 1
                continue
            xi = self.derham.random_cycle(p, pole, self.rng)
            c = L_of(xi)
            delta = self.derham.random_boundary(p, self.rng.randint(1, pole), self.rng)
            shifted = xi + delta
            if c <= 0 or L_of(delta) > c or L_of(shifted) != c:
                block.skipped += 1
                continue
            block.checked += 1
            if self.derham.theta(shifted).coordinates != self.derham.theta(xi).coordinates:
                block.failures += 1
                logger.warning(f"theta changed after adding the boundary {delta!r}")
        return self._close(block)


def run_selftest(
    h: HypersurfaceContext,
    seed: int = 0,
    samples: Optional[int] = None,
    degree_cap: Optional[int] = None,
    settings: Optional[EngineSettings] = None,
) -> SelftestReport:
    return PropertySuite(h, seed, samples, degree_cap, settings).run()

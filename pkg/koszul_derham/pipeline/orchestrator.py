# koszul_derham/pipeline/orchestrator.py
import logging
import time
from contextlib import contextmanager
from typing import Dict, List, Optional

from koszul_derham.config import EngineSettings, get_settings
from koszul_derham.core.parser import format_polynomial
from koszul_derham.engines.derham import DeRhamEngine, DeRhamHomology, FiltrationReport
from koszul_derham.engines.jacobian import HypersurfaceContext, JacobianEngine, MilnorProfile
from koszul_derham.errors import KoszulDerhamError
from koszul_derham.pipeline.report import (
    AssertionOutcome,
    ChecksBlock,
    CorollaryBlock,
    DerhamEntry,
    EtaStepBlock,
    FiltrationBlock,
    InputBlock,
    MilnorBlock,
    TheoremBlock,
    TimingBlock,
    VerificationReport,
    homology_label,
)

logger = logging.getLogger(__name__)

CITED_CONTEXT = [
    "H^i(∂; M) = H_{n-i}(∂; M) for every module M",
    "H_i(∂; R_f) ≅ H_i(∂; H^1_(f)(R)) for i < n (cited identification, not recomputed)",
    "H_n(∂; H^1_(f)(R)) = 0 (cited identification, not recomputed)",
]

# below three variables H_{n-1}(∂f;A) never vanishes for smooth f
MIN_VARIABLES = 3


def input_block(h: HypersurfaceContext) -> InputBlock:
    return InputBlock(
        f=format_polynomial(h.f),
        vars=list(h.ring.var_names),
        weights=list(h.ring.weights),
        n=h.n,
        d=h.d,
        omega=h.omega,
    )


def milnor_block(h: HypersurfaceContext, profile: MilnorProfile) -> MilnorBlock:
    return MilnorBlock(
        hilbert=profile.hilbert,
        is_artinian=profile.is_artinian,
        top_degree=profile.top_degree,
        expected_top_degree=h.milnor_top_degree,
    )


def filtration_block(report: FiltrationReport) -> FiltrationBlock:
    return FiltrationBlock(
        steps=[
            EtaStepBlock(
                nu=s.nu,
                target_degree=s.target_degree,
                target_dim=s.target_dim,
                filtration_dim=s.filtration_dim,
                quotient_dim=s.quotient_dim,
                eta_rank=s.eta_rank,
                injective=s.injective,
            )
            for s in report.steps
        ],
        saturation_index=report.saturation_index,
        kernel_cycle_generates=report.kernel_cycle_generates,
        assertions=dict(report.assertions),
    )


def derham_entry(H: DeRhamHomology, asserted: bool = False, expected: Optional[int] = None) -> DerhamEntry:
    return DerhamEntry(
        p=H.p,
        internal_degree=H.internal_degree,
        status="stabilized" if H.stabilized else "not_stabilized",
        pole_cap=H.pole_cap,
        certificate_bound=H.certificate_bound,
        transition_ranks=H.transition_ranks,
        level_dims=H.level_dims,
        dim=H.dim if H.stabilized else None,
        asserted=asserted,
        expected=expected,
    )


def prediction(alpha: int, n: int) -> Optional[str]:
    """What the vanishing corollary predicts for threshold alpha; None when it predicts nothing."""
    parts = []
    if alpha + 1 <= n - 2:
        parts.append(f"H_i(∂;R_f) = 0 for {alpha + 1} <= i <= {n - 2}")
    if alpha + 1 <= n - 1:
        parts.append(f"H_{n - 1}(∂;R_f) = K")
    return "; ".join(parts) or None


def filtration_outcomes(entry: DerhamEntry, n: int) -> List[AssertionOutcome]:
    block = entry.filtration
    if block is None:
        return []
    label = homology_label(entry.p, n)
    if not block.computed:
        return [AssertionOutcome(name=f"filtration of {label} computed", p=entry.p, passed=None)]
    return [
        AssertionOutcome(name=f"filtration of {label}: {name}", p=entry.p, passed=holds)
        for name, holds in block.assertions.items()
    ]


class VerificationOrchestrator:
    """
    Runs the verification pipeline stage by stage: Euler identity, Milnor
    profile, Jacobian Koszul scan, de Rham homology with filtrations, theorem
    assertions. Every stage logs; optional stages degrade to a note on failure.
    """

    def __init__(
        self,
        h: HypersurfaceContext,
        degree_cap: Optional[int] = None,
        timing: bool = False,
        settings: Optional[EngineSettings] = None,
    ):
        self.h = h
        self.degree_cap = degree_cap
        self.settings = settings or get_settings()
        self.jacobian = JacobianEngine(h, self.settings)
        self.derham = DeRhamEngine(h, self.jacobian, self.settings)
        self.timing = TimingBlock(enabled=timing)

        logger.info(f"Initialized orchestrator for f = {format_polynomial(h.f)} ({h})")

    @contextmanager
    def _stage(self, name: str):
        logger.info(f"Stage {name}")
        start = time.perf_counter()
        try:
            yield
        finally:
            if self.timing.enabled:
                self.timing.stages[name] = time.perf_counter() - start

    def run(self) -> VerificationReport:
        h = self.h
        with self._stage("milnor"):
            profile = self.jacobian.milnor_profile()
        smooth = profile.is_artinian
        checks = ChecksBlock(
            quasi_homogeneous=True,
            euler_identity=True,
            smooth_isolated=smooth,
            milnor_scan_bound=profile.scan_bound,
            degree_cap=self.degree_cap,
            complete_intersection_series=profile.matches_complete_intersection,
        )
        report = VerificationReport(
            input=input_block(h),
            checks=checks,
            milnor=milnor_block(h, profile),
            theorem=TheoremBlock(status="hypothesis_not_met", cited_context=list(CITED_CONTEXT)),
            timing=self.timing,
        )
        if not smooth:
            logger.warning("Jacobian ring is not Artinian: f does not define an isolated singularity")
            report.theorem.assertions.append(AssertionOutcome(name="smooth_isolated", passed=False))
            if self.degree_cap is None:
                logger.info("No degree cap given; skipping the vanishing corollary")
                return report
            alpha = self._scan(report)
            report.corollary = self._corollary(report, alpha)
            return report

        with self._stage("euler_consequence"):
            checks.euler_consequence = self.jacobian.euler_consequence_holds()
        alpha = self._scan(report)
        report.theorem.prediction = prediction(alpha, h.n)

        if h.n < MIN_VARIABLES:
            logger.warning(f"n = {h.n}: the theorem asserts no dimension below {MIN_VARIABLES} variables")
            report.theorem.assertions.append(
                AssertionOutcome(name=f"n >= {MIN_VARIABLES}", observed=h.n, passed=False)
            )
            with self._stage("derham"):
                for p in range(1, h.n + 1):
                    report.derham.append(self._informational_entry(p, "not asserted for fewer than three variables"))
            return report

        assertions: List[AssertionOutcome] = []
        for p in range(1, h.n):
            vanishes = self.jacobian.vanishes(p + 1, self.degree_cap)
            assertions.append(AssertionOutcome(name=f"H_{p + 1}(∂f;A) = 0 in scan range", p=p + 1, passed=vanishes))

        with self._stage("derham"):
            assertions.extend(self._asserted_entries(report, alpha))
            for p in range(1, min(alpha + 1, h.n)):
                report.derham.append(self._informational_entry(p, "not asserted by the vanishing theorem"))
            report.derham.append(
                self._informational_entry(h.n, "H_n(∂;R_f) at j=-ω; H_n(∂;H^1_(f)(R)) = 0 is cited, not computed")
            )
            for entry in report.derham:
                if not entry.asserted:
                    assertions.extend(filtration_outcomes(entry, h.n))

        report.theorem.assertions = assertions
        report.theorem.status = self._status(assertions)
        logger.info(f"Verification finished with status {report.theorem.status}")
        return report

    # -- stages -----------------------------------------------------------
    def _scan(self, report: VerificationReport) -> int:
        """Fills the Jacobian scan and the eta cutoff; returns the vanishing threshold."""
        cutoff = self.jacobian.eta_cutoff(self.degree_cap)
        report.checks.eta_cutoff = cutoff
        with self._stage("jacobian"):
            report.jacobian = self._jacobian_scan(cutoff)
            alpha = self.jacobian.vanishing_threshold(self.degree_cap)
        report.checks.vanishing_threshold = alpha
        return alpha

    def _asserted_entries(self, report: VerificationReport, alpha: int) -> List[AssertionOutcome]:
        """H_p(∂;R_f) = 0 for alpha+1 <= p <= n-2 and = K for p = n-1, with their filtrations."""
        h = self.h
        outcomes: List[AssertionOutcome] = []
        for p in range(alpha + 1, h.n):
            expected = 1 if p == h.n - 1 else 0
            entry = self._asserted_entry(p, expected)
            report.derham.append(entry)
            outcomes.append(
                AssertionOutcome(
                    name=f"dim {homology_label(p, h.n)}",
                    p=p,
                    expected=expected,
                    observed=entry.dim,
                    passed=entry.dim == expected if entry.status == "stabilized" else None,
                )
            )
            outcomes.extend(filtration_outcomes(entry, h.n))
        return outcomes

    def _corollary(self, report: VerificationReport, alpha: int) -> CorollaryBlock:
        block = CorollaryBlock(alpha=alpha, prediction=prediction(alpha, self.h.n))
        with self._stage("derham"):
            block.assertions = self._asserted_entries(report, alpha)
        block.status = self._status(block.assertions) if block.assertions else "not_applicable"
        logger.info(f"Vanishing corollary with alpha={alpha}: {block.status}")
        return block

    def _jacobian_scan(self, cutoff: int) -> Dict[str, Dict[str, int]]:
        scan: Dict[str, Dict[str, int]] = {}
        for p in range(1, self.h.n + 1):
            dims = {}
            for t in range(0, cutoff + 1):
                dim = self.jacobian.slice_dim(p, t)
                if dim:
                    dims[str(t)] = dim
            scan[str(p)] = dims
        return scan

    def _asserted_entry(self, p: int, expected: int) -> DerhamEntry:
        try:
            H = self.derham.derham_homology(p, degree_cap=self.degree_cap, strict=False)
        except KoszulDerhamError as e:
            logger.error(f"de Rham homology for p={p} failed: {e.message}", exc_info=True)
            return DerhamEntry(
                p=p, internal_degree=-self.h.omega, status="error", asserted=True, expected=expected, note=e.diagnostic()
            )
        entry = derham_entry(H, asserted=True, expected=expected)
        if H.stabilized and self.derham.hypothesis_holds(p, self.degree_cap):
            entry.filtration = self._filtration(p, H)
        return entry

    def _informational_entry(self, p: int, note: str) -> DerhamEntry:
        size = self.derham.source_size(p, self._guess_cap(p))
        if size > self.settings.max_slice_columns:
            logger.warning(f"Skipping p={p}: source layer has {size} columns")
            return DerhamEntry(
                p=p,
                internal_degree=-self.h.omega,
                status="skipped",
                note=f"{note}; skipped, {size} columns exceed max_slice_columns={self.settings.max_slice_columns}",
            )
        try:
            H = self.derham.derham_homology(p, degree_cap=self.degree_cap, strict=False)
        except KoszulDerhamError as e:
            logger.error(f"Optional de Rham homology for p={p} failed: {e.message}", exc_info=True)
            return DerhamEntry(p=p, internal_degree=-self.h.omega, status="error", note=f"{note}; {e.diagnostic()}")
        entry = derham_entry(H)
        entry.note = note
        if H.stabilized and p < self.h.n and self.derham.hypothesis_holds(p, self.degree_cap):
            entry.filtration = self._filtration(p, H)
        return entry

    def _guess_cap(self, p: int) -> int:
        try:
            return self.derham.auto_cap(p, self.degree_cap)
        except KoszulDerhamError:
            return 3

    def _filtration(self, p: int, H: DeRhamHomology) -> Optional[FiltrationBlock]:
        try:
            return filtration_block(self.derham.filtration(p, H, self.degree_cap))
        except KoszulDerhamError as e:
            logger.error(f"Filtration for p={p} failed: {e.message}", exc_info=True)
            return FiltrationBlock(computed=False, note=e.diagnostic())

    @staticmethod
    def _status(assertions: List[AssertionOutcome]) -> str:
        if any(a.passed is False for a in assertions):
            return "failed"
        if any(a.passed is None for a in assertions):
            return "inconclusive"
        return "verified"


def verify_main_theorem(
    h: HypersurfaceContext,
    degree_cap: Optional[int] = None,
    timing: bool = False,
    settings: Optional[EngineSettings] = None,
) -> VerificationReport:
    return VerificationOrchestrator(h, degree_cap, timing, settings).run()

import pytest

from koszul_derham.engines.derham import DeRhamEngine, FiltrationReport
from koszul_derham.errors import InternalConsistencyError
from koszul_derham.pipeline.orchestrator import VerificationOrchestrator, prediction, verify_main_theorem


def test_quadric_verified(quadric, settings):
    report = verify_main_theorem(quadric.h, settings=settings)
    assert report.theorem.status == "verified"
    assert report.checks.smooth_isolated
    assert report.checks.euler_consequence
    assert report.checks.vanishing_threshold == 1
    assert report.checks.eta_cutoff == 3
    assert report.jacobian["1"] == {"2": 1}
    assert report.jacobian["2"] == {} and report.jacobian["3"] == {}

    by_p = {entry.p: entry for entry in report.derham}
    top = by_p[2]
    assert top.asserted and top.expected == 1 and top.dim == 1
    assert top.status == "stabilized"
    assert top.filtration.assertions and all(top.filtration.assertions.values())
    assert not by_p[1].asserted and by_p[1].dim == 0
    assert "cited" in by_p[3].note
    assert all(a.passed for a in report.theorem.assertions)
    assert report.theorem.prediction == "H_2(∂;R_f) = K"
    names = [a.name for a in report.theorem.assertions]
    assert "filtration of H_{n-1}(∂;R_f): eta_1 has one-dimensional kernel" in names


@pytest.mark.parametrize("fixture", ["fermat_cubic", "weighted"])
def test_smooth_surfaces_verified(fixture, request, settings):
    engine = request.getfixturevalue(fixture)
    report = verify_main_theorem(engine.h, settings=settings)
    assert report.theorem.status == "verified", report.theorem.assertions
    assert report.milnor.is_artinian
    assert report.milnor.top_degree == report.milnor.expected_top_degree


def test_fermat_cubic_first_homology_is_reported(fermat_cubic, settings):
    report = verify_main_theorem(fermat_cubic.h, settings=settings)
    first = next(entry for entry in report.derham if entry.p == 1)
    assert first.dim == 2
    assert first.pole_cap == 4
    assert [s.quotient_dim for s in first.filtration.steps] == [1, 1, 0]
    assert report.jacobian["1"] == {"3": 1, "4": 3, "5": 3, "6": 1}


def test_non_isolated_singularity(make_hypersurface, settings):
    report = verify_main_theorem(make_hypersurface("x^2*y"), settings=settings)
    assert report.theorem.status == "hypothesis_not_met"
    assert not report.checks.smooth_isolated
    assert report.derham == []
    assert report.theorem.assertions[0].name == "smooth_isolated"


def test_timing_is_opt_in(quadric, settings):
    report = verify_main_theorem(quadric.h, settings=settings)
    assert not report.timing.enabled and report.timing.stages == {}
    timed = VerificationOrchestrator(quadric.h, timing=True, settings=settings).run()
    assert set(timed.timing.stages) >= {"milnor", "jacobian", "derham"}


def test_status_priority():
    from koszul_derham.pipeline.report import AssertionOutcome

    passed = AssertionOutcome(name="a", passed=True)
    unknown = AssertionOutcome(name="b", passed=None)
    failed = AssertionOutcome(name="c", passed=False)
    assert VerificationOrchestrator._status([passed]) == "verified"
    assert VerificationOrchestrator._status([passed, unknown]) == "inconclusive"
    assert VerificationOrchestrator._status([unknown, failed]) == "failed"


@pytest.mark.slow
def test_fermat_quartic(quartic, settings):
    report = verify_main_theorem(quartic.h, settings=settings)
    assert report.theorem.status == "verified"
    by_p = {entry.p: entry for entry in report.derham}
    assert by_p[2].dim == 0 and by_p[2].expected == 0
    assert by_p[3].dim == 1
    assert by_p[1].status == "skipped"


def test_failed_filtration_leaves_status_inconclusive(quadric, settings, monkeypatch):
    def broken(self, p, H, degree_cap=None):
        raise InternalConsistencyError("eta step disagrees")

    monkeypatch.setattr(DeRhamEngine, "filtration", broken)
    report = verify_main_theorem(quadric.h, settings=settings)
    assert report.theorem.status == "inconclusive"
    top = next(entry for entry in report.derham if entry.p == 2)
    assert not top.filtration.computed
    assert "eta step disagrees" in top.filtration.note
    unknown = [a for a in report.theorem.assertions if a.passed is None]
    assert "filtration of H_{n-1}(∂;R_f) computed" in [a.name for a in unknown]
    assert all(a.name.endswith(" computed") for a in unknown)


def test_false_filtration_assertion_fails_run(quadric, settings, monkeypatch):
    def refuted(self, p, H, degree_cap=None):
        return FiltrationReport(p, self.h.n, H.dim, [], None, assertions={"eta_1 has one-dimensional kernel": False})

    monkeypatch.setattr(DeRhamEngine, "filtration", refuted)
    report = verify_main_theorem(quadric.h, settings=settings)
    assert report.theorem.status == "failed"
    failed = [a for a in report.theorem.assertions if a.passed is False]
    assert failed and all("eta_1" in a.name for a in failed)


def test_plane_conic_is_below_the_variable_gate(plane_conic, settings):
    report = verify_main_theorem(plane_conic.h, settings=settings)
    assert report.theorem.status == "hypothesis_not_met"
    assert report.theorem.prediction is None
    gate = report.theorem.assertions[0]
    assert gate.name == "n >= 3" and gate.observed == 2 and gate.passed is False
    assert {entry.p for entry in report.derham} == {1, 2}
    assert not any(entry.asserted for entry in report.derham)


def test_prediction_text():
    assert prediction(1, 3) == "H_2(∂;R_f) = K"
    assert prediction(1, 4) == "H_i(∂;R_f) = 0 for 2 <= i <= 2; H_3(∂;R_f) = K"
    assert prediction(1, 2) is None
    assert prediction(3, 3) is None


def test_corollary_on_non_isolated_singularity(make_hypersurface, settings):
    h = make_hypersurface("x^2*y")
    report = verify_main_theorem(h, degree_cap=6, settings=settings)
    assert report.theorem.status == "hypothesis_not_met"
    corollary = report.corollary
    assert corollary is not None
    assert corollary.alpha == report.checks.vanishing_threshold
    assert corollary.prediction == prediction(corollary.alpha, h.n)
    assert all(corollary.alpha + 1 <= a.p < h.n for a in corollary.assertions if a.p is not None)
    if not corollary.assertions:
        assert corollary.status == "not_applicable"

import pytest

from koszul_derham.pipeline.selftest import PropertySuite, run_selftest


def test_quadric_selftest_passes(quadric, settings):
    report = run_selftest(quadric.h, seed=7, samples=5, settings=settings)
    assert report.status == "passed", [p for p in report.properties if p.passed is False]
    assert report.samples == 5
    names = [p.name for p in report.properties]
    assert "phi o phi = 0" in names and "theta vanishes on boundaries" in names
    assert all(p.checked > 0 for p in report.properties if p.passed)


def test_selftest_is_seeded(quadric, settings):
    first = run_selftest(quadric.h, seed=3, samples=3, settings=settings)
    second = run_selftest(quadric.h, seed=3, samples=3, settings=settings)
    assert first.model_dump() == second.model_dump()


def test_theta_properties_skip_singular_input(make_hypersurface, settings):
    suite = PropertySuite(make_hypersurface("x^2*y", names="x,y"), samples=2, degree_cap=6, settings=settings)
    block = suite.check_theta_on_boundaries()
    assert block.passed is None
    assert "not smooth" in block.note


@pytest.mark.parametrize("fixture", ["quadric", "fermat_cubic"])
def test_pole_order_clauses_on_five_hundred_draws(fixture, request, settings):
    suite = PropertySuite(request.getfixturevalue(fixture).h, seed=19, samples=100, settings=settings)
    block = suite.check_pole_order_clauses()
    assert block.checked == 500
    assert block.passed

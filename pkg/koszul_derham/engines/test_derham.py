import random
from fractions import Fraction

import pytest

from koszul_derham.core.parser import parse_polynomial
from koszul_derham.engines.derham import (
    NEG_INFINITY,
    LocalizedVector,
    L_of,
    PoleOrder,
    apply_differential,
    is_cycle,
    normal_form,
)
from koszul_derham.engines.koszul import IndexSubset
from koszul_derham.errors import AutoCapUnavailableError, InputError, NotStabilizedError, PreconditionError


def S(*members):
    return IndexSubset(tuple(members))


def P(engine, text):
    return parse_polynomial(text, engine.h.ring)


# -- pole orders and normal forms -------------------------------------------

def test_pole_order_sentinel():
    assert NEG_INFINITY < PoleOrder(0) < PoleOrder(2)
    assert PoleOrder(2) == 2
    assert max(NEG_INFINITY, PoleOrder(1)) == 1
    assert NEG_INFINITY.to_json() == "-inf"


def test_normal_form_divides_out_f(quadric):
    h = quadric.h
    v = LocalizedVector(h, 1, {S(0): P(quadric, "x*(x^2+y^2+z^2)")}, 3)
    nf = normal_form(v)
    assert nf.pole == 2
    assert nf.components == {S(0): P(quadric, "x")}
    assert L_of(v) == 2
    assert v == nf


def test_normal_form_keeps_reduced_vectors(plane_conic):
    h = plane_conic.h
    v = LocalizedVector(h, 1, {S(0): P(plane_conic, "x"), S(1): P(plane_conic, "y")}, 1)
    assert normal_form(v) is v
    assert L_of(v) == 1


def test_zero_and_polynomial_vectors(quadric):
    h = quadric.h
    zero = LocalizedVector(h, 1, {}, 5, -3)
    assert normal_form(zero).pole == 0
    assert L_of(zero) == NEG_INFINITY
    polynomial = LocalizedVector(h, 1, {S(0): P(quadric, "x"), S(1): P(quadric, "y")}, 0)
    assert L_of(polynomial) == 0
    assert polynomial.is_polynomial()


def test_pole_order_of_sums(quadric):
    h = quadric.h
    one = LocalizedVector(h, 1, {S(0): P(quadric, "x")}, 1)
    two = LocalizedVector(h, 1, {S(0): P(quadric, "x^3")}, 2)
    assert L_of(one) == 1 and L_of(two) == 2
    assert L_of(one + two) == 2
    assert L_of(one - one) == NEG_INFINITY


def test_numerators_must_have_layer_degree(quadric):
    with pytest.raises(InputError) as excinfo:
        LocalizedVector(quadric.h, 1, {S(0): P(quadric, "x"), S(1): P(quadric, "y^2")}, 1)
    assert excinfo.value.reason == "bad_numerator"


def test_differential_of_differential_vanishes(fermat_cubic):
    rng = random.Random(3)
    for _ in range(20):
        v = fermat_cubic.random_vector(3, rng.randint(0, 2), rng)
        assert apply_differential(apply_differential(v)).is_zero()


# -- homology ----------------------------------------------------------------

def test_quadric_top_minus_one_homology(quadric):
    H = quadric.derham_homology(2)
    assert H.stabilized
    assert H.pole_cap == 3
    assert H.dim == 1
    assert H.transition_ranks[-1] == H.transition_ranks[-2] == 1
    assert len(H.class_basis) == 1
    assert is_cycle(H.class_basis[0])


def test_quadric_other_degrees(quadric):
    assert quadric.derham_homology(1).dim == 0
    # constants of K_3 live at j = -w
    assert quadric.derham_homology(3).dim == 1


def test_fermat_cubic_homology(fermat_cubic):
    assert fermat_cubic.derham_homology(2).dim == 1
    H1 = fermat_cubic.derham_homology(1)
    assert H1.pole_cap == 4
    assert H1.dim == 2


def test_weighted_homology(weighted):
    H = weighted.derham_homology(2)
    assert H.stabilized
    assert H.dim == 1


@pytest.mark.parametrize("fixture", ["quadric", "fermat_cubic"])
def test_homology_concentrated_in_degree_minus_omega(fixture, request):
    engine = request.getfixturevalue(fixture)
    h = engine.h
    for p in range(1, h.n):
        for j in (-h.omega - 1, -h.omega + 1, 0):
            H = engine.derham_homology(p, j=j)
            assert H.stabilized
            assert H.dim == 0


def test_low_cap_is_not_stabilized(quadric):
    with pytest.raises(NotStabilizedError):
        quadric.derham_homology(2, pole_cap=1)
    H = quadric.derham_homology(2, pole_cap=1, strict=False)
    assert not H.stabilized


def test_auto_cap_needs_vanishing_hypothesis(quadric):
    # H_1(df;A) is nonzero, so p = 0 has no certificate
    with pytest.raises(AutoCapUnavailableError):
        quadric.auto_cap(0)
    assert quadric.auto_cap(2) == 3


# -- theta, pole orders of classes, filtration -------------------------------

def test_explicit_kernel_cycle(quadric, fermat_cubic, weighted):
    for engine in (quadric, fermat_cubic, weighted):
        xi = engine.explicit_kernel_cycle()
        h = engine.h
        assert xi.p == h.n - 1
        assert xi.internal_degree == -h.omega
        assert L_of(xi) == 1
        assert is_cycle(xi)
        assert engine.theta(xi).is_zero
        H = engine.derham_homology(h.n - 1)
        x = H.class_of(xi)
        assert any(x)
        assert engine.class_pole_order(H, x) == 1


def check_theta_on_boundaries(engine, seed, samples=100):
    rng = random.Random(seed)
    checked = 0
    for p in range(1, engine.h.n):
        if not engine.hypothesis_holds(p):
            continue
        for _ in range(samples):
            delta = engine.random_boundary(p, rng.randint(1, 3), rng)
            if L_of(delta) <= 0:
                continue
            assert engine.theta(delta).is_zero, (p, delta)
            checked += 1
    assert checked > 0


@pytest.mark.parametrize("fixture", ["quadric", "fermat_cubic", "weighted"])
def test_theta_vanishes_on_boundaries(fixture, request):
    check_theta_on_boundaries(request.getfixturevalue(fixture), seed=11)


@pytest.mark.slow
def test_theta_vanishes_on_quartic_boundaries(quartic):
    check_theta_on_boundaries(quartic, seed=13, samples=25)


def test_theta_lands_in_expected_degree(fermat_cubic):
    rng = random.Random(5)
    h = fermat_cubic.h
    for _ in range(20):
        xi = fermat_cubic.random_cycle(1, rng.randint(1, 2), rng)
        c = L_of(xi)
        if c <= 0:
            continue
        assert fermat_cubic.theta(xi).t == (c.value + 1) * h.d - h.omega


def test_theta_rejects_zero_and_non_cycles(quadric):
    with pytest.raises(PreconditionError):
        quadric.theta(LocalizedVector(quadric.h, 2, {}, 0, -3))
    v = LocalizedVector(quadric.h, 2, {S(0, 1): P(quadric, "z")}, 1)
    assert not is_cycle(v)
    with pytest.raises(PreconditionError):
        quadric.theta(v)


def test_class_pole_order_and_minimal_representative(fermat_cubic):
    H = fermat_cubic.derham_homology(1)
    assert fermat_cubic.class_pole_order(H, [Fraction(0)] * H.top.dim) == NEG_INFINITY
    for row in H.image.basis:
        x = [row.get(k, Fraction(0)) for k in range(H.top.dim)]
        order = fermat_cubic.class_pole_order(H, x)
        assert order in (PoleOrder(1), PoleOrder(2))
        rep = fermat_cubic.minimal_representative(H, x)
        assert L_of(rep) == order
        assert H.class_of(rep) == x
        assert fermat_cubic.tilde_theta(H, x) is not None
    first = fermat_cubic.image_in(1, 1, H.pole_cap, H.internal_degree)
    assert first.dim == 1
    x = [first.basis[0].get(k, Fraction(0)) for k in range(H.top.dim)]
    assert fermat_cubic.class_pole_order(H, x) == 1


def test_filtration_top_minus_one(quadric, fermat_cubic, weighted):
    for engine in (quadric, fermat_cubic, weighted):
        h = engine.h
        H = engine.derham_homology(h.n - 1)
        report = engine.filtration(h.n - 1, H)
        assert report.holds, report.assertions
        assert report.steps[0].filtration_dim == 1
        assert report.steps[0].kernel_dim == 1
        assert report.saturation_index == 1
        assert report.kernel_cycle_generates


def test_filtration_first_homology_cubic(fermat_cubic):
    H = fermat_cubic.derham_homology(1)
    report = fermat_cubic.filtration(1, H)
    assert report.holds, report.assertions
    assert [s.quotient_dim for s in report.steps] == [1, 1, 0]
    assert all(s.injective for s in report.steps)
    assert report.saturation_index == 2


def test_filtration_requires_stabilized_homology(quadric):
    H = quadric.derham_homology(2, pole_cap=1, strict=False)
    with pytest.raises(PreconditionError):
        quadric.filtration(2, H)


@pytest.mark.slow
def test_fermat_quartic(quartic):
    assert quartic.derham_homology(2).dim == 0
    H = quartic.derham_homology(3)
    assert H.dim == 1
    assert quartic.filtration(3, H).holds
    assert quartic.filtration(2, quartic.derham_homology(2)).holds

from koszul_derham.core.parser import parse_polynomial
from koszul_derham.core.ring import RingContext
from koszul_derham.engines.quotient import GradedQuotient

XYZ = RingContext.standard(["x", "y", "z"])


def test_hypersurface_quotient_dims():
    f = parse_polynomial("x^2+y^2+z^2", XYZ)
    A = GradedQuotient(XYZ, [f], name="A")
    assert A.hilbert_function(4) == [1, 3, 5, 7, 9]
    assert A.slice(3).dim == A.dim(3)


def test_membership_and_reduction():
    f = parse_polynomial("x^2+y^2+z^2", XYZ)
    A = GradedQuotient(XYZ, [f])
    assert A.contains(f)
    assert A.contains(parse_polynomial("x*(x^2+y^2+z^2)", XYZ))
    assert not A.contains(parse_polynomial("x^2", XYZ))
    slice_ = A.slice(2)
    # x^2 and -(y^2+z^2) agree modulo f
    assert slice_.reduce(parse_polynomial("x^2", XYZ)) == slice_.reduce(parse_polynomial("-y^2-z^2", XYZ))


def test_representatives_use_standard_monomials():
    f = parse_polynomial("x^3+y^3+z^3", XYZ)
    M = GradedQuotient(XYZ, [parse_polynomial(t, XYZ) for t in ("3*x^2", "3*y^2", "3*z^2")], name="M")
    slice_ = M.slice(3)
    assert slice_.dim == 1
    assert slice_.standard_monomials() == [(1, 1, 1)]
    rep = slice_.representative({0: 2})
    assert slice_.reduce(rep) == {0: 2}
    assert M.contains(f)

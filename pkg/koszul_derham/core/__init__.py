# koszul_derham/core/__init__.py
from koszul_derham.core.ring import RingContext, GradedBasis, monomial_basis, DegreeMarker
from koszul_derham.core.polynomial import (
    Polynomial,
    weighted_degree,
    partial_derivative,
    euler_check,
    multiply,
    exact_divide,
)
from koszul_derham.core.parser import parse_polynomial, format_polynomial, infer_variables

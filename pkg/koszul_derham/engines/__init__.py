# koszul_derham/engines/__init__.py
from koszul_derham.engines.jacobian import HypersurfaceContext, JacobianEngine
from koszul_derham.engines.derham import DeRhamEngine, LocalizedVector, normal_form, L_of

# conftest.py
import pytest

from koszul_derham.config import EngineSettings
from koszul_derham.core.parser import parse_polynomial
from koszul_derham.core.ring import RingContext
from koszul_derham.engines.derham import DeRhamEngine
from koszul_derham.engines.jacobian import HypersurfaceContext, JacobianEngine


def hypersurface(text, names="x,y,z", weights=None):
    names = names.split(",")
    ring = RingContext(names, weights or [1] * len(names))
    return HypersurfaceContext(parse_polynomial(text, ring))


def engine_for(h, settings):
    return DeRhamEngine(h, JacobianEngine(h, settings), settings)


@pytest.fixture(scope="session")
def settings():
    return EngineSettings()


@pytest.fixture(scope="session")
def quadric(settings):
    return engine_for(hypersurface("x^2+y^2+z^2"), settings)


@pytest.fixture(scope="session")
def fermat_cubic(settings):
    return engine_for(hypersurface("x^3+y^3+z^3"), settings)


@pytest.fixture(scope="session")
def weighted(settings):
    return engine_for(hypersurface("x^2+y^3+z^6", weights=[3, 2, 1]), settings)


@pytest.fixture(scope="session")
def quartic(settings):
    return engine_for(hypersurface("x^4+y^4+z^4+w^4", names="x,y,z,w"), settings)


@pytest.fixture(scope="session")
def plane_conic(settings):
    return engine_for(hypersurface("x^2+y^2", names="x,y"), settings)


@pytest.fixture(scope="session")
def make_hypersurface():
    return hypersurface

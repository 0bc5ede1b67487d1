import numpy as np
import pytest

from codim.ambient import ComplexProjective, Euclidean, Hyperbolic, Product, Sphere

SPACES = {
    "euclidean": lambda: Euclidean(3),
    "sphere": lambda: Sphere(3),
    "sphere-r2": lambda: Sphere(2, radius=2.0),
    "hyperbolic": lambda: Hyperbolic(3),
    "cp2": lambda: ComplexProjective(2),
    "cp2-c2": lambda: ComplexProjective(2, c=2.0),
    "product": lambda: Product([Sphere(2), Hyperbolic(2)]),
}


@pytest.fixture(params=sorted(SPACES))
def space(request):
    return SPACES[request.param]()


@pytest.fixture
def rng():
    return np.random.default_rng(7)


@pytest.fixture
def cp2():
    return ComplexProjective(2)


@pytest.fixture
def cp2_base():
    """
    ``[1 : 0 : 0]`` with a unit tangent vector and its complex rotation.
    """
    p = np.array([1.0, 0.0, 0.0, 0.0, 0.0, 0.0])
    x = np.array([0.0, 1.0, 0.0, 0.0, 0.0, 0.0])
    jx = np.array([0.0, 0.0, 0.0, 0.0, 1.0, 0.0])
    return p, x, jx

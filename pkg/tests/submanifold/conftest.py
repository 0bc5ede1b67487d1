import numpy as np
import pytest

from codim.ambient import Euclidean, Hyperbolic, Sphere
from codim.expressions import expression_immersion
from codim.submanifold import Immersion


def circle_on_sphere(polar: float, n: int = 3) -> Immersion:
    coordinates = ["sin(phi)*cos(u)", "sin(phi)*sin(u)", "cos(phi)"] + ["0"] * (n - 2)
    return expression_immersion(
        Sphere(n), ["u"], coordinates, [(0.0, 3.0)], constants={"phi": polar}
    )


@pytest.fixture
def circle():
    """
    The circle of polar angle 1 in ``S^2 ⊂ S^3``.
    """
    return circle_on_sphere(1.0)


@pytest.fixture
def numeric_circle():
    """
    The same circle with finite-difference derivatives only.
    """

    def fn(u):
        return np.array([np.sin(1.0) * np.cos(u[0]), np.sin(1.0) * np.sin(u[0]), np.cos(1.0), 0.0])

    return Immersion(Sphere(3), 1, fn, domain=[(0.0, 3.0)])


@pytest.fixture
def hyperbolic_circle():
    coordinates = ["cosh(rho)", "sinh(rho)*cos(u)", "sinh(rho)*sin(u)", "0"]
    return expression_immersion(
        Hyperbolic(3), ["u"], coordinates, [(0.0, 3.0)], constants={"rho": 0.5}
    )


@pytest.fixture
def paraboloid():
    """
    ``z = (x^2 + 2 y^2) / 2`` with principal curvatures 1 and 2 at the origin.
    """
    return expression_immersion(
        Euclidean(3), ["u", "v"], ["u", "v", "(u**2 + 2*v**2)/2"], [(-1.0, 1.0), (-1.0, 1.0)]
    )

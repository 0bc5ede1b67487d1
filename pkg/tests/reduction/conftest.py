import numpy as np
import pytest

from codim.ambient import Sphere
from codim.expressions import expression_immersion
from codim.reduction import build_envelope
from codim.submanifold import NormalSubbundle, mean_curvature

E4 = np.array([0.0, 0.0, 0.0, 1.0])


def sphere_circle(polar: float = 1.0, n: int = 3):
    coordinates = ["sin(phi)*cos(u)", "sin(phi)*sin(u)", "cos(phi)"] + ["0"] * (n - 2)
    return expression_immersion(
        Sphere(n), ["u"], coordinates, [(0.0, 3.0)], constants={"phi": polar}
    )


def mean_curvature_line(F) -> NormalSubbundle:
    return NormalSubbundle(F, lambda u: [mean_curvature(F, u)], 1, name="span{H}")


@pytest.fixture
def circle():
    return sphere_circle()


@pytest.fixture
def line_bundle(circle):
    """
    ``span{H}``: the circle lies in the totally geodesic ``S^2`` it spans.
    """
    return mean_curvature_line(circle)


@pytest.fixture
def off_bundle(circle):
    """
    The constant normal ``e_4``, which misses the first normal space.
    """
    return NormalSubbundle(circle, lambda u: [E4], 1, name="span{e4}")


@pytest.fixture
def envelope(circle, line_bundle):
    return build_envelope(circle, line_bundle, epsilon=0.2, resolution=5)


@pytest.fixture
def rng():
    return np.random.default_rng(11)

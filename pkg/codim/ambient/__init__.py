from codim.ambient.base import DiscretizedCurve, SpaceModel, TangentVector
from codim.ambient.complex_projective import ComplexProjective
from codim.ambient.euclidean import Euclidean
from codim.ambient.hyperbolic import Hyperbolic
from codim.ambient.product import Product
from codim.ambient.sphere import Sphere
from codim.ambient.transport import (
    holonomy_square,
    parallel_transport,
    transport_frame,
    transport_vectors,
)

__all__ = [
    "ComplexProjective",
    "DiscretizedCurve",
    "Euclidean",
    "Hyperbolic",
    "Product",
    "SpaceModel",
    "Sphere",
    "TangentVector",
    "holonomy_square",
    "parallel_transport",
    "transport_frame",
    "transport_vectors",
]

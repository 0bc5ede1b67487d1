from codim.submanifold.bundle import NormalSubbundle
from codim.submanifold.extrinsic import (
    first_normal_space,
    mean_curvature,
    normal_derivative,
    normal_frame_along,
    normal_space,
    second_fundamental_form,
    shape_operator,
    tangent_space,
)
from codim.submanifold.immersion import Immersion

__all__ = [
    "Immersion",
    "NormalSubbundle",
    "first_normal_space",
    "mean_curvature",
    "normal_derivative",
    "normal_frame_along",
    "normal_space",
    "second_fundamental_form",
    "shape_operator",
    "tangent_space",
]

import numpy as np
import pytest

from codim.ambient import Sphere
from codim.exceptions import BundleRankError, DimensionMismatchError, FiniteDifferenceError
from codim.submanifold import Immersion, NormalSubbundle, mean_curvature

E3 = np.array([0.0, 0.0, 1.0])
E4 = np.array([0.0, 0.0, 0.0, 1.0])


class TestImmersion:
    def test_point_is_retracted(self):
        F = Immersion(Sphere(2), 1, lambda u: np.array([2 * np.cos(u[0]), 2 * np.sin(u[0]), 0.0]))
        np.testing.assert_allclose(F.point(0.0), [1.0, 0.0, 0.0])

    def test_parameter_shape(self, paraboloid):
        with pytest.raises(DimensionMismatchError):
            paraboloid.point([0.1])

    def test_domain_shape(self):
        with pytest.raises(DimensionMismatchError):
            Immersion(Sphere(2), 2, lambda u: E3, domain=[(0.0, 1.0)])

    def test_non_positive_step(self):
        with pytest.raises(FiniteDifferenceError):
            Immersion(Sphere(2), 1, lambda u: E3, fd_step=0.0)

    def test_step_underflow(self):
        F = Immersion(Sphere(2), 1, lambda u: E3, fd_step=1e-30)
        with pytest.raises(FiniteDifferenceError):
            F.differential(1.0)

    def test_grid(self, paraboloid):
        grid = paraboloid.grid(3)
        assert grid.shape == (9, 2)
        np.testing.assert_array_equal(grid[0], [-1.0, -1.0])
        np.testing.assert_array_equal(grid[-1], [1.0, 1.0])

    def test_grid_margin(self, paraboloid):
        grid = paraboloid.grid([2, 1], margin=0.25)
        np.testing.assert_allclose(grid, [[-0.5, 0.0], [0.5, 0.0]])

    def test_grid_needs_domain(self):
        F = Immersion(Sphere(2), 1, lambda u: E3)
        with pytest.raises(ValueError):
            F.grid()

    @pytest.mark.parametrize(
        "u,slack,expected", [(0.5, 0, True), (1.1, 0, False), (1.1, 0.2, True)]
    )
    def test_contains(self, u, slack, expected):
        F = Immersion(Sphere(2), 1, lambda u: E3, domain=[(0.0, 1.0)])
        assert F.contains(u, slack=slack) is expected

    def test_second_derivatives_from_jacobian(self, circle):
        F = Immersion(circle.space, 1, circle.fn, jacobian=circle.jacobian)
        np.testing.assert_allclose(
            F.second_derivatives(0.9), circle.second_derivatives(0.9), atol=1e-8
        )


class TestNormalSubbundle:
    def test_full_bundle(self, circle):
        V = NormalSubbundle.full(circle)
        assert V.rank == 2
        assert V.validate(0.5).dim == 2

    def test_frame_bundle(self, circle):
        V = NormalSubbundle(circle, lambda u: [mean_curvature(circle, u), E4], rank=2)
        frame = V.orthonormal_frame(0.3)
        np.testing.assert_allclose(frame @ frame.T, np.eye(2), atol=1e-12)
        assert V.subspace(0.3).dim == 2

    def test_tangent_vector_is_rejected(self, circle):
        V = NormalSubbundle(circle, lambda u: circle.differential(u), rank=1)
        with pytest.raises(BundleRankError, match="not normal"):
            V.validate(0.5)

    def test_vanishing_vector_is_rejected(self, circle):
        V = NormalSubbundle(circle, lambda u: [np.zeros(4)], rank=1)
        with pytest.raises(BundleRankError, match="vanishes"):
            V.validate(0.5)

    def test_dependent_frame(self, circle):
        V = NormalSubbundle(circle, lambda u: [E4, 2 * E4], rank=2)
        with pytest.raises(BundleRankError):
            V.subspace(0.5)

    def test_frame_count(self, circle):
        V = NormalSubbundle(circle, lambda u: [E4], rank=2)
        with pytest.raises(BundleRankError, match="expected 2"):
            V.frame_vectors(0.5)

    def test_negative_rank(self, circle):
        with pytest.raises(BundleRankError):
            NormalSubbundle(circle, lambda u: [], rank=-1)

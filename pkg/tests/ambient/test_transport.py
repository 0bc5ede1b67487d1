import numpy as np
import pytest

from codim.ambient import (
    DiscretizedCurve,
    Sphere,
    TangentVector,
    holonomy_square,
    parallel_transport,
    transport_frame,
    transport_vectors,
)
from codim.exceptions import BasePointMismatchError, CurveTooCoarseError, NotTangentError
from codim.geomcore import orthonormalize

NORTH = np.array([0.0, 0.0, 1.0])


def latitude(phi: float):
    return lambda t: np.array([np.cos(phi) * np.cos(t), np.cos(phi) * np.sin(t), np.sin(phi)])


def octant_loop(samples_per_side: int = 64) -> DiscretizedCurve:
    """
    Geodesic triangle ``N -> e1 -> e2 -> N`` bounding an eighth of ``S^2``.
    """
    corners = [NORTH, np.array([1.0, 0.0, 0.0]), np.array([0.0, 1.0, 0.0]), NORTH]

    def path(t: float) -> np.ndarray:
        side = min(int(t), 2)
        angle = (t - side) * np.pi / 2
        return np.cos(angle) * corners[side] + np.sin(angle) * corners[side + 1]

    return DiscretizedCurve.from_path(path, 0.0, 3.0, num=3 * samples_per_side, breaks=(1, 2))


class TestAlongGeodesics:
    def test_matches_closed_form(self, space, rng):
        p = space.random_point(rng)
        v = space.random_tangent(p, rng, length=0.8)
        W = np.array([space.random_tangent(p, rng) for _ in range(2)])
        curve = DiscretizedCurve.geodesic(space, p, v, num=32)
        moved = transport_vectors(space, curve, W)
        np.testing.assert_allclose(moved, space.geodesic_transport(p, v, 1.0, W), atol=1e-7)

    def test_chords_match_closed_form(self):
        space = Sphere(2)
        v = np.array([1.0, 0.0, 0.0])
        w = np.array([0.0, 1.0, 0.3])
        w = w - w @ NORTH * NORTH
        samples = [space.exp(NORTH, v, t) for t in np.linspace(0.0, 1.0, 201)]
        curve = DiscretizedCurve.from_samples(samples)
        moved = transport_vectors(space, curve, w[None, :])[0]
        np.testing.assert_allclose(moved, space.geodesic_transport(NORTH, v, 1.0, w), atol=1e-10)

    def test_coarse_samples_rejected(self):
        space = Sphere(2)
        samples = [space.exp(NORTH, np.array([1.0, 0.0, 0.0]), t) for t in np.linspace(0, 1, 10)]
        with pytest.raises(CurveTooCoarseError):
            transport_vectors(space, DiscretizedCurve.from_samples(samples), np.eye(3)[:1])

    def test_record(self):
        space = Sphere(2)
        curve = DiscretizedCurve.geodesic(space, NORTH, np.array([0.0, 1.0, 0.0]), num=8)
        history = transport_vectors(space, curve, np.eye(3)[:2], record=True)
        assert history.shape == (9, 2, 3)
        np.testing.assert_allclose(history[0], np.eye(3)[:2])


class TestAroundLoops:
    @pytest.mark.parametrize("phi", [0.3, 0.5, 1.0])
    def test_latitude_rotation(self, phi):
        space = Sphere(2)
        curve = DiscretizedCurve.from_path(latitude(phi), 0.0, 2 * np.pi, num=128)
        v = np.array([0.0, 1.0, 0.0])
        moved = transport_vectors(space, curve, v[None, :])[0]
        assert moved @ v == pytest.approx(np.cos(2 * np.pi * np.sin(phi)), abs=1e-6)
        assert np.linalg.norm(moved) == pytest.approx(1.0, abs=1e-9)

    def test_metric_compatibility(self):
        space = Sphere(2)
        curve = DiscretizedCurve.from_path(latitude(0.4), 0.0, 5.0, num=100)
        start = curve.start
        W = np.array([[0.0, 1.0, 0.0], [-np.sin(0.4), 0.0, np.cos(0.4)]])
        W[1] += 0.5 * W[0]
        moved = transport_vectors(space, curve, W)
        np.testing.assert_allclose(moved @ moved.T, W @ W.T, atol=1e-9)
        assert space.tangency_defect(curve.end, moved) < 1e-12
        assert space.tangency_defect(start, W) < 1e-12

    def test_octant_quarter_turn(self):
        space = Sphere(2)
        v = np.array([1.0, 0.0, 0.0])
        moved = parallel_transport(space, octant_loop(), TangentVector(NORTH, v))
        assert abs(moved.dir @ v) < 1e-4
        assert abs(moved.dir[1]) == pytest.approx(1.0, abs=1e-4)

    def test_reversed_loop_undoes_transport(self):
        space = Sphere(2)
        loop = octant_loop()
        v = np.array([0.6, 0.8, 0.0])
        there = transport_vectors(space, loop, v[None, :])
        back = transport_vectors(space, loop.reversed(), there)[0]
        np.testing.assert_allclose(back, v, atol=1e-8)


class TestHolonomySquare:
    @staticmethod
    def leading_term(space, p, x, y, z, h):
        delta = (holonomy_square(space, p, x, y, z, h) - z) / h**2
        curvature = space.curvature(p, x, y, z)
        cosine = delta @ curvature / (np.linalg.norm(delta) * np.linalg.norm(curvature))
        return np.linalg.norm(delta), np.linalg.norm(curvature), abs(cosine)

    def test_sphere(self):
        x, y = np.array([1.0, 0.0, 0.0]), np.array([0.0, 1.0, 0.0])
        size, expected, cosine = self.leading_term(Sphere(2), NORTH, x, y, x, 0.05)
        assert size == pytest.approx(expected, rel=0.1)
        assert cosine > 0.98

    def test_complex_line(self, cp2, cp2_base):
        p, x, jx = cp2_base
        size, expected, cosine = self.leading_term(cp2, p, x, jx, x, 0.05)
        assert expected == pytest.approx(4.0)
        assert size == pytest.approx(expected, rel=0.1)
        assert cosine > 0.98

    def test_flat_directions_do_not_rotate(self, cp2, cp2_base):
        p, x, jx = cp2_base
        z = np.array([0.0, 0.0, 1.0, 0.0, 0.0, 0.0])
        moved = holonomy_square(cp2, p, x, jx, z, 0.05)
        # R(x, Jx) z = -2 J z for z orthogonal to the complex line.
        assert np.linalg.norm(moved - z) == pytest.approx(2 * 0.05**2, rel=0.1)

    @pytest.mark.parametrize("model", ["sphere", "complex_line"])
    def test_convergence_order(self, model, cp2, cp2_base):
        if model == "sphere":
            space, (p, x, y) = Sphere(3), np.eye(4)[[3, 0, 1]]
        else:
            space, (p, x, y) = cp2, cp2_base

        steps = np.array([1e-2, 5e-3, 2.5e-3])
        curvature = space.curvature(p, x, y, x)
        errors = [
            np.linalg.norm(holonomy_square(space, p, x, y, x, h) - (x - h**2 * curvature))
            for h in steps
        ]
        slope = np.polyfit(np.log(steps), np.log(errors), 1)[0]
        assert slope >= 2.9


class TestValidation:
    def test_base_point_mismatch(self):
        space = Sphere(2)
        curve = DiscretizedCurve.geodesic(space, NORTH, np.array([1.0, 0.0, 0.0]))
        elsewhere = TangentVector(np.array([0.0, 1.0, 0.0]), np.array([1.0, 0.0, 0.0]))
        with pytest.raises(BasePointMismatchError):
            parallel_transport(space, curve, elsewhere)

    def test_not_tangent(self):
        space = Sphere(2)
        curve = DiscretizedCurve.geodesic(space, NORTH, np.array([1.0, 0.0, 0.0]))
        with pytest.raises(NotTangentError):
            parallel_transport(space, curve, NORTH)

    def test_frame_stays_orthonormal(self, rng):
        space = Sphere(4)
        p = space.random_point(rng)
        W = orthonormalize([space.random_tangent(p, rng) for _ in range(3)])
        curve = DiscretizedCurve.geodesic(space, p, space.random_tangent(p, rng, length=1.0))
        moved = transport_frame(space, curve, W)
        assert moved.dim == 3
        assert moved.gram_defect() < 1e-12

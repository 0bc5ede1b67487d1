import numpy as np
import pytest

from codim.ambient import ComplexProjective, Euclidean, Sphere
from codim.exceptions import (
    BundleRankError,
    DimensionMismatchError,
    FrameDegenerationError,
    NotOnModelError,
    NotTangentError,
)
from codim.frenet import (
    FrenetData,
    cp2_counterexample_data,
    cp2_frame,
    frenet_integrate,
    invariance_profile,
    mean_curvature_apparatus,
    space_form_transplant,
)
from codim.model.report import CheckStatus
from codim.reduction import build_envelope, check_totally_geodesic
from codim.submanifold import mean_curvature

ORIGIN = np.zeros(3)


class TestIntegration:
    def test_plane_circle_closes(self):
        data = FrenetData(Euclidean(2), np.zeros(2), np.eye(2), [1.0], 2 * np.pi, 2048)
        result = frenet_integrate(data)
        assert np.linalg.norm(result.points[-1] - result.points[0]) < 1e-7
        np.testing.assert_allclose(result.frames[-1], result.frames[0], atol=1e-7)
        # Centre of curvature is e2 away from the start.
        radii = np.linalg.norm(result.points - np.array([0.0, 1.0]), axis=1)
        np.testing.assert_allclose(radii, 1.0, atol=1e-7)

    def test_helix(self):
        kappa, tau = 0.8, 0.6
        data = FrenetData(Euclidean(3), ORIGIN, np.eye(3), [kappa, tau], length=3.0, steps=1024)
        result = frenet_integrate(data)
        # The axis tau e1 + kappa e3 of a helix is constant.
        axis = tau * result.frames[:, 0] + kappa * result.frames[:, 2]
        np.testing.assert_allclose(axis, np.tile(axis[0], (len(axis), 1)), atol=1e-8)
        assert result.frenet_residual() < 1e-4

    def test_unit_speed(self):
        result = frenet_integrate(cp2_counterexample_data(length=1.0, steps=1024))
        assert result.unit_speed_defect() < 1e-8
        assert result.max_defect < 1e-8
        assert result.frenet_residual() < 1e-4

    def test_points_stay_on_model(self):
        result = frenet_integrate(cp2_counterexample_data(length=1.0, steps=1024))
        space = result.space
        assert max(space.constraint_defect(x) for x in result.points) < 1e-12

    def test_immersion_mean_curvature(self):
        result = frenet_integrate(cp2_counterexample_data(length=1.0, steps=1024))
        F = result.immersion()
        n = 512
        H = mean_curvature(F, result.times[n])
        np.testing.assert_allclose(H, result.frames[n][1], atol=1e-6)


class TestFrenetData:
    def test_frame_rows(self):
        with pytest.raises(DimensionMismatchError):
            FrenetData(Euclidean(3), ORIGIN, np.eye(3)[:2], [1.0])

    def test_frame_orthonormal(self):
        frame = np.eye(3)
        frame[1, 0] = 0.1
        with pytest.raises(FrameDegenerationError):
            FrenetData(Euclidean(3), ORIGIN, frame, [1.0])

    def test_too_many_curvatures(self):
        with pytest.raises(DimensionMismatchError):
            FrenetData(Euclidean(3), ORIGIN, np.eye(3), [1.0, 1.0, 1.0])

    def test_frame_tangent(self):
        start = np.array([0.0, 0.0, 1.0])
        with pytest.raises(NotTangentError):
            FrenetData(Sphere(2), start, np.eye(3)[1:], [1.0])

    def test_start_on_model(self):
        with pytest.raises(NotOnModelError):
            FrenetData(Sphere(2), np.array([0.0, 0.0, 2.0]), np.eye(3)[:2], [1.0])

    @pytest.mark.parametrize("length,steps", [(0.0, 10), (1.0, 0)])
    def test_length_and_steps(self, length, steps):
        with pytest.raises(ValueError):
            FrenetData(Euclidean(2), np.zeros(2), np.eye(2), [1.0], length, steps)

    def test_variable_curvature(self):
        data = FrenetData(Euclidean(3), ORIGIN, np.eye(3), [lambda t: 1.0 + t])
        np.testing.assert_allclose(data.kappa(0.5), [1.5, 0.0])


class TestMeanCurvatureApparatus:
    def test_cp2(self):
        result = frenet_integrate(cp2_counterexample_data(length=1.0, steps=512))
        apparatus = mean_curvature_apparatus(result)
        np.testing.assert_allclose(apparatus.H, result.frames[:, 1])
        np.testing.assert_allclose(apparatus.nabla_H, result.frames[:, 2], atol=1e-9)
        assert apparatus.margin == pytest.approx(1.0)
        assert apparatus.subspace(10).dim == 2

    def test_vanishing_curvature(self):
        data = FrenetData(Euclidean(3), ORIGIN, np.eye(3), [0.0, 1.0], length=1.0, steps=16)
        with pytest.raises(BundleRankError):
            mean_curvature_apparatus(frenet_integrate(data))


class TestCounterexample:
    def test_start_frame(self):
        space = ComplexProjective(2)
        start, frame = cp2_frame()
        np.testing.assert_allclose(frame @ frame.T, np.eye(4), atol=1e-15)
        assert abs(frame[1] @ space.complex_structure(start, frame[0])) == pytest.approx(
            1 / np.sqrt(2)
        )

    def test_hypotheses_hold(self, cp2_scenario):
        first_normal, parallel, _ = cp2_scenario.reports
        assert first_normal.residual < 1e-5
        assert parallel.residual < 1e-4

    def test_curvature_invariance_fails(self, cp2_scenario):
        curvature = cp2_scenario.reports[2]
        assert curvature.status is CheckStatus.FAIL
        assert curvature.residual > 0.05

    def test_envelope_is_not_totally_geodesic(self, cp2_scenario):
        env = build_envelope(cp2_scenario.immersion, cp2_scenario.bundle, resolution=3)
        assert env.dim == 3
        report = check_totally_geodesic(env)
        assert report.status is CheckStatus.FAIL
        assert report.residual > 10 * 1e-4

    def test_profile_stays_away_from_zero(self, cp2_scenario):
        profile = invariance_profile(cp2_scenario.result, stride=256)
        assert np.mean(profile > 0.05) > 0.5

    def test_space_form_transplant_passes(self, s4_scenario):
        first_normal, parallel, curvature = s4_scenario.reports
        assert first_normal.residual < 1e-5
        assert parallel.residual < 1e-4
        assert curvature.status is CheckStatus.PASS

    def test_transplant_dimension(self):
        with pytest.raises(DimensionMismatchError):
            space_form_transplant(cp2_counterexample_data(), Sphere(3))

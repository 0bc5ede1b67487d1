import numpy as np
import pytest

from codim.exceptions import EnvelopeRankError, LoopOffEnvelopeError
from codim.model.config import NumericsConfig
from codim.model.report import CheckStatus
from codim.reduction import (
    build_envelope,
    check_dimension,
    check_first_normal_contained,
    check_tangent_preservation,
    check_totally_geodesic,
    default_loops,
    loop_curve,
    sheet_from_envelope,
)
from codim.reduction.tangent import snap

from .conftest import mean_curvature_line, sphere_circle

SMALL_LOOP = np.array(
    [[1.4, -0.05], [1.6, -0.05], [1.6, 0.05], [1.4, 0.05], [1.4, -0.05]]
)


class TestBuildEnvelope:
    def test_shape(self, envelope, circle):
        assert envelope.dim == 2
        assert envelope.epsilon == 0.2
        assert envelope.halvings == 0
        assert envelope.parametrization.domain[1] == pytest.approx((-0.2, 0.2))
        assert len(envelope.grid()) == 25
        assert envelope.zero_section_defect([0.7]) < 1e-12

        u, s = envelope.split([0.7, 0.1])
        assert u.tolist() == [0.7]
        assert s.tolist() == [0.1]

    def test_stays_in_great_sphere(self, envelope):
        for w in envelope.grid():
            x = envelope.parametrization.point(w)
            assert abs(x[3]) < 1e-12
            assert np.linalg.norm(x) == pytest.approx(1.0)

    def test_halves_epsilon(self):
        # The normal geodesics of a small circle meet at the pole after arc length 0.3.
        F = sphere_circle(0.3, n=2)
        env = build_envelope(F, mean_curvature_line(F), epsilon=0.3, resolution=5)
        assert env.halvings == 1
        assert env.epsilon == pytest.approx(0.15)

    def test_shrink_limit(self):
        F = sphere_circle(0.3, n=2)
        config = NumericsConfig(shrink_limit=0)
        with pytest.raises(EnvelopeRankError):
            build_envelope(F, mean_curvature_line(F), epsilon=0.3, config=config)

    def test_needs_domain(self, circle, line_bundle):
        circle.domain = None
        with pytest.raises(ValueError, match="domain"):
            build_envelope(circle, line_bundle)

    def test_logs_failed_hypotheses(self, circle, off_bundle, caplog):
        report = check_first_normal_contained(circle, off_bundle, grid=circle.grid(3))
        assert not report.passed
        build_envelope(circle, off_bundle, hypotheses=[report])
        assert "did not pass" in caplog.text


class TestTotallyGeodesic:
    def test_great_sphere_piece(self, envelope):
        report = check_totally_geodesic(envelope)
        assert report.status is CheckStatus.PASS
        assert report.details == {"epsilon": 0.2, "dim": 2, "halvings": 0}
        assert len(report.trace) == 25

    def test_cylinder_over_circle(self, circle, off_bundle):
        env = build_envelope(circle, off_bundle, epsilon=0.2, resolution=3)
        report = check_totally_geodesic(env)
        # At least the geodesic curvature cot(1) of the circle itself.
        assert report.residual > 0.6
        assert report.status is CheckStatus.FAIL

    def test_seeded(self, envelope):
        first = check_totally_geodesic(envelope, seed=3)
        second = check_totally_geodesic(envelope, seed=3)
        assert first.residual == second.residual
        assert first.location == second.location


def test_dimension(envelope):
    report = check_dimension(envelope)
    assert report.residual == 0.0
    assert report.passed
    assert report.details == {"expected_rank": 2}


class TestLoops:
    def test_default_loops(self, envelope):
        loops = default_loops(envelope, count=3)
        assert len(loops) == 3
        lo, hi = np.array(envelope.parametrization.domain).T
        for corners in loops:
            assert corners.shape == (5, 2)
            np.testing.assert_array_equal(corners[0], corners[-1])
            assert np.all(corners >= lo) and np.all(corners <= hi)

        sizes = [np.ptp(corners[:, 0]) for corners in loops]
        assert sizes == sorted(sizes)

    def test_snap(self, envelope):
        np.testing.assert_allclose(snap(envelope, [3.0 + 1e-9, 0.0]), [3.0, 0.0])
        with pytest.raises(LoopOffEnvelopeError):
            snap(envelope, [1.5, 0.5])

    def test_loop_curve(self, envelope):
        curve = loop_curve(envelope, SMALL_LOOP, samples_per_side=4)
        assert len(curve.samples) == 17
        np.testing.assert_allclose(curve.samples[0], curve.samples[-1], atol=1e-14)
        np.testing.assert_allclose(
            curve.samples[4], envelope.parametrization.point(SMALL_LOOP[1]), atol=1e-14
        )

    def test_loop_needs_two_corners(self, envelope):
        with pytest.raises(LoopOffEnvelopeError):
            loop_curve(envelope, [[1.5, 0.0]])


class TestTangentPreservation:
    def test_closed_loop(self, envelope):
        report = check_tangent_preservation(envelope, loops=[SMALL_LOOP], samples_per_side=4)
        assert report.status is CheckStatus.PASS
        assert report.details == {"loops": 1}
        assert report.location.startswith("loop 0")

    def test_open_path(self, envelope):
        path = np.array([[1.0, 0.0], [2.0, 0.1]])
        report = check_tangent_preservation(envelope, loops=[path], samples_per_side=8)
        assert report.passed

    def test_cylinder_leaks(self, circle, off_bundle):
        env = build_envelope(circle, off_bundle, epsilon=0.2, resolution=3)
        # The circle tangent turns by cos(1) radians against parallel transport.
        path = np.array([[1.0, 0.0], [2.0, 0.0]])
        report = check_tangent_preservation(env, loops=[path], samples_per_side=8)
        assert 0.4 < report.residual < np.sin(np.cos(1.0)) + 1e-3
        assert report.status is CheckStatus.FAIL

    @pytest.mark.slow
    def test_default_loops(self, envelope):
        report = check_tangent_preservation(envelope, samples_per_side=8)
        assert report.details == {"loops": 10}
        assert report.passed


def test_sheet_from_envelope(envelope, circle):
    sheet = sheet_from_envelope(envelope, num_s=16, num_t=16)
    np.testing.assert_allclose(sheet.base, circle.point([1.5]), atol=1e-12)
    assert sheet.breakpoints == (0.5,)
    for s in (0.0, 0.3, 0.8):
        end = sheet.point(s, 1.0)
        assert np.linalg.norm(end) == pytest.approx(1.0)
        assert abs(end[3]) < 1e-12
        np.testing.assert_allclose(sheet.point(s, 0.0), sheet.base, atol=1e-12)

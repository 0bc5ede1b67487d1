import numpy as np
import pytest

from codim.ambient import ComplexProjective, Euclidean, Sphere
from codim.catalog import builtin_scenario, resolve
from codim.exceptions import BasePointMismatchError, NotOnModelError
from codim.model.report import CheckStatus
from codim.reduction import (
    HomotopySheet,
    build_envelope,
    holonomy_derivative_integral,
    holonomy_direct,
    holonomy_fd,
    holonomy_integral_matrix,
    random_smooth_sheet,
    sheet_from_envelope,
    verify_holonomy_lemma,
)
from codim.reduction.holonomy import orthogonality_defect

NORTH = np.array([0.0, 0.0, 1.0])
E1 = np.array([1.0, 0.0, 0.0])
E2 = np.array([0.0, 1.0, 0.0])


@pytest.fixture
def flat_sheet():
    return random_smooth_sheet(Euclidean(2), p=np.zeros(2), seed=1, num_s=16, num_t=16)


@pytest.fixture
def sphere_sheet():
    return random_smooth_sheet(Sphere(2), p=NORTH, seed=2, num_s=16, num_t=16)


class TestHomotopySheet:
    def test_random_sheet(self, sphere_sheet):
        assert sphere_sheet.name == "random(seed=2)"
        np.testing.assert_allclose(sphere_sheet.point(0.6, 0.0), NORTH, atol=1e-14)
        assert np.linalg.norm(sphere_sheet.point(0.6, 1.0)) == pytest.approx(1.0)
        assert sphere_sheet.s_step == pytest.approx(1 / 16)

    def test_base_point_mismatch(self):
        space = Sphere(2)
        with pytest.raises(BasePointMismatchError):
            HomotopySheet(space, NORTH, lambda s, t: space.exp(NORTH, 0.3 * (s + t) * E1))

    def test_base_off_model(self):
        with pytest.raises(NotOnModelError):
            HomotopySheet(Sphere(2), 2 * NORTH, lambda s, t: 2 * NORTH)

    def test_curve_with_corner(self):
        space = Sphere(2)

        def fn(s, t):
            v = t * E1 if t <= 0.5 else 0.5 * E1 + (t - 0.5) * (1 + s) * E2
            return space.exp(NORTH, 0.3 * v)

        sheet = HomotopySheet(space, NORTH, fn, breakpoints=(0.5,), num_s=8, num_t=8)
        curve = sheet.curve_t(0.5)
        assert 0.5 in curve.times
        assert len(curve.pieces) == 2


class TestHolonomy:
    def test_identity_at_start(self, sphere_sheet):
        np.testing.assert_array_equal(holonomy_direct(sphere_sheet, 0.0), np.eye(2))

    def test_orthogonal(self, sphere_sheet):
        tau = holonomy_direct(sphere_sheet, 0.5)
        assert tau.shape == (2, 2)
        assert orthogonality_defect(tau) < 1e-8

    def test_flat_space(self, flat_sheet):
        np.testing.assert_allclose(holonomy_direct(flat_sheet, 0.5), np.eye(2), atol=1e-12)
        np.testing.assert_allclose(holonomy_integral_matrix(flat_sheet, 0.5), 0.0, atol=1e-12)
        assert holonomy_derivative_integral(flat_sheet, 0.5, [1.0, 0.0], [0.0, 1.0]) == 0.0

    @pytest.mark.parametrize("s", [0.0, 1.0, 0.01])
    def test_fd_needs_a_cell(self, flat_sheet, s):
        with pytest.raises(ValueError, match="closer than one cell"):
            holonomy_fd(flat_sheet, s)

    def test_integral_is_skew(self, sphere_sheet):
        A = holonomy_integral_matrix(sphere_sheet, 0.5)
        np.testing.assert_allclose(A, -A.T, atol=1e-8)


class TestLemma:
    def test_flat_space(self, flat_sheet):
        report = verify_holonomy_lemma(flat_sheet)
        assert report.status is CheckStatus.PASS
        assert report.residual < 1e-10
        assert report.details["sheet"] == "random(seed=1)"
        assert len(report.trace) == 3

    def test_clamps_samples(self, flat_sheet):
        report = verify_holonomy_lemma(flat_sheet, s_samples=(0.0, 1.0))
        assert [s for s, _ in report.trace] == [pytest.approx(1 / 16), pytest.approx(15 / 16)]

    @pytest.mark.slow
    def test_sphere(self):
        sheet = random_smooth_sheet(Sphere(2), p=NORTH, seed=2, num_s=32, num_t=32)
        report = verify_holonomy_lemma(sheet)
        assert report.status is CheckStatus.PASS
        assert report.details["orthogonality_defect"] < 1e-8


@pytest.mark.slow
class TestLemmaAtFullResolution:
    """
    ``64 x 64`` sheets in curved symmetric spaces.
    """

    @pytest.mark.parametrize("space", [Sphere(3), ComplexProjective(2)], ids=["s3", "cp2"])
    @pytest.mark.parametrize("seed", [0, 1, 2])
    def test_random_sheet(self, space, seed):
        sheet = random_smooth_sheet(space, seed=seed)
        assert (sheet.num_s, sheet.num_t) == (64, 64)
        report = verify_holonomy_lemma(sheet)
        assert report.status is CheckStatus.PASS
        assert report.residual < 1e-4
        assert report.details["skew_integral"] < 1e-5
        assert report.details["skew_fd"] < 1e-5

    @pytest.mark.parametrize("name", ["sphere_circle_in_s3", "cp1_circle_in_cp2"])
    def test_envelope_sweep(self, name):
        scenario = builtin_scenario(name)
        geometry = resolve(scenario)
        env = build_envelope(geometry.immersion, geometry.bundle, epsilon=0.2, resolution=5)
        sheet = sheet_from_envelope(env)
        assert sheet.breakpoints == (0.5,)
        report = verify_holonomy_lemma(sheet)
        assert report.status is CheckStatus.PASS
        assert report.residual < 1e-4
        assert report.details["skew_integral"] < 1e-5
        assert report.details["skew_fd"] < 1e-5

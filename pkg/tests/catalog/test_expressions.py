import numpy as np
import pytest
import sympy as sp

from codim.ambient import Sphere
from codim.exceptions import ScenarioError
from codim.expressions import ExpressionMap, expression_frame, expression_immersion, parse

U, V = 0.3, 2.0


@pytest.fixture
def expression_map():
    return ExpressionMap(["cos(u)*v", "u**2"], ["u", "v"])


def test_value(expression_map):
    assert expression_map.size == 2
    np.testing.assert_allclose(expression_map(np.array([U, V])), [np.cos(U) * V, U**2])


def test_jacobian(expression_map):
    jacobian = expression_map.jacobian(np.array([U, V]))
    np.testing.assert_allclose(jacobian, [[-np.sin(U) * V, 2 * U], [np.cos(U), 0.0]])


def test_hessian(expression_map):
    hessian = expression_map.hessian(np.array([U, V]))
    assert hessian.shape == (2, 2, 2)
    np.testing.assert_allclose(hessian[0, 0], [-np.cos(U) * V, 2.0])
    np.testing.assert_allclose(hessian[0, 1], [-np.sin(U), 0.0])
    np.testing.assert_array_equal(hessian[0, 1], hessian[1, 0])
    np.testing.assert_array_equal(hessian[1, 1], [0.0, 0.0])


class TestParse:
    def test_constants(self):
        expr = parse("a*u + pi", ["u"], {"a": 2.0})
        assert float(expr.subs(sp.Symbol("u", real=True), 1.0)) == pytest.approx(2.0 + np.pi)

    @pytest.mark.parametrize("text", ["sqrt(u)", "exp(-u)", "sinh(u)*cosh(u)", "u**3/7"])
    def test_allowed(self, text):
        parse(text, ["u"])

    def test_unknown_name(self):
        with pytest.raises(ScenarioError, match="unknown names: w"):
            parse("u + w", ["u"])

    @pytest.mark.parametrize("text", ["log(u)", "tan(u)", "gamma(u)"])
    def test_disallowed_function(self, text):
        with pytest.raises(ScenarioError, match="is not allowed"):
            parse(text, ["u"])

    def test_syntax_error(self):
        with pytest.raises(ScenarioError, match="Cannot parse"):
            parse("u +* 1", ["u"])


class TestImmersion:
    def test_point_and_derivatives(self):
        F = expression_immersion(Sphere(2), ["u"], ["cos(u)", "sin(u)", "0"], [(0.0, 1.0)])
        np.testing.assert_allclose(F.point([0.5]), [np.cos(0.5), np.sin(0.5), 0.0])
        np.testing.assert_allclose(F.differential([0.5])[0], [-np.sin(0.5), np.cos(0.5), 0.0])
        assert F.name == "expression"

    def test_coordinate_count(self):
        with pytest.raises(ScenarioError, match="needs 3 coordinate expressions, got 2"):
            expression_immersion(Sphere(2), ["u"], ["cos(u)", "sin(u)"], [(0.0, 1.0)])

    def test_frame(self):
        frame = expression_frame(Sphere(2), ["u"], [["0", "0", "u"], ["1", "0", "0"]])
        np.testing.assert_allclose(frame(np.array([0.5])), [[0.0, 0.0, 0.5], [1.0, 0.0, 0.0]])

    def test_frame_row_size(self):
        with pytest.raises(ScenarioError, match="Frame vector needs 3"):
            expression_frame(Sphere(2), ["u"], [["0", "1"]])

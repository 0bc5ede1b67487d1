"""Immersions and normal frames written as coordinate expressions.

Expressions use the four arithmetic operations, powers, ``sin``, ``cos``, ``sinh``,
``cosh``, ``exp`` and ``sqrt`` of the parameters and of named constants. They are
parsed with ``sympy``; jacobians and hessians are differentiated symbolically and
compiled with ``lambdify``.
"""

from collections.abc import Mapping, Sequence

import numpy as np
import sympy as sp
from sympy.parsing.sympy_parser import parse_expr

from codim.ambient.base import SpaceModel
from codim.exceptions import ScenarioError
from codim.submanifold.immersion import Immersion

ALLOWED_FUNCTIONS = {
    "sin": sp.sin,
    "cos": sp.cos,
    "sinh": sp.sinh,
    "cosh": sp.cosh,
    "exp": sp.exp,
    "sqrt": sp.sqrt,
}


def parse(
    text: str,
    params: Sequence[str],
    constants: Mapping[str, float] | None = None,
) -> sp.Expr:
    """
    Parse one coordinate expression in the parameter symbols.

    Raises:
        :class:`~codim.exceptions.ScenarioError`: Syntax errors, unknown names or functions
          outside :data:`ALLOWED_FUNCTIONS`.
    """
    symbols = {name: sp.Symbol(name, real=True) for name in params}
    namespace = {**ALLOWED_FUNCTIONS, "pi": sp.pi, **symbols}
    for name, value in (constants or {}).items():
        namespace[name] = sp.Float(value)

    try:
        expr = parse_expr(str(text), local_dict=namespace, evaluate=True)
    except Exception as err:
        raise ScenarioError(f"Cannot parse expression '{text}': {err}") from err

    if not isinstance(expr, sp.Expr):
        raise ScenarioError(f"Expression '{text}' is not arithmetic.")

    unknown = {str(s) for s in expr.free_symbols} - set(params)
    if unknown:
        raise ScenarioError(f"Expression '{text}' uses unknown names: {', '.join(sorted(unknown))}")

    allowed = tuple(type(f(sp.Symbol("x"))) for f in ALLOWED_FUNCTIONS.values())
    for function in expr.atoms(sp.Function):
        if not isinstance(function, allowed):
            raise ScenarioError(f"Function '{function.func}' is not allowed in '{text}'.")

    return expr


class ExpressionMap:
    """
    A vector of expressions in ``m`` parameters with compiled derivatives.
    """

    def __init__(
        self,
        expressions: Sequence[str],
        params: Sequence[str],
        constants: Mapping[str, float] | None = None,
    ):
        self.params = list(params)
        self.symbols = [sp.Symbol(name, real=True) for name in self.params]
        self.vector = sp.Matrix([parse(text, self.params, constants) for text in expressions])
        self.jacobian_matrix = self.vector.jacobian(self.symbols).T
        self._fn = sp.lambdify(self.symbols, self.vector, "numpy")
        self._jac = sp.lambdify(self.symbols, self.jacobian_matrix, "numpy")
        self._hess = [
            [sp.lambdify(self.symbols, self.vector.diff(a, b), "numpy") for b in self.symbols]
            for a in self.symbols
        ]

    @property
    def size(self) -> int:
        return self.vector.shape[0]

    def __call__(self, u: np.ndarray) -> np.ndarray:
        return np.asarray(self._fn(*u), dtype=float).reshape(self.size)

    def jacobian(self, u: np.ndarray) -> np.ndarray:
        return np.asarray(self._jac(*u), dtype=float).reshape(len(self.symbols), self.size)

    def hessian(self, u: np.ndarray) -> np.ndarray:
        m = len(self.symbols)
        result = np.zeros((m, m, self.size))
        for i in range(m):
            for j in range(m):
                result[i, j] = np.asarray(self._hess[i][j](*u), dtype=float).reshape(self.size)

        return result


def expression_immersion(
    space: SpaceModel,
    params: Sequence[str],
    coordinates: Sequence[str],
    domain: Sequence[tuple[float, float]],
    constants: Mapping[str, float] | None = None,
    name: str = "",
) -> Immersion:
    """
    An immersion with analytic derivatives from chart coordinate expressions.
    """
    if len(coordinates) != space.chart_dim:
        raise ScenarioError(
            f"Immersion needs {space.chart_dim} coordinate expressions, got {len(coordinates)}."
        )

    expressions = ExpressionMap(coordinates, params, constants)
    return Immersion(
        space,
        len(params),
        expressions,
        jacobian=expressions.jacobian,
        hessian=expressions.hessian,
        domain=domain,
        name=name or "expression",
    )


def expression_frame(
    space: SpaceModel,
    params: Sequence[str],
    rows: Sequence[Sequence[str]],
    constants: Mapping[str, float] | None = None,
):
    """
    A bundle frame: one list of chart expressions per spanning vector.
    """
    maps = []
    for row in rows:
        if len(row) != space.chart_dim:
            raise ScenarioError(
                f"Frame vector needs {space.chart_dim} expressions, got {len(row)}."
            )
        maps.append(ExpressionMap(row, params, constants))

    def frame(u: np.ndarray) -> np.ndarray:
        return np.array([m(u) for m in maps]).reshape(len(maps), space.chart_dim)

    return frame

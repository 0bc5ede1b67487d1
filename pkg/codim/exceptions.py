"""Structured exception hierarchy for geometry checks and scenario runs.

Every error raised by ``codim`` derives from :class:`BaseCodimException` so
callers can catch the whole family at once. Errors that carry context (a
location in parameter space, a residual, a line number) expose it as
attributes instead of forcing callers to parse the message.
"""


class BaseCodimException(Exception):
    """
    Base exception class.
    """


class DimensionMismatchError(BaseCodimException, ValueError):
    """
    Raised when vectors or subspaces of different ambient dimension are combined.
    """

    def __init__(self, expected: int, received: int, context: str | None = None):
        self.expected = expected
        self.received = received
        message = f"Dimension mismatch: expected {expected}, received {received}"
        if context is not None:
            message = f"{message}. Context: {context}"

        super().__init__(message)


class NonFiniteError(BaseCodimException, ArithmeticError):
    """
    Raised when a public operation would return NaN or Inf entries.
    """


class ModelKindError(BaseCodimException, TypeError):
    """
    Raised when an operation is not defined for the given space model.
    """


class NotOnModelError(BaseCodimException, ValueError):
    """
    A point violates its model constraint (sphere radius, hyperboloid sheet, unit representative).
    """

    def __init__(self, model: str, defect: float):
        self.model = model
        self.defect = defect
        super().__init__(f"Point is not on {model} (constraint defect {defect:.3e}).")


class NotTangentError(BaseCodimException, ValueError):
    """
    A vector violates the tangency constraint at its base point.
    """

    def __init__(self, model: str, defect: float):
        self.model = model
        self.defect = defect
        super().__init__(f"Vector is not tangent to {model} (tangency defect {defect:.3e}).")


class BasePointMismatchError(BaseCodimException, ValueError):
    """
    Tangent vectors based at different points were combined.
    """


class CurveTooCoarseError(BaseCodimException, ValueError):
    """
    Consecutive curve samples are further apart than the model's maximum step.
    """

    def __init__(self, index: int, step: float, max_step: float):
        self.index = index
        self.step = step
        self.max_step = max_step
        super().__init__(
            f"Curve step {step:.3e} between samples {index} and {index + 1} "
            f"exceeds max step {max_step:.3e}."
        )


class RankDeficiencyError(BaseCodimException, ValueError):
    """
    The differential of a parametrization lost rank (immersion violated).
    """

    def __init__(self, expected: int, received: int, location=None):
        self.expected = expected
        self.received = received
        self.location = location
        message = f"Rank deficiency: expected rank {expected}, found {received}"
        if location is not None:
            message = f"{message} at {location}"

        super().__init__(message)


class FiniteDifferenceError(BaseCodimException, ValueError):
    """
    Finite-difference step underflows or produces meaningless differences.
    """


class FrameDiscontinuityError(BaseCodimException, ValueError):
    """
    Consecutive frames along a sampled curve jump by more than the allowed principal angle.
    """

    def __init__(self, index: int, residual: float, threshold: float):
        self.index = index
        self.residual = residual
        self.threshold = threshold
        super().__init__(
            f"Frame discontinuity between samples {index} and {index + 1}: "
            f"residual {residual:.3e} exceeds {threshold:.3e}."
        )


class FrameDegenerationError(BaseCodimException, ArithmeticError):
    """
    An integrated frame lost orthonormality beyond the abort threshold.
    """

    def __init__(self, step: int, defect: float):
        self.step = step
        self.defect = defect
        super().__init__(f"Frame degenerated at step {step} (orthonormality defect {defect:.3e}).")


class BundleRankError(BaseCodimException, ValueError):
    """
    A normal subbundle frame is not of full rank or not normal to the immersion.
    """


class EnvelopeRankError(BaseCodimException, ValueError):
    """
    The envelope sampling map stays rank deficient after the shrink limit.
    """

    def __init__(self, epsilon: float, attempts: int):
        self.epsilon = epsilon
        self.attempts = attempts
        super().__init__(
            f"Envelope differential is rank deficient after {attempts} halvings "
            f"(final epsilon {epsilon:.3e})."
        )


class LoopOffEnvelopeError(BaseCodimException, ValueError):
    """
    A loop leaves the sampled envelope domain beyond the snap tolerance.
    """


class QuadratureRefinementError(BaseCodimException, ArithmeticError):
    """
    Coarse and fine quadratures disagree, usually because a breakpoint was not declared.
    """

    def __init__(self, fine: float, coarse: float, threshold: float):
        self.fine = fine
        self.coarse = coarse
        self.threshold = threshold
        super().__init__(
            f"Quadrature refinement disagreement |{fine:.6e} - {coarse:.6e}| exceeds "
            f"{threshold:.1e}; check the declared breakpoints."
        )


class CatalogError(BaseCodimException, KeyError):
    """
    A name does not resolve against the built-in catalog.
    """

    def __init__(self, kind: str, name: str, available: list[str]):
        self.kind = kind
        self.name = name
        self.available = sorted(available)
        super().__init__(
            f"Unknown {kind} '{name}'. Available: {', '.join(self.available) or '(none)'}"
        )

    def __str__(self) -> str:
        # KeyError would quote the message.
        return str(self.args[0])


class ScenarioError(BaseCodimException, ValueError):
    """
    A scenario file does not parse or does not validate.
    """

    def __init__(self, message: str, line: int | None = None, path: str | None = None):
        self.line = line
        self.path = path
        prefix = path or "<scenario>"
        if line is not None:
            prefix = f"{prefix}:{line}"

        super().__init__(f"{prefix}: {message}")

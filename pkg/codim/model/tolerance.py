from pydantic import BaseModel, ConfigDict, Field, field_validator

from codim.constants import DEFAULT_ABS_TOL, DEFAULT_RANK_REL


class Tolerance(BaseModel):
    """
    Residual and rank thresholds for linear algebra on tangent spaces.
    """

    model_config = ConfigDict(frozen=True)

    abs: float = DEFAULT_ABS_TOL
    """
    Absolute residual bound.
    """

    rank_rel: float = DEFAULT_RANK_REL
    """
    Relative singular-value cutoff used by rank-revealing orthonormalization.
    """

    floor: float = Field(default=0.0, ge=0.0)
    """
    Absolute norm below which a vector counts as zero. Finite-difference data
    sets this to its accuracy tier so that pure noise is not promoted to a direction.
    """

    @field_validator("abs")
    @classmethod
    def _validate_abs(cls, value: float) -> float:
        if not value > 0:
            raise ValueError("abs must be > 0")

        return value

    @field_validator("rank_rel")
    @classmethod
    def _validate_rank_rel(cls, value: float) -> float:
        if not 0 < value < 1:
            raise ValueError("rank_rel must lie in (0, 1)")

        return value

    def scaled(self, factor: float) -> "Tolerance":
        return self.model_copy(update={"abs": self.abs * factor, "floor": self.floor * factor})


DEFAULT_TOLERANCE = Tolerance()

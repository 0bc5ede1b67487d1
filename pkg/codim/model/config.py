import os

from pydantic import BaseModel, ConfigDict, Field

from codim.constants import (
    DEFAULT_ABS_TOL,
    DEFAULT_FD_STEP,
    DEFAULT_FD_STEP2,
    DEFAULT_MAX_STEP,
    DEFAULT_ODE_TOL,
    DEFAULT_RANK_REL,
    DEFAULT_SNAP_TOL,
    DEFAULT_STEPS_PER_UNIT,
    FAIL_FACTOR,
    FRAME_JUMP,
    SHRINK_LIMIT,
)
from codim.model.tolerance import Tolerance

TOL_SCALE_ENV_VAR = "CODIM_TOL_SCALE"


class NumericsConfig(BaseModel):
    """
    Validated numerical settings shared by every check.
    """

    model_config = ConfigDict(frozen=True)

    abs_tol: float = Field(default=DEFAULT_ABS_TOL, gt=0)
    """
    Absolute tolerance for closed-form algebra.
    """

    rank_rel: float = Field(default=DEFAULT_RANK_REL, gt=0, lt=1)
    """
    Relative rank cutoff.
    """

    fd_step: float = Field(default=DEFAULT_FD_STEP, gt=0)
    """
    Central-difference step for first derivatives.
    """

    fd_step2: float = Field(default=DEFAULT_FD_STEP2, gt=0)
    """
    Step for second derivatives.
    """

    steps_per_unit: int = Field(default=DEFAULT_STEPS_PER_UNIT, ge=8)
    """
    RK4 steps per unit arc length.
    """

    max_step: float = Field(default=DEFAULT_MAX_STEP, gt=0)
    """
    Max gap between samples of a sample-only curve (times model scale).
    """

    ode_tol: float = Field(default=DEFAULT_ODE_TOL, gt=0)
    """
    Accuracy tier of integrated quantities.
    """

    fail_factor: float = Field(default=FAIL_FACTOR, gt=1)
    """
    Residual/tolerance ratio above which a check fails instead of being inconclusive.
    """

    snap_tol: float = Field(default=DEFAULT_SNAP_TOL, gt=0)
    """
    Overshoot allowed for loop parameters outside an envelope.
    """

    shrink_limit: int = Field(default=SHRINK_LIMIT, ge=0)
    """
    Max epsilon halvings in envelope construction.
    """

    frame_jump: float = Field(default=FRAME_JUMP, gt=0, le=1)
    """
    Subspace residual between consecutive frames that counts as a discontinuity.
    """

    tol_scale: float = Field(default=1.0, gt=0)
    """
    Multiplier applied to every check tolerance.
    """

    @classmethod
    def from_env(cls, **kwargs) -> "NumericsConfig":
        if TOL_SCALE_ENV_VAR in os.environ and "tol_scale" not in kwargs:
            kwargs["tol_scale"] = float(os.environ[TOL_SCALE_ENV_VAR])

        return cls(**kwargs)

    def scaled(self, factor: float) -> "NumericsConfig":
        return self.model_copy(update={"tol_scale": self.tol_scale * factor})

    @property
    def tolerance(self) -> Tolerance:
        return Tolerance(abs=self.abs_tol, rank_rel=self.rank_rel)

    def check_tol(self, base: float) -> float:
        """
        A check tolerance with the configured scale applied.
        """
        return base * self.tol_scale


DEFAULT_CONFIG = NumericsConfig()

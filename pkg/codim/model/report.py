from enum import Enum
from typing import Any, Literal

from pydantic import BaseModel, ConfigDict, Field, field_serializer

from codim.constants import SCHEMA_VERSION


class CheckStatus(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    INCONCLUSIVE = "inconclusive"

    @classmethod
    def _missing_(cls, value: object) -> Any:
        if isinstance(value, str):
            return cls.__members__.get(value.upper())

        return super()._missing_(value)


Expectation = Literal["pass", "fail"]


class CheckReport(BaseModel):
    """
    Outcome of one numerical check: the worst residual against its tolerance.
    """

    model_config = ConfigDict(populate_by_name=True)

    name: str
    residual: float
    """
    Worst residual over all sampled locations.
    """

    tol: float
    """
    Tolerance the residual was compared against (after scaling).
    """

    passed: bool = Field(alias="pass")
    """
    ``residual < tol``.
    """

    status: CheckStatus
    """
    PASS, FAIL (residual above ``fail_factor * tol``) or INCONCLUSIVE in between.
    """

    expected: Expectation | None = None
    location: str | None = None
    """
    Where the worst residual occurred.
    """

    details: dict[str, float | int | str | bool] = {}
    trace: list[tuple[float, float]] = Field(default=[], exclude=True)
    """
    ``(sample, residual)`` pairs along the sampled curve or grid, for CSV traces.
    """

    @field_serializer("residual", "tol")
    def serialize_float(self, value: float, _info):
        # JSON has no Infinity; keep reports parseable.
        return value if value == value and abs(value) != float("inf") else str(value)

    @property
    def meets_expectation(self) -> bool:
        if self.expected is None or self.expected == "pass":
            return self.passed

        return self.status is CheckStatus.FAIL

    def with_expectation(self, expected: Expectation | None) -> "CheckReport":
        return self.model_copy(update={"expected": expected})


class Verdict(str, Enum):
    OK = "ok"
    MISMATCH = "mismatch"


class RunReport(BaseModel):
    """
    Machine-readable result of a scenario run.
    """

    schema_version: int = SCHEMA_VERSION
    scenario: dict[str, Any]
    """
    Echo of the parsed scenario.
    """

    checks: list[CheckReport] = []
    verdict: Verdict = Verdict.OK
    seed: int
    runtime_ms: float = 0.0
    version: str = ""

    @classmethod
    def from_checks(
        cls, scenario: dict[str, Any], checks: list[CheckReport], seed: int, **kwargs
    ) -> "RunReport":
        ok = all(check.meets_expectation for check in checks)
        return cls(
            scenario=scenario,
            checks=checks,
            verdict=Verdict.OK if ok else Verdict.MISMATCH,
            seed=seed,
            **kwargs,
        )

    @property
    def exit_code(self) -> int:
        return 0 if self.verdict is Verdict.OK else 1

    def to_json(self, deterministic: bool = False) -> str:
        """
        Serialize with ``pass`` as the key of the per-check flag. ``deterministic``
        drops wall time so that repeated runs compare equal.
        """
        exclude = {"runtime_ms"} if deterministic else None
        return self.model_dump_json(by_alias=True, exclude=exclude, indent=2)

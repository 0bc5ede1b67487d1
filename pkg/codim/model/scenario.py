import re
import tomllib
from enum import Enum
from pathlib import Path
from typing import Any, Literal

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from codim.exceptions import ScenarioError
from codim.model.report import Expectation

CheckName = Literal[
    "first_normal_contained",
    "parallel_subbundle",
    "curvature_invariant",
    "totally_geodesic",
    "dimension",
    "tangent_preservation",
    "jacobi_containment",
    "holonomy_lemma",
    "space_form_redundancy",
]

OptionValue = float | int | str | bool | list[float] | list[list[float]]


class SpaceKind(str, Enum):
    EUCLIDEAN = "euclidean"
    SPHERE = "sphere"
    HYPERBOLIC = "hyperbolic"
    COMPLEX_PROJECTIVE = "complex_projective"
    PRODUCT = "product"

    @classmethod
    def _missing_(cls, value: object) -> Any:
        if isinstance(value, str):
            return cls.__members__.get(value.upper().replace("-", "_"))

        return super()._missing_(value)


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid")


class SpaceSpec(_Strict):
    kind: SpaceKind
    dim: int = Field(default=0, ge=0)
    """
    Real dimension for real space forms, complex dimension for ``complex_projective``.
    """

    radius: float = Field(default=1.0, gt=0)
    c: float = Field(default=4.0, gt=0)
    """
    Holomorphic sectional curvature of ``complex_projective``.
    """

    factors: list["SpaceSpec"] = []

    @model_validator(mode="after")
    def check_shape(self) -> "SpaceSpec":
        if self.kind is SpaceKind.PRODUCT:
            if len(self.factors) < 2:
                raise ValueError("A product space needs at least two factors.")
        elif self.factors:
            raise ValueError(f"Only product spaces take factors, not '{self.kind.value}'.")
        elif self.dim < 1:
            raise ValueError(f"Space '{self.kind.value}' needs dim >= 1.")

        return self


class ImmersionSpec(_Strict):
    """
    Either a catalog entry with options or chart coordinate expressions.
    """

    catalog: str | None = None
    options: dict[str, OptionValue] = {}
    params: list[str] = []
    coordinates: list[str] = []
    domain: list[tuple[float, float]] = []
    constants: dict[str, float] = {}

    @model_validator(mode="after")
    def check_source(self) -> "ImmersionSpec":
        if (self.catalog is None) == (not self.coordinates):
            raise ValueError("Give exactly one of 'catalog' or 'coordinates'.")

        if self.coordinates and len(self.domain) != len(self.params):
            raise ValueError(
                f"'domain' has {len(self.domain)} intervals for {len(self.params)} params."
            )

        for a, b in self.domain:
            if not a < b:
                raise ValueError(f"Empty domain interval [{a}, {b}].")

        return self


class BundleSpec(_Strict):
    """
    A catalog bundle (``full`` by default) or spanning frame expressions in the
    immersion parameters.
    """

    catalog: str | None = None
    options: dict[str, OptionValue] = {}
    frame: list[list[str]] = []
    constants: dict[str, float] = {}
    """
    Merged over the immersion constants.
    """

    @model_validator(mode="after")
    def check_source(self) -> "BundleSpec":
        if self.catalog is not None and self.frame:
            raise ValueError("Give at most one of 'catalog' or 'frame'.")

        if self.catalog is None and not self.frame:
            self.catalog = "full"

        return self


class CheckSpec(_Strict):
    name: CheckName
    expect: Expectation | None = None
    tol: float | None = Field(default=None, gt=0)
    """
    Unscaled tolerance replacing the built-in one.
    """

    options: dict[str, OptionValue] = {}


class GridSpec(_Strict):
    resolution: int = Field(default=9, ge=2)
    """
    Nodes per parameter direction for the hypothesis checks.
    """

    envelope_resolution: int = Field(default=5, ge=2)
    epsilon: float = Field(default=0.2, gt=0)
    """
    Initial radius of the sampled envelope ``exp⊥(V₀)``.
    """

    loops: int = Field(default=10, ge=1)
    samples_per_side: int = Field(default=16, ge=4)
    sheet_samples: int = Field(default=64, ge=8)


class Scenario(_Strict):
    """
    A parsed scenario file.
    """

    name: str
    description: str = ""
    seed: int = 0
    tol_scale: float = Field(default=1.0, gt=0)
    space: SpaceSpec
    immersion: ImmersionSpec
    bundle: BundleSpec = BundleSpec()
    grid: GridSpec = GridSpec()
    checks: list[CheckSpec] = Field(min_length=1)


_LINE_PATTERN = re.compile(r"line (\d+)")


def _locate(text: str, loc: tuple) -> int | None:
    """
    Best-effort line of the key a validation error points at.
    """
    keys = [str(part) for part in loc if isinstance(part, str)]
    lines = text.splitlines()
    for key in reversed(keys):
        pattern = re.compile(rf"^\s*(\[+\s*)?([\w.]*\.)?{re.escape(key)}\s*(=|\]|\.)")
        for number, line in enumerate(lines, start=1):
            if pattern.match(line):
                return number

    return None


def parse_scenario(text: str, path: str | None = None) -> Scenario:
    """
    Parse and validate TOML scenario text.

    Raises:
        :class:`~codim.exceptions.ScenarioError`: With the line number of the offending
          entry when it can be determined.
    """
    try:
        data = tomllib.loads(text)
    except tomllib.TOMLDecodeError as err:
        match = _LINE_PATTERN.search(str(err))
        line = int(match.group(1)) if match else None
        raise ScenarioError(f"Invalid TOML: {err}", line=line, path=path) from err

    try:
        return Scenario.model_validate(data)
    except ValidationError as err:
        first = err.errors()[0]
        where = ".".join(str(part) for part in first["loc"]) or "<root>"
        raise ScenarioError(
            f"{where}: {first['msg']}", line=_locate(text, first["loc"]), path=path
        ) from err


def load_scenario(path: Path | str) -> Scenario:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as err:
        raise ScenarioError(f"Cannot read scenario: {err.strerror}", path=str(path)) from err

    return parse_scenario(text, path=str(path))

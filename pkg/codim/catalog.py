"""Built-in spaces, immersions, bundles and bundled scenarios.

Catalog curves are parametrized by ``u``; frame expressions in scenario files refer
to it by that name. Scenario files live in ``codim/scenarios`` and are listed by
file stem.
"""

import logging
from collections.abc import Callable, Mapping
from dataclasses import dataclass
from functools import cache
from importlib import resources
from typing import Any

import numpy as np

from codim.ambient import ComplexProjective, Euclidean, Hyperbolic, Product, SpaceModel, Sphere
from codim.exceptions import CatalogError, ScenarioError
from codim.expressions import expression_frame, expression_immersion
from codim.frenet import (
    FrenetData,
    FrenetResult,
    cp2_frame,
    frenet_integrate,
    mean_curvature_bundle,
)
from codim.model.config import DEFAULT_CONFIG, NumericsConfig
from codim.model.scenario import Scenario, SpaceKind, SpaceSpec, parse_scenario
from codim.submanifold import Immersion, NormalSubbundle, mean_curvature

logger = logging.getLogger(__name__)

Options = Mapping[str, Any]

SCENARIO_PACKAGE = "codim.scenarios"


@dataclass
class Geometry:
    """
    A resolved scenario: the ambient, the immersion and its subbundle.
    """

    space: SpaceModel
    immersion: Immersion
    params: list[str]
    bundle: NormalSubbundle | None = None
    frenet: FrenetResult | None = None


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    description: str
    build: Callable[..., Any]


def _space(spec: SpaceSpec) -> SpaceModel:
    match spec.kind:
        case SpaceKind.EUCLIDEAN:
            return Euclidean(spec.dim)
        case SpaceKind.SPHERE:
            return Sphere(spec.dim, radius=spec.radius)
        case SpaceKind.HYPERBOLIC:
            return Hyperbolic(spec.dim, radius=spec.radius)
        case SpaceKind.COMPLEX_PROJECTIVE:
            return ComplexProjective(spec.dim, c=spec.c)
        case SpaceKind.PRODUCT:
            return Product([_space(factor) for factor in spec.factors])

    raise CatalogError("space", str(spec.kind), [kind.value for kind in SpaceKind])


SPACE_DESCRIPTIONS = {
    SpaceKind.EUCLIDEAN: "Flat R^n.",
    SpaceKind.SPHERE: "Round sphere S^n of radius r embedded in R^{n+1}.",
    SpaceKind.HYPERBOLIC: "Hyperbolic space H^n on the hyperboloid in Minkowski space.",
    SpaceKind.COMPLEX_PROJECTIVE: "CP^n with the Fubini-Study metric, holomorphic curvature c.",
    SpaceKind.PRODUCT: "Riemannian product of the listed factors.",
}


def _require(space: SpaceModel, kind: type, min_dim: int, entry: str):
    if not isinstance(space, kind) or space.dim < min_dim:
        raise ScenarioError(
            f"Immersion '{entry}' needs a {kind.__name__.lower()} of dimension >= {min_dim}, "
            f"got {space!r}."
        )


def _padded(values: list[str], size: int) -> list[str]:
    return values + ["0"] * (size - len(values))


def _curve_domain(options: Options, default: float) -> list[tuple[float, float]]:
    low, high = options.get("domain", [0.0, default])
    return [(float(low), float(high))]


def latitude_circle(space: SpaceModel, options: Options) -> Geometry:
    _require(space, Sphere, 2, "latitude_circle")
    constants = {"r": space.radius, "phi": float(options.get("polar", 1.0))}
    coordinates = ["r*sin(phi)*cos(u)", "r*sin(phi)*sin(u)", "r*cos(phi)"]
    F = expression_immersion(
        space,
        ["u"],
        _padded(coordinates, space.chart_dim),
        _curve_domain(options, 3.0),
        constants=constants,
        name="latitude circle",
    )
    return Geometry(space, F, ["u"])


def hyperbolic_circle(space: SpaceModel, options: Options) -> Geometry:
    _require(space, Hyperbolic, 2, "hyperbolic_circle")
    constants = {"r": space.radius, "rho": float(options.get("rho", 0.5))}
    coordinates = ["r*cosh(rho)", "r*sinh(rho)*cos(u)", "r*sinh(rho)*sin(u)"]
    F = expression_immersion(
        space,
        ["u"],
        _padded(coordinates, space.chart_dim),
        _curve_domain(options, 3.0),
        constants=constants,
        name="hyperbolic circle",
    )
    return Geometry(space, F, ["u"])


def helix(space: SpaceModel, options: Options) -> Geometry:
    _require(space, Euclidean, 3, "helix")
    constants = {"a": float(options.get("radius", 1.0)), "b": float(options.get("pitch", 0.5))}
    F = expression_immersion(
        space,
        ["u"],
        _padded(["a*cos(u)", "a*sin(u)", "b*u"], space.chart_dim),
        _curve_domain(options, 3.0),
        constants=constants,
        name="helix",
    )
    return Geometry(space, F, ["u"])


def cp1_circle(space: SpaceModel, options: Options) -> Geometry:
    """
    ``z(u) = (cos a, sin a e^{iu}, 0, …)``, a circle in the totally geodesic ``CP^1``
    cut out by ``z_2 = … = 0``.
    """
    _require(space, ComplexProjective, 2, "cp1_circle")
    half = space.n + 1
    real = _padded(["cos(a)", "sin(a)*cos(u)"], half)
    imag = _padded(["0", "sin(a)*sin(u)"], half)
    F = expression_immersion(
        space,
        ["u"],
        real + imag,
        _curve_domain(options, 3.0),
        constants={"a": float(options.get("angle", 0.6))},
        name="CP^1 circle",
    )
    return Geometry(space, F, ["u"])


def frenet_curve(space: SpaceModel, options: Options, config: NumericsConfig) -> Geometry:
    """
    A unit-speed curve with prescribed constant curvatures, integrated from a start frame.

    ``frame = "cp2"`` selects the start frame of the ``CP^2`` counterexample; the default
    starts at ``(1, 0, …)`` (the hyperboloid vertex, the origin) with the coordinate frame.
    """
    curvatures = [float(k) for k in options.get("curvatures", [1.0])]
    length = float(options.get("length", 2.0))
    steps = int(options.get("steps", 4096))
    if options.get("frame", "standard") == "cp2":
        if not isinstance(space, ComplexProjective) or space.n != 2 or space.c != 4.0:
            raise ScenarioError("Start frame 'cp2' needs complex_projective with dim 2, c 4.")
        start, frame = cp2_frame()
    elif isinstance(space, Product):
        raise ScenarioError("Frenet curves in product spaces need an explicit start frame.")
    else:
        seed = np.zeros(space.chart_dim)
        if not isinstance(space, Euclidean):
            seed[0] = space.scale
        start = space.project_point(seed)
        frame = space.tangent_space(start).basis

    data = FrenetData(space, start, frame, curvatures, length=length, steps=steps)
    result = frenet_integrate(data, config=config)
    return Geometry(space, result.immersion(name="Frenet curve"), ["u"], frenet=result)


IMMERSIONS: dict[str, CatalogEntry] = {
    entry.name: entry
    for entry in [
        CatalogEntry(
            "cp1_circle",
            "Circle z=(cos a, sin a e^{iu}) in a totally geodesic CP^1 (option: angle).",
            cp1_circle,
        ),
        CatalogEntry(
            "frenet_curve",
            "Curve with constant Frenet curvatures (options: curvatures, length, steps, frame).",
            frenet_curve,
        ),
        CatalogEntry(
            "helix",
            "Circular helix in the first three coordinates (options: radius, pitch).",
            helix,
        ),
        CatalogEntry(
            "hyperbolic_circle",
            "Circle of radius rho in a totally geodesic H^2 (option: rho).",
            hyperbolic_circle,
        ),
        CatalogEntry(
            "latitude_circle",
            "Latitude circle at polar angle phi in an equatorial S^2 (option: polar).",
            latitude_circle,
        ),
    ]
}


def full_bundle(geometry: Geometry, options: Options) -> NormalSubbundle:
    return NormalSubbundle.full(geometry.immersion)


def mean_curvature_line(geometry: Geometry, options: Options) -> NormalSubbundle:
    F = geometry.immersion

    def frame(u: np.ndarray) -> np.ndarray:
        return mean_curvature(F, u)[None, :]

    return NormalSubbundle(F, frame, 1, name="span{H}")


def mean_curvature_plane(geometry: Geometry, options: Options) -> NormalSubbundle:
    if geometry.frenet is None:
        raise ScenarioError("Bundle 'mean_curvature' needs the 'frenet_curve' immersion.")

    return mean_curvature_bundle(geometry.frenet, geometry.immersion)


BUNDLES: dict[str, CatalogEntry] = {
    entry.name: entry
    for entry in [
        CatalogEntry("full", "The whole normal bundle.", full_bundle),
        CatalogEntry(
            "mean_curvature",
            "span{H, ∇⊥H} of a Frenet curve, from its integrated frame.",
            mean_curvature_plane,
        ),
        CatalogEntry(
            "mean_curvature_line",
            "span{H}; H must not vanish on the domain.",
            mean_curvature_line,
        ),
    ]
}


def _lookup(registry: Mapping[str, CatalogEntry], kind: str, name: str) -> CatalogEntry:
    if name not in registry:
        raise CatalogError(kind, name, list(registry))

    return registry[name]


def resolve(scenario: Scenario, config: NumericsConfig = DEFAULT_CONFIG) -> Geometry:
    """
    Build the space, immersion and bundle a scenario describes.

    Raises:
        :class:`~codim.exceptions.CatalogError`: Unknown catalog names.
        :class:`~codim.exceptions.ScenarioError`: Entries that do not fit together.
    """
    try:
        space = _space(scenario.space)
    except ValueError as err:
        raise ScenarioError(f"space: {err}") from err

    spec = scenario.immersion
    if spec.catalog is not None:
        entry = _lookup(IMMERSIONS, "immersion", spec.catalog)
        if entry.name == "frenet_curve":
            geometry = entry.build(space, spec.options, config)
        else:
            geometry = entry.build(space, spec.options)
    else:
        immersion = expression_immersion(
            space,
            spec.params,
            spec.coordinates,
            spec.domain,
            constants=spec.constants,
            name=scenario.name,
        )
        geometry = Geometry(space, immersion, list(spec.params))

    bundle = scenario.bundle
    if bundle.frame:
        constants = {**spec.constants, **bundle.constants}
        frame = expression_frame(space, geometry.params, bundle.frame, constants=constants)
        geometry.bundle = NormalSubbundle(geometry.immersion, frame, len(bundle.frame), "frame")
    else:
        entry = _lookup(BUNDLES, "bundle", bundle.catalog or "full")
        geometry.bundle = entry.build(geometry, bundle.options)

    logger.debug("Resolved %s: %r with %r", scenario.name, geometry.immersion, geometry.bundle)
    return geometry


def scenario_names() -> list[str]:
    files = resources.files(SCENARIO_PACKAGE).iterdir()
    return sorted(f.name.removesuffix(".toml") for f in files if f.name.endswith(".toml"))


@cache
def _scenario_text(name: str) -> str:
    return resources.files(SCENARIO_PACKAGE).joinpath(f"{name}.toml").read_text(encoding="utf-8")


def builtin_scenario(name: str) -> Scenario:
    if name not in scenario_names():
        raise CatalogError("scenario", name, scenario_names())

    return parse_scenario(_scenario_text(name), path=f"<builtin>/{name}.toml")


def list_catalog(filter_text: str = "") -> list[dict[str, str]]:
    """
    Every catalog entry as ``{"kind", "name", "description"}`` in a stable order: spaces,
    immersions, bundles, scenarios, each sorted by name. ``filter_text`` keeps entries
    whose name contains it.
    """
    records = [
        {"kind": "space", "name": kind.value, "description": SPACE_DESCRIPTIONS[kind]}
        for kind in sorted(SpaceKind, key=lambda k: k.value)
    ]
    for kind, registry in (("immersion", IMMERSIONS), ("bundle", BUNDLES)):
        records.extend(
            {"kind": kind, "name": name, "description": registry[name].description}
            for name in sorted(registry)
        )

    records.extend(
        {"kind": "scenario", "name": name, "description": builtin_scenario(name).description}
        for name in scenario_names()
    )
    needle = filter_text.strip().lower()
    return [r for r in records if needle in r["name"].lower()]

import pytest

from codim.exceptions import ScenarioError
from codim.model.scenario import (
    BundleSpec,
    GridSpec,
    ImmersionSpec,
    SpaceKind,
    SpaceSpec,
    load_scenario,
    parse_scenario,
)


def test_parse(scenario_text):
    scenario = parse_scenario(scenario_text)
    assert scenario.name == "circle"
    assert scenario.seed == 3
    assert scenario.space.kind is SpaceKind.SPHERE
    assert scenario.immersion.domain == [(0.0, 3.0)]
    assert scenario.bundle.catalog == "full"
    assert scenario.grid == GridSpec()
    assert [check.name for check in scenario.checks] == ["first_normal_contained", "dimension"]
    assert scenario.checks[0].expect == "pass"
    assert scenario.checks[1].tol == 0.25


def test_load(tmp_path, scenario_text):
    path = tmp_path / "circle.toml"
    path.write_text(scenario_text)
    assert load_scenario(path).name == "circle"


def test_load_missing(tmp_path):
    path = tmp_path / "missing.toml"
    with pytest.raises(ScenarioError, match="Cannot read scenario") as err:
        load_scenario(path)

    assert err.value.path == str(path)


class TestErrors:
    def test_toml_syntax(self, scenario_text):
        text = scenario_text.replace('kind = "sphere"', "kind = sphere")
        with pytest.raises(ScenarioError, match="Invalid TOML") as err:
            parse_scenario(text, path="bad.toml")

        assert err.value.line == 5
        assert str(err.value).startswith("bad.toml:5: ")

    def test_unknown_kind(self, scenario_text):
        text = scenario_text.replace('kind = "sphere"', 'kind = "torus"')
        with pytest.raises(ScenarioError, match="space.kind") as err:
            parse_scenario(text)

        assert err.value.line == 5

    def test_unknown_check(self, scenario_text):
        text = scenario_text.replace('name = "dimension"', 'name = "volume"')
        with pytest.raises(ScenarioError, match="checks.1.name"):
            parse_scenario(text)

    def test_extra_key(self, scenario_text):
        text = scenario_text.replace("seed = 3", "seed = 3\ncolour = 1")
        with pytest.raises(ScenarioError, match="colour") as err:
            parse_scenario(text)

        assert err.value.line == 3

    def test_no_checks(self, scenario_text):
        text = scenario_text.split("[[checks]]")[0]
        with pytest.raises(ScenarioError, match="checks"):
            parse_scenario(text)

    def test_negative_tolerance(self, scenario_text):
        with pytest.raises(ScenarioError, match="checks.1.tol"):
            parse_scenario(scenario_text.replace("tol = 0.25", "tol = -1.0"))


@pytest.mark.parametrize(
    "value,expected",
    [
        ("sphere", SpaceKind.SPHERE),
        ("Complex-Projective", SpaceKind.COMPLEX_PROJECTIVE),
        ("HYPERBOLIC", SpaceKind.HYPERBOLIC),
    ],
)
def test_space_kind(value, expected):
    assert SpaceKind(value) is expected


class TestSpaceSpec:
    def test_product(self):
        spec = SpaceSpec(
            kind="product",
            factors=[SpaceSpec(kind="sphere", dim=2), SpaceSpec(kind="euclidean", dim=1)],
        )
        assert len(spec.factors) == 2

    @pytest.mark.parametrize(
        "kwargs,message",
        [
            ({"kind": "product", "factors": [{"kind": "sphere", "dim": 2}]}, "two factors"),
            (
                {"kind": "sphere", "dim": 2, "factors": [{"kind": "sphere", "dim": 2}]},
                "Only product",
            ),
            ({"kind": "hyperbolic"}, "dim >= 1"),
            ({"kind": "sphere", "dim": 2, "radius": 0.0}, "greater than 0"),
        ],
    )
    def test_invalid(self, kwargs, message):
        with pytest.raises(ValueError, match=message):
            SpaceSpec(**kwargs)


class TestImmersionSpec:
    def test_catalog(self):
        spec = ImmersionSpec(catalog="small_circle", options={"polar": 0.5})
        assert spec.coordinates == []

    @pytest.mark.parametrize(
        "kwargs,message",
        [
            ({}, "exactly one"),
            ({"catalog": "small_circle", "coordinates": ["u"]}, "exactly one"),
            ({"params": ["u"], "coordinates": ["u"], "domain": []}, "0 intervals for 1"),
            ({"params": ["u"], "coordinates": ["u"], "domain": [(1.0, 1.0)]}, "Empty domain"),
        ],
    )
    def test_invalid(self, kwargs, message):
        with pytest.raises(ValueError, match=message):
            ImmersionSpec(**kwargs)


class TestBundleSpec:
    def test_defaults_to_full(self):
        assert BundleSpec().catalog == "full"
        assert BundleSpec(frame=[["0", "0", "0", "1"]]).catalog is None

    def test_catalog_and_frame(self):
        with pytest.raises(ValueError, match="at most one"):
            BundleSpec(catalog="mean_curvature", frame=[["0"]])

import pytest
from pydantic import ValidationError

from codim.model.config import DEFAULT_CONFIG, TOL_SCALE_ENV_VAR, NumericsConfig
from codim.model.tolerance import Tolerance


class TestNumericsConfig:
    def test_defaults(self):
        assert DEFAULT_CONFIG.tol_scale == 1.0
        assert DEFAULT_CONFIG.fail_factor == 10.0
        assert DEFAULT_CONFIG.steps_per_unit == 512
        assert DEFAULT_CONFIG.shrink_limit == 8

    def test_from_env(self, monkeypatch):
        monkeypatch.setenv(TOL_SCALE_ENV_VAR, "3")
        assert NumericsConfig.from_env().tol_scale == 3.0
        assert NumericsConfig.from_env(tol_scale=2.0).tol_scale == 2.0

    def test_from_env_unset(self, monkeypatch):
        monkeypatch.delenv(TOL_SCALE_ENV_VAR, raising=False)
        assert NumericsConfig.from_env() == DEFAULT_CONFIG

    def test_scaled(self):
        config = NumericsConfig(tol_scale=2.0).scaled(5.0)
        assert config.tol_scale == 10.0
        assert config.check_tol(1e-6) == pytest.approx(1e-5)

    def test_frozen(self):
        with pytest.raises(ValidationError):
            DEFAULT_CONFIG.tol_scale = 2.0

    @pytest.mark.parametrize(
        "field,value",
        [
            ("tol_scale", 0.0),
            ("fail_factor", 1.0),
            ("rank_rel", 1.0),
            ("steps_per_unit", 4),
            ("frame_jump", 1.5),
            ("shrink_limit", -1),
        ],
    )
    def test_invalid(self, field, value):
        with pytest.raises(ValidationError):
            NumericsConfig(**{field: value})

    def test_tolerance(self):
        config = NumericsConfig(abs_tol=1e-7, rank_rel=1e-6)
        assert config.tolerance == Tolerance(abs=1e-7, rank_rel=1e-6)


class TestTolerance:
    def test_scaled(self):
        tol = Tolerance(abs=1e-9, floor=1e-6).scaled(10)
        assert tol.abs == pytest.approx(1e-8)
        assert tol.floor == pytest.approx(1e-5)
        assert tol.rank_rel == Tolerance().rank_rel

    @pytest.mark.parametrize(
        "kwargs", [{"abs": 0.0}, {"abs": -1.0}, {"rank_rel": 1.0}, {"floor": -1e-3}]
    )
    def test_invalid(self, kwargs):
        with pytest.raises(ValidationError):
            Tolerance(**kwargs)

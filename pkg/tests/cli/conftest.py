import pytest
from click.testing import CliRunner

SCENARIO = """\
name = "cli_circle"
seed = 2

[space]
kind = "sphere"
dim = 3

[immersion]
catalog = "latitude_circle"

[bundle]
{bundle}

[grid]
resolution = 5
envelope_resolution = 3

[[checks]]
name = "first_normal_contained"
expect = "pass"

[[checks]]
name = "curvature_invariant"
expect = "pass"

[[checks]]
name = "dimension"
expect = "pass"
tol = 0.25
"""


@pytest.fixture(autouse=True)
def log_dir(tmp_path, monkeypatch):
    path = tmp_path / "logs"
    monkeypatch.setenv("CODIM_LOG_DIR", str(path))
    monkeypatch.delenv("CODIM_TOL_SCALE", raising=False)
    monkeypatch.delenv("CODIM_SEED", raising=False)
    monkeypatch.delenv("CODIM_OUTPUT_FORMAT", raising=False)
    return path


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def codim_cli(runner):
    from codim._cli import cli

    def _run(argv: list[str], **kwargs):
        return runner.invoke(cli, argv, **kwargs)

    return _run


@pytest.fixture
def write_scenario(tmp_path):
    def _write(text: str | None = None, bundle: str = 'catalog = "mean_curvature_line"'):
        path = tmp_path / "scenario.toml"
        path.write_text(text if text is not None else SCENARIO.format(bundle=bundle))
        return path

    return _write


@pytest.fixture
def scenario_file(write_scenario):
    return write_scenario()

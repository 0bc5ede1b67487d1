import pytest

SCENARIO = """\
name = "circle"
seed = 3

[space]
kind = "sphere"
dim = 3

[immersion]
params = ["u"]
coordinates = ["sin(1)*cos(u)", "sin(1)*sin(u)", "cos(1)", "0"]
domain = [[0.0, 3.0]]

[[checks]]
name = "first_normal_contained"
expect = "pass"

[[checks]]
name = "dimension"
tol = 0.25
"""


@pytest.fixture
def scenario_text():
    return SCENARIO

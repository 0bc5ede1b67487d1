import pytest

from codim.model.scenario import parse_scenario

CIRCLE = """\
name = "circle"
seed = 4

[space]
kind = "sphere"
dim = 3

[immersion]
catalog = "latitude_circle"
options = {{ polar = 1.0 }}

[bundle]
{bundle}

[grid]
resolution = 5
envelope_resolution = 3

[[checks]]
name = "first_normal_contained"
expect = "{expect}"

[[checks]]
name = "curvature_invariant"

[[checks]]
name = "dimension"
tol = 0.25

[[checks]]
name = "space_form_redundancy"
options = {{ trials = 3 }}
"""


def circle_scenario(bundle: str = 'catalog = "mean_curvature_line"', expect: str = "pass"):
    return parse_scenario(CIRCLE.format(bundle=bundle, expect=expect))


@pytest.fixture
def circle():
    return circle_scenario()

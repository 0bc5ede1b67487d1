import pytest

from codim.frenet import (
    build_cp2_counterexample,
    build_frenet_scenario,
    cp2_counterexample_data,
    space_form_transplant,
)


@pytest.fixture(scope="module")
def cp2_scenario():
    return build_cp2_counterexample(length=2.0, steps=4096, resolution=17)


@pytest.fixture(scope="module")
def s4_scenario():
    return build_frenet_scenario(space_form_transplant(cp2_counterexample_data()), resolution=17)

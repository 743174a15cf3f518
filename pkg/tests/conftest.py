import numpy as np
import pytest
from hypothesis import HealthCheck, settings as hypothesis_settings

from feynlogic.cli.config import load
from feynlogic.settings import Settings, set_settings

hypothesis_settings.register_profile(
    "feynlogic",
    max_examples=50,
    deadline=None,
    suppress_health_check=[HealthCheck.function_scoped_fixture],
)
hypothesis_settings.load_profile("feynlogic")


@pytest.fixture(autouse=True)
def _fixed_settings():
    set_settings(Settings(seed=7, mc_runs=20_000, axiom_samples=2_000))
    yield
    set_settings(None)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture(scope="session")
def spin_half():
    return load("spin_half")


@pytest.fixture(scope="session")
def qutrit():
    return load("qutrit")


@pytest.fixture(scope="session")
def composite_pair():
    return load("composite_pair")

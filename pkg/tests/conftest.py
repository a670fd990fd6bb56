import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from diamond_bath import BathParams, ClusterParams

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

couplings = st.floats(-2, 2, allow_nan=False)
cluster_params = st.builds(ClusterParams, couplings, couplings, couplings, couplings, couplings)
times = st.floats(0, 20, allow_nan=False)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def fig2_cluster():
    return ClusterParams(J=-1.0, Jz=1.0, J0=1.0)


@pytest.fixture
def fig2_bath():
    return BathParams(lam=0.01, s=2.0, omega_c=20.0, beta=1.0)


_ACCEPTANCE = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" in report.nodeid and "criterion" in report.nodeid:
        if report.when == "call" or report.outcome != "passed":
            _ACCEPTANCE[report.nodeid] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for nodeid, outcome in _ACCEPTANCE.items():
        name = nodeid.split("::")[-1].removeprefix("test_").replace("_", " ")
        terminalreporter.write_line(f"{'PASS' if outcome == 'passed' else 'FAIL'}  {name}")

import random
from importlib import resources

import pytest
from hypothesis import HealthCheck, settings

from logbundle.arrangement import load_arrangement
from logbundle.exactalg import QQ, PrimeField, plane_ring
from logbundle.logpres import log_resolution

settings.register_profile(
    "default",
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("default")

ACCEPTANCE_LINES: list[str] = []


def data_path(name: str) -> str:
    return str(resources.files("logbundle") / "data" / name)


@pytest.fixture(scope="session")
def F101():
    return PrimeField(101)


@pytest.fixture(scope="session")
def R():
    return plane_ring(QQ)


@pytest.fixture(scope="session")
def example1():
    return load_arrangement(data_path("example1.json"))


@pytest.fixture(scope="session")
def example2():
    return load_arrangement(data_path("example2.json"))


@pytest.fixture(scope="session")
def example2_pres(example2):
    return log_resolution(example2)


@pytest.fixture(scope="session")
def example2_report(example2, example2_pres):
    from logbundle.instability import unstable_lines

    return unstable_lines(example2, pres=example2_pres)


@pytest.fixture
def rng():
    return random.Random(20260514)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

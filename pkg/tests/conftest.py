import functools

import pytest
from hypothesis import HealthCheck, settings

from gassmann.groups import make_named_group

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

ACCEPTANCE_LINES: list[str] = []


@functools.lru_cache(maxsize=None)
def group(desc: str):
    """Groups are immutable apart from their caches, so tests share them."""
    return make_named_group(desc)


@pytest.fixture(scope="session")
def G():
    return group


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

import os

import pytest
from hypothesis import settings

from kappaforms import build_realization

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

CRITERIA_LINES = []


@pytest.fixture(scope="session")
def realize():
    cache = {}

    def get(n=4, order=6, family="d1", c=1, mutation=None):
        key = (n, order, family, str(c), mutation)
        if key not in cache:
            cache[key] = build_realization(n, order, family, c, mutation=mutation)
        return cache[key]

    return get


def pytest_terminal_summary(terminalreporter):
    if CRITERIA_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(CRITERIA_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)

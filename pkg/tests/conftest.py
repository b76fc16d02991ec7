import os

import pytest
from hypothesis import settings

from support import ACCEPTANCE_LINES

settings.register_profile("default", deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(autouse=True)
def _no_closure_cap(monkeypatch):
    monkeypatch.delenv("LCKHOLONOMY_MAX_CLOSURE_STEPS", raising=False)

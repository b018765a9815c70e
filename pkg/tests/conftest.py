import os

import pytest
from hypothesis import settings

settings.register_profile("ci", max_examples=200)
settings.register_profile("fast", max_examples=25, derandomize=True, database=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "fast"))

# verdict lines from the acceptance gate, echoed after the run so they stay
# visible under output capture
_criterion_lines: list[str] = []


@pytest.fixture(scope="session")
def criterion_log():
    return _criterion_lines


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if _criterion_lines:
        terminalreporter.section("acceptance criteria")
        for line in _criterion_lines:
            terminalreporter.write_line(line)

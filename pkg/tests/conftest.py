from pathlib import Path

import numpy as np
import pytest
from hypothesis import settings

ROOT = Path(__file__).resolve().parents[1]
FIXTURES = ROOT / "fixtures"

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)


@pytest.fixture
def fixtures_dir():
    return FIXTURES


ACCEPTANCE_RESULTS: dict[str, tuple[bool, str]] = {}


@pytest.fixture
def criterion(request):
    """Record an acceptance criterion's outcome for the terminal summary."""
    name = request.node.name
    detail = {"text": ""}

    def note(text):
        detail["text"] = text

    ACCEPTANCE_RESULTS[name] = (False, "")
    yield note
    ACCEPTANCE_RESULTS[name] = (True, detail["text"])


def pytest_runtest_makereport(item, call):
    if call.when == "call" and call.excinfo is not None and item.name in ACCEPTANCE_RESULTS:
        ACCEPTANCE_RESULTS[item.name] = (False, str(call.excinfo.value).splitlines()[0][:100])


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, (ok, detail) in sorted(ACCEPTANCE_RESULTS.items()):
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}")

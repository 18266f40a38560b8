import os

import pytest
from hypothesis import HealthCheck, settings

from gradedring.fixtures import two_object_grading, z4_grading

settings.register_profile(
    "default",
    max_examples=40,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.register_profile("thorough", max_examples=300, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture(scope="session")
def z4ga():
    return z4_grading()


@pytest.fixture(scope="session")
def twoga():
    return two_object_grading()


# acceptance summary: one line per criterion at the end of the run

ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def record_criterion(number: int, ok: bool, note: str = "") -> None:
    ACCEPTANCE[number] = (ok, note)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, note = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {note}".rstrip())

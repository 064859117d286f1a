import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from sparp.model import ConferenceConfig, ContactRecord, Dataset, PersonalityVector  # noqa: E402


@pytest.fixture
def tiny_dataset():
    profiles = {
        "A": PersonalityVector(5, 4, 3, 2, 1),
        "B": PersonalityVector(5, 4, 3, 2, 2),
        "C": PersonalityVector(1, 2, 3, 4, 5),
    }
    contacts = (
        ContactRecord("A", "B", "past", 80.0, 7),
        ContactRecord("A", "B", "present", 40.0, 3),
        ContactRecord("B", "C", "present", 10.0, 2),
    )
    return Dataset(("A", "B", "C"), profiles, contacts, ConferenceConfig())


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    if module is not None and module.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in module.RESULTS:
            terminalreporter.write_line(line)

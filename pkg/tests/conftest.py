import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from fixtures import (  # noqa: E402
    candidate_maxwords_system,
    drift_system,
    loop_negative_system,
    running_system,
    sink_positive_system,
)
from numreg.decide import analyze  # noqa: E402


@pytest.fixture(scope="session")
def loop_negative_report():
    return analyze(loop_negative_system(), exhaustive=True)


@pytest.fixture(scope="session")
def sink_positive_report():
    return analyze(sink_positive_system())


@pytest.fixture(scope="session")
def running_report():
    return analyze(running_system(), exhaustive=True)


@pytest.fixture(scope="session")
def drift_report():
    return analyze(drift_system())


@pytest.fixture(scope="session")
def candidate_report():
    return analyze(candidate_maxwords_system(), want_automaton=True)

import os
import time

import numpy as np
import pytest

from freqcube.classifier import all_codes, classify_upto

EXTENDED = os.environ.get("FREQCUBE_EXTENDED") == "1"

# wall-clock seconds of each session-level classification, for the runtime criteria
TIMINGS: dict[str, float] = {}
# one line per acceptance criterion, printed at the end of the run
CRITERIA: dict[int, str] = {}


def _timed(kind):
    t = time.perf_counter()
    out = classify_upto(3, kind)
    TIMINGS[kind] = time.perf_counter() - t
    return out


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(CRITERIA):
        terminalreporter.write_line(CRITERIA[k])


@pytest.fixture(scope="session")
def dmds_levels():
    return _timed("dmds")


@pytest.fixture(scope="session")
def unitrade_levels():
    return _timed("unitrade")


@pytest.fixture(scope="session")
def doublecode_levels():
    return _timed("doublecode")


@pytest.fixture(scope="session")
def dmds3(dmds_levels):
    return dmds_levels[-1]


@pytest.fixture(scope="session")
def codes3(dmds3):
    return all_codes(dmds3)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)

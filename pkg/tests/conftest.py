import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from fingertrace.synth import corpus_specs, generate_hand  # noqa: E402

DATA = Path(__file__).parent / "data"

_criteria = {}


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("criterion")
    if marker is None or call.when not in ("setup", "call"):
        return
    number, title = marker.args
    if call.when == "setup" and call.excinfo is None:
        return
    _criteria[number] = (title, call.excinfo is None)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        title, ok = _criteria[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {title}")


@pytest.fixture(scope="session")
def corpus():
    """200 noise-free 640x480 hands: (spec, image, truth) triples."""
    return [(s, *generate_hand(s)) for s in corpus_specs(200, seed=2012)]


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def mask_from_strings(*rows):
    """Build a bool array from rows like '.##.'."""
    return np.array([[c == "#" for c in row] for row in rows], dtype=bool)

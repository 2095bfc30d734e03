import json
import random
import sys
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from cdkernel.errors import DegenerateMeasure  # noqa: E402
from cdkernel.measure import Measure  # noqa: E402
from cdkernel.ortho import build_system  # noqa: E402


@pytest.fixture
def m3():
    """Unit weights at -1, 0, 1."""
    return Measure((-1, 0, 1), (1, 1, 1))


@pytest.fixture
def m3_system(m3):
    return build_system(m3, 2)


@pytest.fixture
def m3_file(tmp_path):
    path = tmp_path / "m3.json"
    path.write_text(json.dumps({"points": ["-1", "0", "1"], "weights": ["1", "1", "1"]}))
    return path


def small_rational(rng):
    return Fraction(rng.randint(-9, 9), rng.choice((1, 2, 3)))


def random_measure(rng, size, positive=False):
    while True:
        points = [small_rational(rng) for _ in range(size)]
        if len(set(points)) == size:
            break
    weights = [rng.randint(1, 5) if positive else rng.choice([-3, -2, -1, 1, 2, 3, 4, 5])
               for _ in range(size)]
    return Measure(tuple(points), tuple(weights))


def random_system(rng, n, max_points=6, positive=False):
    while True:
        try:
            return build_system(random_measure(rng, rng.randint(n, max(n, max_points)), positive), n)
        except DegenerateMeasure:
            continue


@pytest.fixture
def rng():
    return random.Random(20061204)


# -- acceptance summary ---------------------------------------------------------

_ACCEPTANCE = []


def pytest_runtest_logreport(report):
    if report.when != "call" or "test_acceptance.py" not in report.nodeid:
        return
    _ACCEPTANCE.append((report.nodeid.split("::")[-1], report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _ACCEPTANCE:
        status = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{status}  {name}")

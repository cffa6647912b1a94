import cmath
import random

import pytest
from gmpy2 import mpc

from ellverify.numerics import NumericContext


@pytest.fixture
def ctx():
    return NumericContext()


@pytest.fixture
def rng():
    return random.Random(20240611)


def polar(rng, lo=0.5, hi=2.0):
    return mpc(cmath.rect(rng.uniform(lo, hi), rng.uniform(0.0, 2 * cmath.pi)))


ACCEPTANCE_LINES = pytest.StashKey[list]()


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance: the acceptance criteria")
    config.stash[ACCEPTANCE_LINES] = []


@pytest.fixture
def acceptance_log(request):
    return request.config.stash[ACCEPTANCE_LINES]


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(ACCEPTANCE_LINES, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda l: int(l.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)

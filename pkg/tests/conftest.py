import random
import shlex
from pathlib import Path

import pytest
from hypothesis import strategies as st

from motivic.core import Registry
from motivic.laurent import LaurentPoly

ACCEPTANCE_LINES: list[str] = []
GOLDEN = Path(__file__).parent / "golden"


def golden_cases():
    """``(argv, expected stdout path, exit status)`` for every manifest line."""
    cases = []
    for line in (GOLDEN / "manifest.txt").read_text().splitlines():
        if not line.strip() or line.startswith("#"):
            continue
        args, out, status = (part.strip() for part in line.split("|"))
        argv = [str(GOLDEN / a) if (GOLDEN / a).is_file() else a for a in shlex.split(args)]
        cases.append((argv, GOLDEN / out, int(status)))
    return cases


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def reg():
    return Registry()


@pytest.fixture
def rng():
    return random.Random(20261015)


laurent_polys = st.dictionaries(
    st.integers(-6, 6), st.integers(-10**12, 10**12), max_size=5
).map(LaurentPoly)

import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))


@pytest.fixture
def rng():
    return np.random.default_rng(20100101)


def write_price_csv(path, dates, values):
    lines = ["date,price"] + [f"{d},{float(v)!r}" for d, v in zip(dates, values)]
    Path(path).write_text("\n".join(lines) + "\n")
    return path


def write_pair_csv(path, dates, spot, fut):
    lines = ["date,spot,futures"] + [f"{d},{float(s)!r},{float(f)!r}" for d, s, f in zip(dates, spot, fut)]
    Path(path).write_text("\n".join(lines) + "\n")
    return path


def business_dates(n, start="2000-01-03"):
    return np.busday_offset(np.datetime64(start, "D"), np.arange(n), roll="forward")


# acceptance verdicts, printed once at the end of the run
VERDICTS = []


def pytest_terminal_summary(terminalreporter):
    if VERDICTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(VERDICTS):
            terminalreporter.write_line(line)

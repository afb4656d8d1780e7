import os
import sys

sys.path.insert(0, os.path.dirname(__file__))

from oracle_values import ORACLES  # noqa: E402


def oracle(name: str) -> complex:
    re, im = ORACLES[name]
    return complex(float(re), float(im))


def rel(a, b) -> float:
    a, b = complex(a), complex(b)
    return abs(a - b) / max(abs(b), 1e-300)


# one line per acceptance criterion, shown in the terminal summary
ACCEPTANCE_LINES: dict = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for key in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[key])

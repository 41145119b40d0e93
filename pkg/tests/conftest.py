import random
from fractions import Fraction
from pathlib import Path

import pytest

from realcert.exact import GaussianRational

DATA = Path(__file__).resolve().parent.parent / "data"


def rand_fraction(rng: random.Random, size: int = 20) -> Fraction:
    return Fraction(rng.randint(-size, size), rng.randint(1, size))


def rand_gaussian(rng: random.Random, size: int = 20, real: bool = False) -> GaussianRational:
    return GaussianRational(rand_fraction(rng, size), 0 if real else rand_fraction(rng, size))


def rand_vector(rng, n, size=20, real=False):
    return tuple(rand_gaussian(rng, size, real) for _ in range(n))


def rand_matrix(rng, n, size=20, real=False):
    return tuple(rand_vector(rng, n, size, real) for _ in range(n))


@pytest.fixture
def data_dir() -> Path:
    return DATA


def pytest_terminal_summary(terminalreporter):
    """One verdict line per acceptance criterion, from the tests' ``criterion`` property."""
    lines = []
    for outcome in ("passed", "failed"):
        for rep in terminalreporter.stats.get(outcome, []):
            props = dict(getattr(rep, "user_properties", ()))
            if rep.when == "call" and "criterion" in props:
                verdict = "PASS" if outcome == "passed" else "FAIL"
                lines.append((props["criterion"], f"criterion {props['criterion']}: {verdict}  {props.get('detail', '')}"))
    if lines:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(lines):
            terminalreporter.write_line(line)

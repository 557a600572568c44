import numpy as np
import pytest

from semifeq.corpus import load_semigroup
from semifeq.morphisms import Character, InvolutiveMorphism, admissible_mus, all_involutions
from semifeq.semigroup import validate_semigroup

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def cyclic(n):
    return validate_semigroup([[(x + y) % n for y in range(n)] for x in range(n)], f"Z{n}")


@pytest.fixture
def z4():
    return load_semigroup("corpus:Z4")


@pytest.fixture
def z4_inv():
    return InvolutiveMorphism((0, 3, 2, 1))


@pytest.fixture
def one4():
    return Character.constant_one(4)


@pytest.fixture
def null2():
    return load_semigroup("corpus:NULL2")


def instances(s):
    """Every (tau index, tau, mu index, mu) pair of a semigroup."""
    for ti, tau in enumerate(all_involutions(s)):
        for mi, mu in enumerate(admissible_mus(s, tau)):
            yield ti, tau, mi, mu


def random_function(rng, n):
    return rng.normal(size=n) + 1j * rng.normal(size=n)


def close(f, g, tol=1e-9):
    return bool(np.max(np.abs(np.asarray(f) - np.asarray(g))) < tol)

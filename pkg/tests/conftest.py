"""Shared oracles (mpmath at 30 digits) and the acceptance-line reporter."""

from __future__ import annotations

import functools

import mpmath as mp
import pytest

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@functools.lru_cache(maxsize=None)
def mp_j(n: int, z: float) -> float:
    """J_n(z) from the Bessel integral at 30 digits."""
    with mp.workdps(30):
        z = mp.mpf(z)
        f = lambda x: (mp.exp(-x) - mp.exp(-z * x) * mp.besseli(0, x) ** n) / x  # noqa: E731
        return float(mp.quad(f, [0, 1, 10, 100, mp.inf]))


@functools.lru_cache(maxsize=None)
def mp_laplace_i0_cubed(z: float) -> float:
    with mp.workdps(30):
        z = mp.mpf(z)
        return float(mp.quad(lambda t: mp.exp(-z * t) * mp.besseli(0, t) ** 3, [0, 1, 10, 100, mp.inf]))


def mp_hyper(a, b, x) -> float:
    with mp.workdps(30):
        return float(mp.hyper([mp.mpf(p) for p in a], [mp.mpf(q) for q in b], mp.mpf(x)))


@pytest.fixture
def oracle_j():
    return mp_j

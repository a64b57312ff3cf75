import math

import mpmath as mp
import pytest

mp.mp.dps = 40

LN2_MINUS_GAMMA = math.log(2.0) - 0.57721566490153286


def mp_product(nu, mu, x):
    """Reference I_mu(x) K_nu(x)."""
    return float(mp.besseli(mu, x) * mp.besselk(nu, x))


def mp_p(nu, x):
    return mp_product(nu, nu, x)


def rel(a, b):
    return abs(a - b) / abs(b)


@pytest.fixture
def no_xmin_env(monkeypatch):
    monkeypatch.delenv("BESSELPROD_XMIN", raising=False)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

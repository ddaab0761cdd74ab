import numpy as np
import pytest

from pvalent import PowerSeries

_acceptance = []


def pytest_runtest_logreport(report):
    if report.when == "call" and "acceptance" in report.keywords:
        _acceptance.append((report.nodeid.split("::")[-1], report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _acceptance:
        mark = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line("%s  %s" % (mark, name))


def random_ap_series(rng, p, K, scale=0.1):
    """f = z^p + sum a_k z^k with |a_k| <= scale / (k-p)^2 and random phases."""
    j = np.arange(1, K - p + 1)
    a = scale * rng.uniform(0, 1, len(j)) / j**2 * np.exp(2j * np.pi * rng.uniform(size=len(j)))
    return PowerSeries(np.concatenate([[1.0], a]), p, K)


def random_unit_series(rng, K, scale=0.1):
    j = np.arange(1, K + 1)
    c = scale * rng.uniform(-1, 1, K) / j**2 + 1j * scale * rng.uniform(-1, 1, K) / j**2
    return PowerSeries(np.concatenate([[1.0], c / np.sqrt(2)]), 0, K)


@pytest.fixture
def rng():
    return np.random.default_rng(20261016)

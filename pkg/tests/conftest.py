"""Shared, cached oracle runs (the 1-D integrations take seconds each)."""

from __future__ import annotations

import functools
import math
import time

import numpy as np
import pytest
from hypothesis import settings

from casimir_entropy import oracle

settings.register_profile("ci", max_examples=40, deadline=None)
settings.load_profile("ci")

# wall time of each cached oracle run, keyed like the cache
ORACLE_SECONDS: dict[tuple, float] = {}


@functools.lru_cache(maxsize=None)
def oracle_history(epsilon: float, N: int = 15, tau_max: float = 0.3):
    """Frozen, normalised coefficients sampled once per drive period up to ``tau_max``."""
    start = time.perf_counter()
    traj = oracle.MirrorTrajectory(epsilon=epsilon, n_periods=1)
    per_period = 0.5 * epsilon * math.pi * traj.period / traj.L1
    periods = math.ceil(tau_max / per_period - 1e-9)
    traj = oracle.MirrorTrajectory(epsilon=epsilon, n_periods=periods)
    run = oracle.integrate_modes(oracle.TruncatedSystem(N), traj)
    alpha, beta = oracle.bogoliubov_history(run)
    ORACLE_SECONDS[(epsilon, N, tau_max)] = time.perf_counter() - start
    return run, alpha, beta


@pytest.fixture(scope="session")
def history():
    return oracle_history


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, text): acceptance criterion covered by a test")
    config._acceptance = {}


def pytest_runtest_makereport(item, call):
    mark = item.get_closest_marker("criterion")
    if mark is None or call.when == "setup" and call.excinfo is None:
        return
    n, text = mark.args
    passed = call.excinfo is None
    prev = item.config._acceptance.get(n, (text, True))
    item.config._acceptance[n] = (text, prev[1] and passed)


def pytest_terminal_summary(terminalreporter, config):
    results = getattr(config, "_acceptance", {})
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        text, ok = results[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {text}")

import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


def brute_potential(vectors, p):
    """Double loop over ordered pairs; independent of the vectorized code."""
    v = np.asarray(vectors, dtype=float)
    total = 0.0
    for i in range(len(v)):
        for j in range(len(v)):
            if i != j:
                t = abs(float(np.dot(v[i], v[j])))
                if t > 1e-15:
                    total += t ** p
    return total


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)

import numpy as np
import pytest
from hypothesis import settings

from xppt.xstate import Dims, XState

settings.register_profile("default", max_examples=200, deadline=None)
settings.load_profile("default")

SMALL_DIMS = [Dims(m, n) for m in range(2, 13) for n in range(2, 13) if m * n <= 12]

_ACCEPTANCE = []


def random_xstate(dims, rng, scale=1.0):
    """A PSD unit-trace X-state not drawn from the package sampler."""
    diag = rng.random(dims.N) + 1e-3
    diag /= diag.sum()
    P = dims.P
    radius = np.sqrt(diag[:P] * diag[::-1][:P]) * np.sqrt(rng.random(P)) * scale
    off = radius * np.exp(2j * np.pi * rng.random(P))
    return XState(dims, diag, off)


def brute_partial_transpose(mat, m, n):
    """Partial transpose on the first factor via a 4-index reshape."""
    return mat.reshape(m, n, m, n).transpose(2, 1, 0, 3).reshape(m * n, m * n)


@pytest.fixture
def acceptance_log():
    def record(number, passed, detail):
        _ACCEPTANCE.append((number, passed, detail))
    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, passed, detail in sorted(_ACCEPTANCE, key=lambda r: r[0]):
        terminalreporter.write_line(f"criterion {number}: {'PASS' if passed else 'FAIL'}  {detail}")

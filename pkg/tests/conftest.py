import math

import numpy as np
import pytest
from hypothesis import strategies as st

from nmrqip.pulse import AXES, PulseSpec


def expm_series(a, terms=60):
    """Truncated power series for exp(a); independent of any closed form."""
    out = np.eye(a.shape[0], dtype=complex)
    term = np.eye(a.shape[0], dtype=complex)
    for k in range(1, terms):
        term = term @ a / k
        out = out + term
    return out


@st.composite
def pulse_specs(draw, max_n=4, axes=AXES):
    n = draw(st.integers(1, max_n))
    active = draw(st.integers(1, n))
    pattern = draw(st.text(alphabet="01*", min_size=n, max_size=n))
    axis = draw(st.sampled_from(axes))
    angle = draw(st.floats(-2 * math.pi, 2 * math.pi, allow_nan=False))
    return PulseSpec(axis, angle, active, pattern)


@st.composite
def condition_patterns(draw, max_n=4, min_m=1):
    n = draw(st.integers(max(1, min_m), max_n))
    pat = draw(st.text(alphabet="01e", min_size=n, max_size=n).filter(lambda p: sum(c != "e" for c in p) >= min_m))
    return pat


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS.values():
            terminalreporter.write_line(line)

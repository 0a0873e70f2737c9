import numpy as np
import pytest
from hypothesis import strategies as st

from qreading.coherent import CatSuperposition, normalize


def random_cat(rng: np.random.Generator, max_terms: int = 4, max_abs: float = 3.0) -> CatSuperposition:
    """Normalized random superposition with labels inside the disc |z| <= max_abs."""
    k = int(rng.integers(1, max_terms + 1))

    def label():
        r = max_abs * np.sqrt(rng.uniform())
        return complex(r * np.exp(2j * np.pi * rng.uniform()))

    terms = [
        (complex(rng.normal(), rng.normal()), label(), label())
        for _ in range(k)
    ]
    return normalize(CatSuperposition(tuple(terms)))


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)


def amplitudes(max_abs: float = 3.0):
    """Hypothesis strategy for complex labels with |z| <= max_abs."""
    return st.builds(
        lambda r, phi: complex(r * np.cos(phi), r * np.sin(phi)),
        st.floats(0.0, max_abs),
        st.floats(0.0, 2 * np.pi),
    )


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)

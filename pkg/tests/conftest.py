import numpy as np
import pytest
from hypothesis import settings, strategies as st

from deltatree.generators import random_euclidean
from deltatree.metric_space import build_space

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@st.composite
def euclidean_spaces(draw, min_n=1, max_n=8, dim=2):
    n = draw(st.integers(min_n, max_n))
    coords = draw(
        st.lists(
            st.lists(st.floats(-10, 10, allow_nan=False), min_size=dim, max_size=dim),
            min_size=n,
            max_size=n,
            unique_by=lambda p: tuple(round(c, 3) for c in p),
        )
    )
    x = np.array(coords, dtype=float)
    d = np.linalg.norm(x[:, None] - x[None], axis=-1)
    return build_space([f"p{i}" for i in range(n)], d)


@st.composite
def random_spaces(draw, max_n=10):
    """Seeded spaces from the generators: Euclidean samples of assorted size."""
    seed = draw(st.integers(0, 2**31 - 1))
    n = draw(st.integers(1, max_n))
    return random_euclidean(n, seed, dim=draw(st.integers(1, 4)))


@pytest.fixture
def c4_space():
    return build_space("abcd", [[0, 1, 2, 1], [1, 0, 1, 2], [2, 1, 0, 1], [1, 2, 1, 0]])


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:  # pragma: no cover
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)

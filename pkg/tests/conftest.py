import numpy as np
import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=100, deadline=None)
settings.load_profile("default")


def random_masses(rng, n, count, sparsity=0.5):
    """Mass vectors on a frame of n classes; some subsets zeroed at random."""
    size = 1 << n
    out = np.zeros((count, size))
    for i in range(count):
        w = rng.dirichlet(np.ones(size - 1))
        keep = rng.random(size - 1) > sparsity * rng.random()
        if not keep.any():
            keep[rng.integers(size - 1)] = True
        w = w * keep
        out[i, 1:] = w / w.sum()
    return out


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


# one line per acceptance criterion, printed after the run whatever the outcome
CRITERIA: dict[str, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(CRITERIA):
        terminalreporter.write_line(CRITERIA[key])

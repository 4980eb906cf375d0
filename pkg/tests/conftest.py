import numpy as np
import pytest
from hypothesis import settings

from cwfcauchy import make_grid

settings.register_profile("default", deadline=None, max_examples=50)
settings.load_profile("default")


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(scope="session")
def paper_grid():
    return make_grid(32, 128, 0.5)


@pytest.fixture(scope="session")
def small_grid():
    return make_grid(8, 16, 0.5)


_ACCEPTANCE_KEY = pytest.StashKey[list]()


@pytest.fixture
def acceptance_log(request):
    """Record one ``PASS``/``FAIL`` line per acceptance criterion."""
    lines = request.config.stash.setdefault(_ACCEPTANCE_KEY, [])

    def record(label, ok, detail=""):
        lines.append(f"{'PASS' if ok else 'FAIL'}  {label}  {detail}".rstrip())
        return ok

    return record


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_ACCEPTANCE_KEY, None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)

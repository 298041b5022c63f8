import numpy as np
import pytest

from photondof import DofSchema, FockKet, StateVector


@pytest.fixture(scope="session")
def small_schema():
    # 2 x 2 x 3 = 12 modes
    return DofSchema([("spatial", ["S1", "S2"]), ("pol", ["H", "V"]), ("freq", ["a", "b", "c"])])


def random_state(rng, schema, n, max_kets=6):
    modes = schema.all_modes()
    terms = {}
    for _ in range(rng.integers(1, max_kets + 1)):
        picks = rng.integers(0, len(modes), size=n)
        ket = FockKet.from_photons(modes[i] for i in picks)
        terms[ket] = complex(rng.normal(), rng.normal())
    return StateVector(schema, n, terms)


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
        for line in RESULTS:
            terminalreporter.write_line(line)

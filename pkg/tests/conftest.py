import numpy as np
import pytest

from margulis.config import load_config
from margulis.construct import prepare
from margulis.words import GeneratorPair

# criterion -> list of (group, passed, detail); filled by test_acceptance
ACCEPTANCE = {}


def group(preset):
    cfg = load_config(preset=preset)
    return cfg.generators()


@pytest.fixture(scope="session")
def fixture_group():
    return group("example")


@pytest.fixture(scope="session")
def schottky_group():
    return group("schottky")


@pytest.fixture(scope="session")
def prepared():
    """(g, h, system, pair) for the verified Schottky preset."""
    g, h = group("schottky")
    g, h, sys_, _ = prepare(g, h)
    return g, h, sys_, GeneratorPair(g, h)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for key in sorted(ACCEPTANCE, key=lambda k: (k[1], k[0])):
        passed, detail = ACCEPTANCE[key]
        tr.write_line(f"{'PASS' if passed else 'FAIL'}  [{key[1]:<8}] criterion {key[0]:>2}: {detail}")

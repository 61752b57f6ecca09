import json
from importlib import resources

import numpy as np
import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=150, deadline=None)
settings.load_profile("default")


@pytest.fixture
def rng():
    return np.random.default_rng(20261017)


def _load_schema(name: str) -> dict:
    return json.loads(resources.files("chordprob").joinpath("schemas", f"{name}.json").read_text())


@pytest.fixture
def load_schema():
    return _load_schema


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)

import pathlib

import pytest

from noisebudget import CascadeNetwork, StageSpec

DATA_DIR = pathlib.Path(__file__).parent / "data"
SCHEMA_DIR = pathlib.Path(__file__).parents[1] / "schemas"


@pytest.fixture
def ref2() -> CascadeNetwork:
    """Two identical stages with external noise only; every derived
    number is small enough to hand-propagate."""
    return CascadeNetwork(100.0, 1.0, (StageSpec(10.0, 0.0, 10.0),) * 2)


@pytest.fixture
def refint() -> CascadeNetwork:
    """Two identical stages with internal noise only."""
    return CascadeNetwork(100.0, 1.0, (StageSpec(10.0, 5.0, 0.0),) * 2)

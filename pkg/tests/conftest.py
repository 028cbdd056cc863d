"""Shared signatures, fixture paths and model factories."""

from pathlib import Path

import pytest

from src.causal.fixtures import binary_signature
from src.causal.model_io import read_model, read_signature

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture
def two_binary():
    return binary_signature(["X", "Y"])


@pytest.fixture
def three_binary():
    return binary_signature(["X", "Y", "Z"])


@pytest.fixture
def one_context():
    """One binary exogenous U, two binary endogenous X and Y."""
    return binary_signature(["X", "Y"], exogenous=["U"])


@pytest.fixture
def load_fixture():
    def load(name: str):
        path = FIXTURES / name
        return read_model(path) if path.suffix == ".model" else read_signature(path)

    return load

"""
Configuration and fixtures for pytest.
"""

import copy
import json
import os
import tempfile

import numpy as np
import pytest

from app.forms import FormCache
from app.models import AnnulusSpec
from app.utils import DEFAULT_CONFIG


@pytest.fixture
def test_config(tmp_path):
    """Lab configuration writing its cache and ledger under a temporary directory."""
    config = copy.deepcopy(DEFAULT_CONFIG)
    config["experiment"].update({"n": 64, "L": 2.0, "R": 0.1, "chunk_size": 16})
    config["cache"]["dir"] = str(tmp_path / "cache")
    config["results"]["ledger"] = str(tmp_path / "results" / "ledger.jsonl")
    config["logging"]["level"] = "WARNING"
    return config


@pytest.fixture
def temp_config_file(test_config):
    """Create a temporary config file for testing."""
    with tempfile.NamedTemporaryFile(mode="w", suffix=".json", delete=False) as f:
        json.dump(test_config, f)
        temp_file = f.name

    yield temp_file

    # Cleanup
    os.unlink(temp_file)


@pytest.fixture
def rng():
    """A seeded generator for randomized geometric checks."""
    return np.random.default_rng(20240611)


@pytest.fixture
def ball():
    """A small ball, r = 0."""
    return AnnulusSpec(r=0.0, R=0.1)


@pytest.fixture
def annulus():
    """An annulus with r / R = 1/2."""
    return AnnulusSpec(r=0.05, R=0.1)


@pytest.fixture
def form_cache():
    """In-memory class data cache."""
    return FormCache(directory=None)


@pytest.fixture
def disk_cache(tmp_path):
    """Class data cache backed by a temporary directory."""
    return FormCache(directory=str(tmp_path / "cache"))

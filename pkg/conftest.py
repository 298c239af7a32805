# conftest.py
"""Put the repository root on sys.path and share preset fixtures."""

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent.resolve()))


@pytest.fixture
def out_dir(tmp_path):
    """Output root for scenario runs."""
    return tmp_path / "runs"


@pytest.fixture
def paper_params():
    from molcav.models.preset_registry import get_registry
    return get_registry().load("paper_params")


@pytest.fixture
def degraded_params():
    from molcav.models.preset_registry import get_registry
    return get_registry().load("paper_params_degraded")


@pytest.fixture
def paper_system(paper_params):
    return paper_params.system

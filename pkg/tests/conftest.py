"""
Shared fixtures for the dworklab tests.
"""

import sys
from pathlib import Path

import pytest

# Add src to path
sys.path.insert(0, str(Path(__file__).parent.parent / 'src'))

from dworklab.analysis import generate_example, relabel_for_rank  # noqa: E402
from dworklab.config import load_config  # noqa: E402


@pytest.fixture(scope='session')
def config():
    return load_config()


@pytest.fixture(scope='session')
def family_332():
    """Leading form of the (n, k, r) = (3, 3, 2) example family, witness at X_1."""
    form, report = relabel_for_rank(generate_example(3, 3, 2))
    assert report.rank == 2
    return form


def pytest_configure(config):
    config.addinivalue_line('markers', 'slow: exhaustive sweeps over many forms or pairs')

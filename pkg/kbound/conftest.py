# Licensed under a 3-clause BSD style license - see LICENSE.rst
# Shared pytest configuration. Placed here so it is found by py.test no
# matter how it is invoked within the source tree.

import os

import pytest
from astropy import log


def pytest_configure(config):
    # the lemma pipeline logs one line per stage at info level
    log.setLevel('WARNING')


@pytest.fixture
def data_path():
    """Return the absolute path of a file in kbound/tests/data."""
    root = os.path.join(os.path.dirname(__file__), 'tests', 'data')

    def get(name):
        return os.path.join(root, name)
    return get


@pytest.fixture
def threads(monkeypatch):
    """Set the worker cap of the counterexample search."""
    def set_threads(n):
        monkeypatch.setenv('KB_THREADS', str(n))
    return set_threads

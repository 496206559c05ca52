"""
Shared fixtures: the Flask app and client under TestingConfig, the witness
automata and a seeded random generator.
"""

import os
from random import Random

import pytest

# Settings read at import time (the Celery app) must see the testing environment
os.environ.setdefault('SC_LAB_ENV', 'testing')

from sclab import create_app  # noqa: E402
from sclab.services.witness import witness_triple  # noqa: E402


@pytest.fixture
def app():
    app = create_app('testing')
    yield app


@pytest.fixture
def client(app):
    return app.test_client()


@pytest.fixture(scope='session')
def witness_333():
    return witness_triple(3, 3, 3)


@pytest.fixture
def rng():
    return Random(20240521)

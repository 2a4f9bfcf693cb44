# dacopt
# Copyright (C) 2026  dacopt developers

import os
import sys
import tempfile

import pytest

SRC = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), 'src')
sys.path.insert(0, SRC)

# keep the user's settings out of the test session
os.environ.setdefault('DACOPT_SETTINGS_DIR', tempfile.mkdtemp(prefix='dacopt-settings-'))
os.environ.pop('DACOPT_THREADS', None)

from app.core.settings import Settings  # noqa: E402

WORKERS = os.path.join(os.path.dirname(os.path.abspath(__file__)), 'workers')
EXAMPLE_WORKER = os.path.join(SRC, 'app', 'services', 'example_worker.py')


@pytest.fixture(autouse=True)
def fresh_settings(tmp_path, monkeypatch):
    monkeypatch.setenv('DACOPT_SETTINGS_DIR', str(tmp_path / 'settings'))
    Settings.reset()
    yield
    Settings.reset()


@pytest.fixture
def example_worker():
    def command(dimension, function='sphere'):
        return [sys.executable, EXAMPLE_WORKER, str(dimension), function]
    return command


@pytest.fixture
def faulty_worker():
    def command(mode, dimension=2):
        return [sys.executable, os.path.join(WORKERS, 'faulty_worker.py'), mode, str(dimension)]
    return command

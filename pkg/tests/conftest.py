# tests/conftest.py
# Shared fixtures and the hypothesis profile.

import json

import pytest
from hypothesis import HealthCheck, settings

from src.core import catalog
from src.core.models import Settings
from src.core.serialization import DocumentLoader

settings.register_profile(
    "liederx",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("liederx")


@pytest.fixture
def heisenberg():
    return catalog.heisenberg()


@pytest.fixture
def n2():
    return catalog.nonabelian2()


@pytest.fixture
def loader():
    return DocumentLoader(Settings())


@pytest.fixture
def write_json(tmp_path):
    """Write a document under tmp_path and return its path as a string."""
    def write(name, doc):
        path = tmp_path / name
        path.write_text(json.dumps(doc), encoding="utf-8")
        return str(path)
    return write

import os, sys

sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

# The API suite sends more requests per minute than the default limit allows
os.environ.setdefault("SEPSYS_RATE_LIMIT", "1000/minute")

import time
from random import Random

import pytest
from fastapi.testclient import TestClient

from main import app
from src.conf import config
from src.services.documents import to_json
from src.services.fixtures import diamond_document, six_point_document


@pytest.fixture(scope="module")
def client():
    yield TestClient(app)


@pytest.fixture(scope="function")
def rng():
    return Random(config.SEED)


@pytest.fixture(scope="function")
def write_doc(tmp_path):
    def write(document, name="input.json"):
        path = tmp_path / name
        path.write_text(to_json(document), encoding="utf-8")
        return str(path)
    return write


@pytest.fixture(scope="function")
def diamond():
    return diamond_document()


@pytest.fixture(scope="function")
def six_point():
    return six_point_document()


@pytest.fixture(autouse=True)
def size_limits():
    enforce = config.ENFORCE_LIMITS
    yield
    config.ENFORCE_LIMITS = enforce


@pytest.fixture(scope="module", autouse=True)
def time_budget(request):
    marker = request.node.get_closest_marker("budget")
    start = time.perf_counter()
    yield
    if marker is not None:
        elapsed = time.perf_counter() - start
        limit = marker.args[0]
        assert elapsed < limit, f"{request.node.name} took {elapsed:.1f}s, over its {limit}s budget"

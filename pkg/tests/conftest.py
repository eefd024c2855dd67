from __future__ import annotations

import sys
from pathlib import Path

import pytest

# figures.py lives next to the tests and is imported as a plain module
sys.path.insert(0, str(Path(__file__).parent))

from design_forge import Params, enumerate_classes  # noqa: E402


@pytest.fixture(scope="session")
def small_catalogs():
    """Catalogs that take well under a second each, keyed by (n, k, kind)."""
    cache: dict = {}

    def get(n: int, k: int, kind: str):
        key = (n, k, kind)
        if key not in cache:
            cache[key] = enumerate_classes(Params(n, k), kind)
        return cache[key]

    return get

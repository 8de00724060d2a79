import functools

import pytest

from charmax.arithmetic import enumerate_characters, unit_group
from charmax.charsums import sweep


@functools.lru_cache(maxsize=None)
def _swept(q: int, engine: str = "exact"):
    return sweep(q, engine=engine, workers=1)


@pytest.fixture
def swept():
    """Exact sweep tables, shared across tests (do not mutate them)."""
    return _swept


@pytest.fixture
def characters():
    """All characters mod q, principal first."""

    def build(q: int):
        return enumerate_characters(unit_group(q))

    return build


@pytest.fixture
def nonprincipal(characters):
    def build(q: int):
        return [chi for chi in characters(q) if not chi.is_principal]

    return build

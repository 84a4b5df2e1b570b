from functools import lru_cache

import pytest

from pglregular import gf, search


@lru_cache(maxsize=None)
def _regular_sets(q: int, require_identity: bool):
    cfg = search.SearchConfig(gf.field_of_order(q), require_identity=require_identity)
    return tuple(search.enumerate_regular_sets(cfg))


@pytest.fixture(scope="session")
def regular_sets():
    """``regular_sets(q, require_identity=True)`` -> tuple of verified RegularSets."""
    def get(q, require_identity=True):
        return _regular_sets(q, require_identity)
    return get

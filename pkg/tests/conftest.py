import pytest

from cfl import cluster as cl
from cfl.quiver import DynkinType, from_dynkin


@pytest.fixture(scope="session")
def get_pattern():
    """Session-cached (pattern, registry) pairs keyed by type string."""
    cache = {}

    def _get(spec: str):
        if spec not in cache:
            matrix = from_dynkin(DynkinType.parse(spec))
            cache[spec] = cl.enumerate_pattern(matrix)
        return cache[spec]

    return _get

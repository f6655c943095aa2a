import numpy as np
import pytest

from orbit_isom.fixtures import fixture_document
from orbit_isom.repr_model import enumerate_group, parse_spec
from orbit_isom.verification import _AnalysisMemo


@pytest.fixture(scope="session")
def memo():
    """Shared analysis cache so each source is analyzed once per session."""
    return _AnalysisMemo(seed=0, sample_count=200)


@pytest.fixture(scope="session")
def finite_group():
    cache = {}

    def build(name):
        if name not in cache:
            cache[name] = enumerate_group(parse_spec(fixture_document(name)))
        return cache[name]

    return build


def rot2(theta):
    c, s = np.cos(theta), np.sin(theta)
    return np.array([[c, -s], [s, c]])

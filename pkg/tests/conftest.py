import functools

import pytest

from topocount.core import Topology, from_preorder
from topocount.enumeration import iter_down_masks
from topocount.core import Preorder


@functools.lru_cache(maxsize=None)
def all_topologies(n):
    return tuple(from_preorder(Preorder.trusted(n, down)) for down in iter_down_masks(n))


@pytest.fixture
def topologies():
    return all_topologies


@pytest.fixture
def sierpinski():
    return Topology.of(2, [[], [0], [0, 1]])

from __future__ import annotations

import pytest

from blowups import ProximityForest


@pytest.fixture
def three_chain_mixed() -> ProximityForest:
    """Degrees 1, 1, 3 with 2 proximate to 1 and 3 proximate to 2."""
    return ProximityForest.make(4, (1, []), (1, [1]), (3, [2]))


@pytest.fixture
def three_chain_mixed_prime() -> ProximityForest:
    """Degrees 1, 2, 2 on the same proximity shape; same diagonal multiset, different form."""
    return ProximityForest.make(4, (1, []), (2, [1]), (2, [2]))


@pytest.fixture
def surface_chain() -> ProximityForest:
    """Two degree-1 points on a surface, the second proximate to the first."""
    return ProximityForest.make(2, (1, []), (1, [1]))

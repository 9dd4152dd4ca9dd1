import sys
from pathlib import Path

import pytest

from collusive.relations import Universe, new_relation

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "fixtures"
GOLDEN = Path(__file__).resolve().parent / "golden"

sys.path.insert(0, str(Path(__file__).resolve().parent))


def one_based(n, pairs):
    """A relation on {1..n} written with 1-based pairs."""
    u = Universe(n, tuple(str(i) for i in range(1, n + 1)))
    return new_relation(u, [(x - 1, y - 1) for x, y in pairs])


@pytest.fixture
def fixtures_dir():
    return FIXTURES

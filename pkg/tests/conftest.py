from functools import lru_cache

import pytest

from twistloop import CartanType
from twistloop.report import TwistSpec, TwistReport, compute


@lru_cache(maxsize=None)
def cached_report(family: str, rank: int, automorphism: str = "identity",
                  truncation: int = 50) -> TwistReport:
    """Shared pipeline runs; each (type, automorphism) is computed once per
    test session."""
    spec = TwistSpec(CartanType(family, rank), automorphism, truncation=truncation)
    return compute(spec)


@pytest.fixture
def report():
    return cached_report

import random
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "suite",
    deadline=None,
    max_examples=30,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("suite")

GOLD = Path(__file__).parent / "data" / "golden"


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)


@pytest.fixture
def gold():
    return GOLD

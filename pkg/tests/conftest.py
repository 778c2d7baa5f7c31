import random

import pytest


@pytest.fixture
def rng() -> random.Random:
    """Deterministic generator; tests that need a different stream seed their own."""
    return random.Random(20240811)

"""Shared test helpers."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from kcof import GameInstance


def random_instance(rng: random.Random, n_lo: int = 3, n_hi: int = 10) -> GameInstance:
    """k=1 instance with sorted integer beliefs in [0, 100]."""
    n = rng.randint(n_lo, n_hi)
    beliefs = sorted(rng.randint(0, 100) for _ in range(n))
    return GameInstance(k=1, beliefs=tuple(Fraction(b) for b in beliefs))


@pytest.fixture
def rng() -> random.Random:
    return random.Random(0xC0F)

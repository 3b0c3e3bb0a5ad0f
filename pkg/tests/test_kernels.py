"""Kernel parity: compiled extension vs pure Python vs the Fraction reference."""

from __future__ import annotations

import random
from fractions import Fraction as F
from math import lcm

import pytest

import kcof._accel as accel
import kcof._kernels_py as kpy
from kcof import GameInstance, is_pure_nash, player_cost, social_cost

try:
    import kcof._kernels as kc
except ImportError:
    kc = None

needs_compiled = pytest.mark.skipif(kc is None, reason="compiled extension not built")


def random_case(rng: random.Random):
    n = rng.randint(2, 12)
    k = rng.randint(1, n - 1)
    # small ranges on purpose: exact ties must be frequent
    s = sorted(rng.randint(0, 12) for _ in range(n))
    z = [rng.randint(-3, 15) for _ in range(n)]
    return s, z, k


@needs_compiled
class TestCompiledParity:
    def test_matches_pure_python(self, rng):
        for _ in range(300):
            s, z, k = random_case(rng)
            assert kc.social_cost(s, z, k) == kpy.social_cost(s, z, k)
            assert kc.first_unstable(s, z, k) == kpy.first_unstable(s, z, k)
            for i in range(len(s)):
                assert kc.player_cost(s, z, k, i) == kpy.player_cost(s, z, k, i)

    def test_coordinate_best_parity(self, rng):
        for _ in range(50):
            s, z, k = random_case(rng)
            cands = sorted({rng.randint(-3, 15) for _ in range(8)})
            i = rng.randrange(len(s))
            assert kc.coordinate_best(s, z, k, i, cands) == kpy.coordinate_best(
                s, z, k, i, cands
            )


class TestReferenceParity:
    def test_matches_fraction_reference(self, rng):
        for _ in range(150):
            s, z, k = random_case(rng)
            inst = GameInstance(k=k, beliefs=tuple(F(v) for v in s))
            zf = tuple(F(v) for v in z)
            assert accel.social_cost(s, z, k) == social_cost(inst, zf)
            for i in range(len(s)):
                assert accel.player_cost(s, z, k, i) == player_cost(inst, zf, i)
            assert (accel.first_unstable(s, z, k) == -1) == is_pure_nash(inst, zf).is_pne

    def test_scaled_rationals_round_trip(self, rng):
        for _ in range(50):
            n = rng.randint(2, 8)
            k = rng.randint(1, n - 1)
            beliefs = tuple(
                sorted(F(rng.randint(0, 60), rng.randint(1, 6)) for _ in range(n))
            )
            z = tuple(F(rng.randint(-30, 90), rng.randint(1, 6)) for _ in range(n))
            inst = GameInstance(k=k, beliefs=beliefs)
            denom = lcm(*[v.denominator for v in beliefs + z])
            s_int = [int(v * denom) for v in beliefs]
            z_int = [int(v * denom) for v in z]
            assert F(accel.social_cost(s_int, z_int, k), denom) == social_cost(inst, z)


class TestBigIntFallback:
    def test_dispatch_beyond_int64(self):
        # values near 2**80: the accel layer must route to the Python kernels
        base = 1 << 80
        s = [0, base, 2 * base]
        z = [base // 2, base, 3 * base // 2]
        assert accel.social_cost(s, z, 1) == kpy.social_cost(s, z, 1)
        assert accel.first_unstable(s, z, 1) == kpy.first_unstable(s, z, 1)

    def test_small_values_still_exact(self):
        s = [0, 3, 4, 7]
        z = [1, 2, 5, 6]
        # exact boundary ties: both tie rules must agree between backends
        assert accel.first_unstable(s, z, 1) == kpy.first_unstable(s, z, 1)

"""Optimizer: feasibility, dominance over starts, known upper bounds."""

from __future__ import annotations

from fractions import Fraction as F

import pytest

from kcof import GameInstance, opt_lower_bound_k, social_cost
from kcof.catalog import catalog_entry
from kcof.optimize import OptimizerConfig, candidate_opinions, optimize_social_cost


class TestConfig:
    def test_defaults(self):
        cfg = OptimizerConfig()
        assert (cfg.candidate_grid_extra, cfg.max_sweeps, cfg.restarts, cfg.seed) == (2, 200, 8, 0)

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"candidate_grid_extra": -1},
            {"max_sweeps": 0},
            {"restarts": -2},
            {"seed": -1},
        ],
    )
    def test_validation(self, kwargs):
        with pytest.raises(ValueError):
            OptimizerConfig(**kwargs)


class TestCandidates:
    def test_grid_contains_beliefs_midpoints_thirds(self):
        inst = GameInstance(k=1, beliefs=(0, 9, 12, 21))
        cands = set(candidate_opinions(inst, 0))
        assert {F(0), F(9), F(12), F(21)} <= cands
        assert F(9, 2) in cands  # midpoint of 0 and 9
        assert F(3) in cands and F(6) in cands  # third-points of 0 and 9

    def test_refinement_adds_adjacent_midpoints(self):
        inst = GameInstance(k=1, beliefs=(0, 4))
        level0 = candidate_opinions(inst, 0)
        level1 = set(candidate_opinions(inst, 1))
        for u, v in zip(level0, level0[1:]):
            assert (u + v) / 2 in level1


class TestKnownValues:
    @pytest.mark.parametrize("k", [3, 4, 5])
    def test_star_reaches_herding(self, k):
        inst = GameInstance(k=k, beliefs=(0,) * k + (1,))
        _, cost = optimize_social_cost(inst)
        assert cost <= 1

    def test_sevenths_instance(self):
        inst = GameInstance(k=2, beliefs=(0, 1, 1, 2))
        _, cost = optimize_social_cost(inst)
        assert cost <= F(3, 2)

    def test_blocks_k2_with_seed(self):
        entry = catalog_entry("poa_blocks", k=2)
        starts = [r.opinions for r in entry.references if r.opinions is not None]
        _, cost = optimize_social_cost(entry.instance, starts=starts)
        assert cost <= F(5, 3) * F(9, 2)  # (5/3)(4 + 1/2)

    def test_chain_with_seed(self):
        entry = catalog_entry("pos_chain", k=1, lam=F(1, 10))
        starts = [r.opinions for r in entry.references if r.opinions is not None]
        _, cost = optimize_social_cost(entry.instance, starts=starts)
        assert cost <= 10 + F(12, 10)


class TestInvariants:
    def test_reported_cost_is_recomputable(self):
        inst = GameInstance(k=1, beliefs=(0, 9, 12, 21))
        z, cost = optimize_social_cost(inst)
        assert len(z) == inst.n
        assert social_cost(inst, z) == cost

    def test_dominates_truthful_and_starts(self):
        entry = catalog_entry("poa_chain", k=1)
        inst = entry.instance
        starts = [r.opinions for r in entry.references if r.opinions is not None]
        _, cost = optimize_social_cost(inst, starts=starts)
        assert cost <= social_cost(inst, inst.beliefs)
        for st in starts:
            assert cost <= social_cost(inst, st)

    def test_never_below_the_window_bound(self):
        for beliefs in [(0, 9, 12, 21), (0, 0, 7, 7), (1, 2, 3, 4, 5)]:
            inst = GameInstance(k=1, beliefs=beliefs)
            _, cost = optimize_social_cost(inst)
            assert cost >= opt_lower_bound_k(inst)

    def test_deterministic_given_seed(self):
        inst = GameInstance(k=2, beliefs=(0, 1, 1, 2))
        cfg = OptimizerConfig(seed=123)
        assert optimize_social_cost(inst, cfg) == optimize_social_cost(inst, cfg)

"""Heuristic upper bound on the optimal social cost.

No component of this package computes the exact optimum (its complexity is
open); instead, coordinate descent over a structured candidate grid produces
a feasible opinion vector whose exact social cost upper-bounds the optimum.
The grid contains every belief, all pairwise belief midpoints, and both
third-points of every belief pair - the lattice on which all known optimal
and near-optimal vectors for the catalog instances sit - optionally refined
by inserting midpoints between adjacent candidates.

The cost surface is piecewise linear with jumps where neighborhoods change,
so each coordinate move re-evaluates the full social cost exactly.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Optional, Sequence

from . import _accel
from .game import GameInstance, Opinions, as_opinions, social_cost

__all__ = ["OptimizerConfig", "candidate_opinions", "optimize_social_cost"]


@dataclass(frozen=True)
class OptimizerConfig:
    candidate_grid_extra: int = 2  # refinement levels
    max_sweeps: int = 200
    restarts: int = 8
    seed: int = 0

    def __post_init__(self) -> None:
        if self.candidate_grid_extra < 0:
            raise ValueError("candidate_grid_extra must be >= 0")
        if self.max_sweeps < 1:
            raise ValueError("max_sweeps must be >= 1")
        if self.restarts < 0:
            raise ValueError("restarts must be >= 0")
        if self.seed < 0:
            raise ValueError("seed must be >= 0")


def candidate_opinions(inst: GameInstance, extra_levels: int = 2) -> tuple[Fraction, ...]:
    """Beliefs, pairwise midpoints, third-points, plus refinement midpoints."""
    distinct = sorted(set(inst.beliefs))
    cands = set(distinct)
    for x in distinct:
        for y in distinct:
            if x < y:
                cands.add((x + y) / 2)
                cands.add((2 * x + y) / 3)
                cands.add((x + 2 * y) / 3)
    for _ in range(extra_levels):
        ordered = sorted(cands)
        for u, v in zip(ordered, ordered[1:]):
            cands.add((u + v) / 2)
    return tuple(sorted(cands))


def _descend(
    s: list[int], z: list[int], k: int, cands: list[int], max_sweeps: int
) -> tuple[int, list[int]]:
    """Coordinate descent to a sweep-stable vector; cost never increases."""
    cost = _accel.social_cost(s, z, k)
    for _ in range(max_sweeps):
        sweep_start = cost
        for i in range(len(s)):
            best_cost, best_y = _accel.coordinate_best(s, z, k, i, cands)
            if best_cost < cost:
                z[i] = best_y
                cost = best_cost
        assert cost <= sweep_start  # descent must never go uphill
        if cost == sweep_start:
            break
    return cost, z


def optimize_social_cost(
    inst: GameInstance,
    config: Optional[OptimizerConfig] = None,
    starts: Sequence[Sequence] = (),
) -> tuple[Opinions, Fraction]:
    """Best feasible vector found; its exact social cost bounds the optimum.

    Multi-start: the truthful vector, every caller-supplied start (catalog
    reference vectors, typically), and seeded random candidate assignments.
    Deterministic for a fixed config; ties prefer the lexicographically
    smallest vector.
    """
    cfg = config or OptimizerConfig()
    cands = candidate_opinions(inst, cfg.candidate_grid_extra)
    extra_starts = [as_opinions(inst, st) for st in starts]

    all_values = [*inst.beliefs, *cands]
    for st in extra_starts:
        all_values.extend(st)
    denom = lcm(*[v.denominator for v in all_values])
    s_int = [int(v * denom) for v in inst.beliefs]
    cand_int = [int(v * denom) for v in cands]

    start_vectors: list[list[int]] = [[int(v * denom) for v in inst.beliefs]]
    # herding starts: single-coordinate descent cannot merge a spread-out
    # vector onto one point, so seed one uniform start per distinct belief
    for b in sorted(set(inst.beliefs)):
        start_vectors.append([int(b * denom)] * inst.n)
    for st in extra_starts:
        start_vectors.append([int(v * denom) for v in st])
    rng = random.Random(cfg.seed)
    for _ in range(cfg.restarts):
        start_vectors.append([rng.choice(cand_int) for _ in range(inst.n)])

    best: Optional[tuple[int, tuple[int, ...]]] = None
    for z0 in start_vectors:
        cost, z = _descend(s_int, list(z0), inst.k, cand_int, cfg.max_sweeps)
        key = (cost, tuple(z))
        if best is None or key < best:
            best = key
    assert best is not None
    cost_int, z_int = best
    opinions = tuple(Fraction(v, denom) for v in z_int)
    cost = Fraction(cost_int, denom)
    check = social_cost(inst, opinions)
    if check != cost:
        raise AssertionError(
            f"optimizer bookkeeping mismatch: kernel {cost} vs reference {check}"
        )
    return opinions, cost

"""Closed-form bounds on optimal social cost and equilibrium player costs.

The optimal social cost of an instance is bracketed from below by belief-only
sums (no solver involved): a general-k bound driven by the tightest window of
k+1 consecutive beliefs around each player, and a sharper k=1 bound driven by
each player's nearest belief neighbor.  The same two quantities cap the cost
a player can suffer at any pure Nash equilibrium, which pins the worst-case
equilibrium/optimum ratio at 4(k+1) in general and 3 for k=1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from . import segments
from .game import GameInstance, Opinions, as_opinions, is_pure_nash, social_cost
from .optimize import OptimizerConfig, optimize_social_cost
from .rationals import to_fraction

__all__ = [
    "star_window",
    "eta",
    "opt_lower_bound_k",
    "opt_lower_bound_1",
    "pne_player_cost_cap",
    "pne_player_cost_cap_1",
    "SmallChainConditions",
    "small_chain_conditions",
    "PoaBracket",
    "poa_bracket",
]


def star_window(inst: GameInstance, i: int) -> tuple[int, int]:
    """Tightest window of k+1 consecutive beliefs containing player i.

    Returns (l, r) with r - l = k and minimal s_r - s_l; ties take the
    smallest l.
    """
    if not 0 <= i < inst.n:
        raise IndexError(f"player index {i} out of range")
    s = inst.beliefs
    k = inst.k
    best: Optional[tuple[Fraction, int]] = None
    for left in range(max(0, i - k), min(i, inst.n - 1 - k) + 1):
        span = s[left + k] - s[left]
        if best is None or span < best[0]:
            best = (span, left)
    assert best is not None  # n >= k+1 guarantees one window
    return best[1], best[1] + k


def eta(inst: GameInstance, i: int) -> int:
    """The adjacent player with the closest belief; ties prefer i-1."""
    if not 0 <= i < inst.n:
        raise IndexError(f"player index {i} out of range")
    if inst.n < 2:
        raise ValueError("eta needs at least two players")
    s = inst.beliefs
    candidates = [j for j in (i - 1, i + 1) if 0 <= j < inst.n]
    return min(candidates, key=lambda j: (abs(s[i] - s[j]), j))


def opt_lower_bound_k(inst: GameInstance) -> Fraction:
    """(1/(2(k+1))) * sum of star-window widths: a floor under every SC(z)."""
    s = inst.beliefs
    total = Fraction(0)
    for i in range(inst.n):
        left, right = star_window(inst, i)
        total += s[right] - s[left]
    return total / (2 * (inst.k + 1))


def opt_lower_bound_1(inst: GameInstance) -> Fraction:
    """(1/3) * sum of nearest-belief distances; valid for k=1 only."""
    if inst.k != 1:
        raise ValueError("this bound applies to k=1 games only")
    s = inst.beliefs
    return sum((abs(s[i] - s[eta(inst, i)]) for i in range(inst.n)), Fraction(0)) / 3


def pne_player_cost_cap(inst: GameInstance, i: int) -> Fraction:
    """2 * (star-window width): caps cost_i at any pure Nash equilibrium."""
    left, right = star_window(inst, i)
    return 2 * (inst.beliefs[right] - inst.beliefs[left])


def pne_player_cost_cap_1(inst: GameInstance, i: int) -> Fraction:
    """|s_i - s_eta(i)|: the sharper k=1 equilibrium cost cap."""
    if inst.k != 1:
        raise ValueError("this cap applies to k=1 games only")
    return abs(inst.beliefs[i] - inst.beliefs[eta(inst, i)])


@dataclass(frozen=True)
class SmallChainConditions:
    """Necessary conditions on a middle belief for two three-player pointer
    patterns to coexist with an equilibrium (non-strict, exact)."""

    case1_ok: bool  # s_b >= (3 s_a + 5 s_c) / 8
    case2_ok: bool  # s_b <= (5 s_a + 3 s_c) / 8


def small_chain_conditions(s_a, s_b, s_c) -> SmallChainConditions:
    a, b, c = to_fraction(s_a), to_fraction(s_b), to_fraction(s_c)
    if not a <= b <= c:
        raise ValueError("need s_a <= s_b <= s_c")
    return SmallChainConditions(
        case1_ok=b >= (3 * a + 5 * c) / 8,
        case2_ok=b <= (5 * a + 3 * c) / 8,
    )


@dataclass(frozen=True)
class PoaBracket:
    """Certified interval around an instance's price of anarchy.

    ratio_lower <= true PoA <= ratio_upper whenever both are defined;
    the exact PoA itself would need the exact optimum, which no component
    here computes.
    """

    worst_pne_cost: Optional[Fraction]
    opt_lower: Fraction
    opt_upper: Fraction
    ratio_lower: Optional[Fraction]
    ratio_upper: Optional[Fraction]
    ratio_upper_unbounded: bool = False


def poa_bracket(
    inst: GameInstance,
    opt_upper_hint: Optional[Fraction] = None,
    *,
    known_pne: Optional[Sequence] = None,
    use_optimizer: bool = True,
    optimizer_config: Optional[OptimizerConfig] = None,
    reference_starts: Sequence[Opinions] = (),
) -> PoaBracket:
    """Bracket the price of anarchy from closed-form bounds plus the optimizer.

    For k=1 the worst equilibrium comes from the segment solver; for k >= 2 a
    caller-supplied equilibrium (``known_pne``, verified here) stands in, or
    the equilibrium side is reported absent.
    """
    worst_cost: Optional[Fraction] = None
    if inst.k == 1:
        found = segments.worst_pne(inst)
        if found is not None:
            worst_cost = found[1]
    elif known_pne is not None:
        z = as_opinions(inst, known_pne)
        if not is_pure_nash(inst, z).is_pne:
            raise ValueError("known_pne does not pass the equilibrium check")
        worst_cost = social_cost(inst, z)

    opt_lower = opt_lower_bound_k(inst)
    if inst.k == 1:
        opt_lower = max(opt_lower, opt_lower_bound_1(inst))

    uppers: list[Fraction] = []
    if use_optimizer:
        _, cost = optimize_social_cost(inst, optimizer_config, starts=reference_starts)
        uppers.append(cost)
    if opt_upper_hint is not None:
        uppers.append(to_fraction(opt_upper_hint))
    if not uppers:
        # the truthful vector is always feasible
        uppers.append(social_cost(inst, inst.beliefs))
    opt_upper = min(uppers)

    ratio_lower: Optional[Fraction] = None
    ratio_upper: Optional[Fraction] = None
    unbounded = False
    if worst_cost is not None:
        if opt_upper > 0:
            ratio_lower = worst_cost / opt_upper
        elif worst_cost == 0:
            ratio_lower = Fraction(1)  # degenerate: all quantities zero
        if opt_lower > 0:
            ratio_upper = worst_cost / opt_lower
        elif worst_cost == 0:
            ratio_upper = Fraction(1)
        else:
            unbounded = True
    return PoaBracket(
        worst_pne_cost=worst_cost,
        opt_lower=opt_lower,
        opt_upper=opt_upper,
        ratio_lower=ratio_lower,
        ratio_upper=ratio_upper,
        ratio_upper_unbounded=unbounded,
    )

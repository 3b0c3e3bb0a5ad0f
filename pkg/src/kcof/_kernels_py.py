"""Pure-Python integer kernels.

These mirror the compiled extension in ``_kernels.pyx`` and serve two roles:
the fallback when no compiled extension is available, and the
arbitrary-precision path when scaled values exceed the int64 guard used by
the extension.

All inputs are plain ints at one shared scale (beliefs and opinions multiplied
by a common denominator).  Neighbor selection orders candidates by
(|z_j - s_i|, |z_j - z_i|, j): distance to the player's belief first, ties
toward her own opinion, then smallest index.  Best-response midpoints are
tested without division via 2*z_i == lo + hi.
"""

from __future__ import annotations

from typing import Sequence


def _chosen(s: Sequence[int], z: Sequence[int], k: int, i: int) -> list[int]:
    si = s[i]
    zi = z[i]
    ranked = sorted(
        (abs(z[j] - si), abs(z[j] - zi), j) for j in range(len(s)) if j != i
    )
    return [j for _, _, j in ranked[:k]]


def player_cost(s: Sequence[int], z: Sequence[int], k: int, i: int) -> int:
    """Max distance from z_i to the player's belief and chosen neighbors."""
    zi = z[i]
    cost = abs(zi - s[i])
    for j in _chosen(s, z, k, i):
        d = abs(z[j] - zi)
        if d > cost:
            cost = d
    return cost


def social_cost(s: Sequence[int], z: Sequence[int], k: int) -> int:
    return sum(player_cost(s, z, k, i) for i in range(len(s)))


def first_unstable(s: Sequence[int], z: Sequence[int], k: int) -> int:
    """Index of the first player whose opinion is not her exact best response.

    Returns -1 when the vector is a pure Nash equilibrium under the kernel's
    tie-break.
    """
    for i in range(len(s)):
        si = s[i]
        lo = hi = si
        for j in _chosen(s, z, k, i):
            v = z[j]
            if v < lo:
                lo = v
            elif v > hi:
                hi = v
        if 2 * z[i] != lo + hi:
            return i
    return -1


def coordinate_best(
    s: Sequence[int],
    z: Sequence[int],
    k: int,
    i: int,
    candidates: Sequence[int],
) -> tuple[int, int]:
    """Best (social cost, opinion) over candidate opinions for player i.

    Evaluates the full social cost for each candidate (moving one opinion can
    change every neighborhood); ties prefer the smallest candidate value.
    """
    work = list(z)
    best_cost = -1
    best_y = 0
    for y in candidates:
        work[i] = y
        c = social_cost(s, work, k)
        if best_cost < 0 or c < best_cost or (c == best_cost and y < best_y):
            best_cost = c
            best_y = y
    return best_cost, best_y

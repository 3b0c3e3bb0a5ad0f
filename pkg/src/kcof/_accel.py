"""Kernel selection: compiled int64 extension when safe, pure Python otherwise.

The compiled kernels require every scaled value to stay far enough from the
int64 boundary that distances (2x) and social-cost sums (n terms) cannot
overflow.  Values beyond the guard are routed to the pure-Python kernels,
which accept arbitrary-precision ints.
"""

from __future__ import annotations

from typing import Sequence

from . import _kernels_py

try:
    from . import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None

BACKEND = "compiled" if _compiled is not None else "python"


def _guard(n: int) -> int:
    return (1 << 62) // (4 * max(n, 1))


def _fits(n: int, *groups: Sequence[int]) -> bool:
    if _compiled is None:
        return False
    limit = _guard(n)
    return all(-limit <= v <= limit for vs in groups for v in vs)


def player_cost(s: Sequence[int], z: Sequence[int], k: int, i: int) -> int:
    mod = _compiled if _fits(len(s), s, z) else _kernels_py
    return mod.player_cost(s, z, k, i)


def social_cost(s: Sequence[int], z: Sequence[int], k: int) -> int:
    mod = _compiled if _fits(len(s), s, z) else _kernels_py
    return mod.social_cost(s, z, k)


def first_unstable(s: Sequence[int], z: Sequence[int], k: int) -> int:
    mod = _compiled if _fits(len(s), s, z) else _kernels_py
    return mod.first_unstable(s, z, k)


def coordinate_best(
    s: Sequence[int], z: Sequence[int], k: int, i: int, candidates: Sequence[int]
) -> tuple[int, int]:
    mod = _compiled if _fits(len(s), s, z, candidates) else _kernels_py
    return mod.coordinate_best(s, z, k, i, candidates)

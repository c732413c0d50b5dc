"""Exact maximal-chain statistics on the Boolean lattice and the chain-based bounds.

All counts are exact integers. The level-order DPs run on int64 whenever
the largest possible intermediate value provably fits, and fall back to
Python integers (object arrays) otherwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .core import MAX_FORMULA_DIM, Family, binomial, level_ranks, level_vertices, popcounts

MAX_CHAIN_DIM = 24
_INT64_SAFE = 1 << 62


@dataclass(frozen=True)
class LubellValue:
    n: int
    numerator: int  # sum of |F|! (n-|F|)! over the family; lambda = numerator / n!

    @property
    def value(self) -> Fraction:
        return Fraction(self.numerator, math.factorial(self.n))


@dataclass(frozen=True)
class ChainStats:
    """``counts[t]`` = number of maximal chains meeting the family in exactly ``t`` sets.

    When built with a cap, the last entry aggregates all ``t >= cap``.
    """

    n: int
    counts: tuple[int, ...]
    cap: Optional[int] = None

    @property
    def total(self) -> int:
        return sum(self.counts)

    @property
    def incidence(self) -> int:
        if self.cap is not None:
            raise ValueError("incidence sum undefined for a capped profile")
        return sum(t * c for t, c in enumerate(self.counts))


def _check_chain_dim(f: Family) -> None:
    if f.n > MAX_CHAIN_DIM:
        raise ValueError(f"chain DP supports n <= {MAX_CHAIN_DIM}, got {f.n}")


def lubell(f: Family) -> LubellValue:
    fact = [math.factorial(i) for i in range(f.n + 1)]
    num = sum(c * fact[i] * fact[f.n - i] for i, c in enumerate(f.level_hist))
    return LubellValue(f.n, num)


def _level_step(n: int, lev: int, prev: np.ndarray, dtype) -> np.ndarray:
    """Sum ``prev`` (indexed by rank within level ``lev - 1``) over in-neighbours of level ``lev``."""
    verts = level_vertices(n)[lev]
    rank = level_ranks(n)
    acc = np.zeros((len(verts),) + prev.shape[1:], dtype=dtype)
    if dtype is object:
        acc[...] = 0
    for b in range(n):
        has = (verts >> b) & 1 == 1
        sub = verts[has]
        acc[has] += prev[rank[sub & ~(1 << b)]]
    return acc


def chain_profile(f: Family, cap: Optional[int] = None) -> ChainStats:
    """Exact chain profile ``C_0..C_{n+1}`` by a level-by-level DP.

    ``ways[v, t]`` counts cover paths from the empty set to ``v`` that contain
    exactly ``t`` family members. Only two level slices are held at once.
    With ``cap`` the ``t`` axis is truncated to ``0..cap`` (last bucket = ``>= cap``).
    """
    _check_chain_dim(f)
    n, mem = f.n, f.members
    width = n + 2 if cap is None else cap + 1
    dtype = np.int64 if math.factorial(n) < _INT64_SAFE else object
    prev = np.zeros((1, width), dtype=dtype)
    if dtype is object:
        prev[...] = 0
    prev[0, min(1, width - 1) if mem[0] else 0] = 1
    for lev in range(1, n + 1):
        cur = _level_step(n, lev, prev, dtype)
        hit = mem[level_vertices(n)[lev]]
        if hit.any():
            shifted = np.zeros_like(cur[hit])
            if dtype is object:
                shifted[...] = 0
            shifted[:, 1:] = cur[hit][:, :-1]
            shifted[:, -1] += cur[hit][:, -1]
            cur[hit] = shifted
        prev = cur
    return ChainStats(n, tuple(int(x) for x in prev[0]), cap)


def fat_chain_count(f: Family, k: int) -> int:
    """Number of maximal chains containing at least ``k`` family members."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if k > f.n + 1:
        return 0
    return chain_profile(f, cap=k).counts[k]


def total_chain_weight(f: Family) -> int:
    """Sum over maximal chains of the weights ``binomial(n, |F|)`` of their members.

    Computed by an independent DP (``W[v]`` = total weight over cover paths
    from the empty set to ``v``), not from the closed form ``|f| * n!``.
    """
    _check_chain_dim(f)
    n, mem = f.n, f.members
    bound = (1 << n) * math.factorial(n)
    dtype = np.int64 if bound < _INT64_SAFE else object
    fact = [math.factorial(i) for i in range(n + 1)]
    prev = np.array([binomial(n, 0) if mem[0] else 0], dtype=dtype)
    for lev in range(1, n + 1):
        cur = _level_step(n, lev, prev, dtype)
        hit = mem[level_vertices(n)[lev]]
        cur[hit] += binomial(n, lev) * fact[lev]
        prev = cur
    return int(prev[0])


# closed forms and bounds (no family materialised; n <= 200)

def _check_nk(n: int, k: int) -> None:
    if not 1 <= n <= MAX_FORMULA_DIM:
        raise ValueError(f"n={n} outside 1..{MAX_FORMULA_DIM}")
    if not 1 <= k <= n:
        raise ValueError(f"k={k} outside 1..{n}")


def residue_sums(n: int, k: int) -> dict[int, int]:
    """``{j: sum of binomial(n, i) over i = j mod k}`` for ``j`` in ``1..k``."""
    _check_nk(n, k)
    sums = {j: 0 for j in range(1, k + 1)}
    for i in range(n + 1):
        j = i % k or k
        sums[j] += binomial(n, i)
    return sums


def best_residue(n: int, k: int) -> int:
    """Residue class whose levels are cheapest to drop; ties go to the smallest ``j``."""
    sums = residue_sums(n, k)
    return min(sums, key=lambda j: (sums[j], j))


def formula_pk(n: int, k: int) -> int:
    """Closed form ``max_j sum_{i != j mod k} binomial(n, i)`` for directed paths."""
    return (1 << n) - residue_sums(n, k)[best_residue(n, k)]


def pk_weight_bound(n: int, k: int) -> int:
    """Best chain weight over admissible excluded-level sequences, by direct DP.

    The excluded levels ``a_1 < ... < a_t`` must satisfy ``a_1 <= k - 1``,
    ``a_t >= n - k + 1`` and consecutive gaps ``<= k``; the weight is
    ``2**n - sum binomial(n, a_i)``.
    """
    _check_nk(n, k)
    cost: list[Optional[int]] = [None] * (n + 1)
    for a in range(n + 1):
        reach = [cost[b] for b in range(max(0, a - k), a) if cost[b] is not None]
        if a <= k - 1:
            reach.append(0)
        if reach:
            cost[a] = binomial(n, a) + min(reach)
    return (1 << n) - min(cost[a] for a in range(n - k + 1, n + 1) if cost[a] is not None)


def tail_mass(n: int) -> int:
    """Number of sets of size ``<= floor(n/4)`` or ``>= ceil(3n/4)``."""
    lo, hi = n // 4, -(-3 * n // 4)
    return sum(binomial(n, i) for i in range(n + 1) if i <= lo or i >= hi)


def tree_upper_estimate(n: int, h: int, t_size: int) -> int:
    """Asymptotic-only size estimate for trees of height ``h`` on ``t_size`` vertices.

    ``ceil([(h-1 + 4h t^2/n)(2^n + h C(n, n//2)) + h tail(n)] / h)``. This is
    NOT a certified bound at finite ``n``: the underlying lemma only holds
    past an unspecified threshold dimension.
    """
    if not 1 <= n <= MAX_FORMULA_DIM:
        raise ValueError(f"n={n} outside 1..{MAX_FORMULA_DIM}")
    if not 2 <= h <= t_size <= 16:
        raise ValueError("need 2 <= h <= t_size <= 16")
    slack = Fraction(h - 1) + Fraction(4 * h * t_size * t_size, n)
    total = slack * ((1 << n) + h * binomial(n, n // 2)) + h * tail_mass(n)
    return math.ceil(total / h)

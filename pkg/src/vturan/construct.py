"""Level-selection constructions giving lower bounds on the vertex Turan number."""

from __future__ import annotations

from typing import Iterable

import numpy as np

from .chains import best_residue, residue_sums
from .core import MAX_FORMULA_DIM, Family, binomial, check_dim, popcounts
from .detect import longest_directed_path, max_out_cover_degree
from .pattern import Pattern, as_out_star, pattern_info


def _check_levels(n: int, levels: Iterable[int]) -> frozenset[int]:
    levels = frozenset(int(i) for i in levels)
    bad = [i for i in levels if not 0 <= i <= n]
    if bad:
        raise ValueError(f"levels {sorted(bad)} outside 0..{n}")
    return levels


def levels_size(n: int, levels: Iterable[int]) -> int:
    if not 1 <= n <= MAX_FORMULA_DIM:
        raise ValueError(f"n={n} outside 1..{MAX_FORMULA_DIM}")
    return sum(binomial(n, i) for i in _check_levels(n, levels))


def levels_family(n: int, levels: Iterable[int]) -> Family:
    """All vertices whose level is in ``levels``."""
    n = check_dim(n)
    levels = _check_levels(n, levels)
    keep = np.zeros(n + 1, dtype=bool)
    keep[list(levels)] = True
    return Family(n, keep[popcounts(n)])


def residue_levels(n: int, k: int, j: int) -> list[int]:
    if not 1 <= k <= n:
        raise ValueError(f"k={k} outside 1..{n}")
    if not 1 <= j <= k:
        raise ValueError(f"j={j} outside 1..{k}")
    return [i for i in range(n + 1) if (i - j) % k]


def residue_levels_family(n: int, k: int, j: int) -> Family:
    """Levels ``i`` with ``i != j (mod k)``; no ``k`` consecutive levels survive, so it is P_k-free."""
    return levels_family(n, residue_levels(n, k, j))


def best_residue_family(n: int, k: int) -> Family:
    return residue_levels_family(n, k, best_residue(n, k))


def best_residue_size(n: int, k: int) -> int:
    sums = residue_sums(n, k)
    return (1 << n) - sums[best_residue(n, k)]


def v2_levels(n: int) -> list[int]:
    if n < 2:
        raise ValueError("V_2 construction needs n >= 2")
    return list(range(n - 1, -1, -2))


def v2_family(n: int) -> Family:
    """Every second level downward from ``n - 1``, plus the full set ``[n]``."""
    return levels_family(n, v2_levels(n) + [n])


def v2_size(n: int) -> int:
    return levels_size(n, v2_levels(n) + [n])


def vr_levels(n: int, r: int) -> list[int]:
    """Top ``r`` levels, a one-level gap, then alternate levels downward."""
    if not 2 <= r <= n:
        raise ValueError(f"r={r} outside 2..{n}")
    return list(range(n, n - r, -1)) + list(range(n - r - 1, -1, -2))


def vr_family(n: int, r: int) -> Family:
    f = levels_family(n, vr_levels(n, r))
    deg, _ = max_out_cover_degree(f)
    if deg >= r:
        raise RuntimeError(f"V_{r} construction at n={n} has out-degree {deg}")
    return f


def vr_size(n: int, r: int) -> int:
    return levels_size(n, vr_levels(n, r))


def _construction_plan(n: int, p: Pattern) -> tuple[str, list[int] | int]:
    h = pattern_info(p).height
    r = as_out_star(p)
    if h == 1:
        return "first-vertices", min(p.m - 1, 1 << n)
    if h > n + 1 or (r is not None and r > n):
        return "whole-cube", list(range(n + 1))
    if r is not None:
        return f"vr_family(r={r})", vr_levels(n, r)
    if h == n + 1:
        return "drop-empty-set", list(range(1, n + 1))
    j = best_residue(n, h)
    return f"residue_levels(k={h}, j={j})", residue_levels(n, h, j)


def best_construction_size(n: int, p: Pattern) -> tuple[int, str]:
    """Size of :func:`best_construction`, from binomials only (valid up to n = 200)."""
    label, plan = _construction_plan(n, p)
    if isinstance(plan, int):
        return plan, label
    return levels_size(n, plan), label


def best_construction(n: int, p: Pattern) -> tuple[Family, str]:
    """Largest builtin construction that avoids ``p``.

    Any copy of a pattern of height ``h`` contains a directed path on ``h``
    vertices, so the best ``P_h``-free residue family works for every pattern.
    Out-stars use the dedicated top-block layout instead.
    """
    n = check_dim(n)
    label, plan = _construction_plan(n, p)
    if isinstance(plan, int):
        return Family.from_vertices(n, range(plan)), label
    if label.startswith("vr_family"):
        return vr_family(n, as_out_star(p)), label
    f = levels_family(n, plan)
    if label != "whole-cube" and longest_directed_path(f)[0] >= pattern_info(p).height:
        raise RuntimeError(f"{label} contains a path as long as the pattern height")
    return f, label

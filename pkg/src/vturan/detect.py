"""Copy detection: does ``Q_n[f]`` contain a (not necessarily induced) copy of a pattern?

A copy maps pattern vertices injectively into the family so that every
pattern edge ``u -> v`` lands on a cover edge ``A -> A | {x}``.
"""

from __future__ import annotations

from typing import Iterator, Optional

import numpy as np

from .core import Family, level_vertices, popcounts
from .pattern import Pattern, as_out_star, as_path, pattern_info

Embedding = tuple[int, ...]
"""Cube vertex assigned to each pattern vertex, indexed by pattern vertex."""


def _is_cover(lo: int, hi: int) -> bool:
    d = lo ^ hi
    return lo & hi == lo and d != 0 and d & (d - 1) == 0


def check_embedding(f: Family, p: Pattern, emb) -> bool:
    """Independent witness check: injective, inside ``f``, edges on cover steps."""
    emb = tuple(int(x) for x in emb)
    if len(emb) != p.m or len(set(emb)) != p.m:
        return False
    if any(x not in f for x in emb):
        return False
    for u, v in p.edges:
        a, b = emb[u], emb[v]
        if not (a & b == a and bin(a ^ b).count("1") == 1):
            return False
    return True


def _search_order(p: Pattern, first: int) -> list[int]:
    """Connected ordering; a new component starts only when the current one is exhausted."""
    adj = [set(p.succ[x]) | set(p.pred[x]) for x in range(p.m)]
    order, placed = [first], {first}
    while len(order) < p.m:
        frontier = [y for y in range(p.m) if y not in placed and adj[y] & placed]
        if frontier:
            # most constrained first
            y = max(frontier, key=lambda z: (len(adj[z] & placed), -z))
        else:
            y = max((z for z in range(p.m) if z not in placed), key=lambda z: (len(adj[z]), -z))
        order.append(y)
        placed.add(y)
    return order


def iter_embeddings(f: Family, p: Pattern, anchor: Optional[tuple[int, int]] = None) -> Iterator[Embedding]:
    """Yield every embedding of ``p`` into ``Q_n[f]``.

    Candidates are tried in ascending vertex-mask order, so the first yielded
    embedding is deterministic. With ``anchor=(x, v)`` only embeddings sending
    pattern vertex ``x`` to cube vertex ``v`` are produced.
    """
    n = f.n
    info = pattern_info(p)
    windows = [info.level_range(n, x) for x in range(p.m)]
    if any(lo > hi for lo, hi in windows):
        return
    lookup = f._lookup
    if anchor is not None:
        first = anchor[0]
    else:
        first = max(range(p.m), key=lambda z: (len(p.succ[z]) + len(p.pred[z]), -z))
    order = _search_order(p, first)
    pos = {x: i for i, x in enumerate(order)}
    # neighbours of order[i] that are placed earlier, as (vertex, is_out_edge_from_it)
    back = []
    for i, y in enumerate(order):
        back.append([(u, True) for u in p.pred[y] if pos[u] < i]
                    + [(w, False) for w in p.succ[y] if pos[w] < i])
    pc_arr = popcounts(n)
    pc = pc_arr.tobytes()

    def roots(y):
        lo, hi = windows[y]
        verts = f.vertices
        sel = verts[(pc_arr[verts] >= lo) & (pc_arr[verts] <= hi)]
        return [c for c in sel.tolist() if c not in used]

    img = [-1] * p.m
    used: set[int] = set()

    def candidates(i):
        y = order[i]
        nb = back[i]
        if not nb:
            return roots(y)
        x, from_x = nb[0]
        a = img[x]
        if from_x:
            cands = [a | (1 << b) for b in range(n) if not a >> b & 1]
        else:
            cands = sorted(a & ~(1 << b) for b in range(n) if a >> b & 1)
        lo, hi = windows[y]
        out = []
        for c in cands:
            if lookup[c] != 1 or c in used:
                continue
            lev = pc[c]
            if lev < lo or lev > hi:
                continue
            ok = True
            for z, from_z in nb[1:]:
                if not (_is_cover(img[z], c) if from_z else _is_cover(c, img[z])):
                    ok = False
                    break
            if ok:
                out.append(c)
        return out

    def extend(i):
        if i == p.m:
            yield tuple(img)
            return
        y = order[i]
        for c in candidates(i):
            img[y] = c
            used.add(c)
            yield from extend(i + 1)
            used.discard(c)
        img[y] = -1

    if anchor is not None:
        x, v = anchor
        lo, hi = windows[x]
        if v not in f or not lo <= pc[v] <= hi:
            return
        img[x] = v
        used.add(v)
        yield from extend(1)
    else:
        yield from extend(0)


def contains_copy(f: Family, p: Pattern) -> Optional[Embedding]:
    """First embedding of ``p`` in ``Q_n[f]`` (ascending order), or None if ``f`` is free."""
    return next(iter_embeddings(f, p), None)


def copy_through(f: Family, p: Pattern, v: int) -> Optional[Embedding]:
    """An embedding of ``p`` into ``Q_n[f]`` that uses vertex ``v``, if any."""
    if v not in f:
        return None
    for x in range(p.m):
        emb = next(iter_embeddings(f, p, anchor=(x, v)), None)
        if emb is not None:
            return emb
    return None


def longest_directed_path(f: Family) -> tuple[int, list[int]]:
    """Vertex count of a longest directed path inside ``Q_n[f]``, with a witness path.

    Level-order DP: ``dp[v] = 1 + max dp[u]`` over in-neighbours ``u``, zero
    off the family.
    """
    n, mem = f.n, f.members
    if not mem.any():
        return 0, []
    dp = np.zeros(1 << n, dtype=np.int16)
    for verts in level_vertices(n):
        best = np.zeros(len(verts), dtype=np.int16)
        for b in range(n):
            has = (verts >> b) & 1 == 1
            np.maximum(best, np.where(has, dp[verts & ~(1 << b)], 0), out=best)
        dp[verts] = np.where(mem[verts], best + 1, 0)
    length = int(dp.max())
    v = int(np.flatnonzero(dp == length)[0])
    path = [v]
    while dp[v] > 1:
        v = min(v & ~(1 << b) for b in range(n)
                if v >> b & 1 and dp[v & ~(1 << b)] == dp[v] - 1)
        path.append(v)
    return length, path[::-1]


def out_cover_degrees(f: Family) -> np.ndarray:
    """``deg[v]`` = number of out-neighbours of ``v`` inside ``f`` (zero off ``f``)."""
    n, mem = f.n, f.members
    idx = np.arange(1 << n, dtype=np.int64)
    deg = np.zeros(1 << n, dtype=np.int16)
    for b in range(n):
        bit = 1 << b
        deg += mem & ((idx & bit) == 0) & mem[idx | bit]
    return deg


def max_out_cover_degree(f: Family) -> tuple[int, Optional[int]]:
    if not f.members.any():
        return 0, None
    deg = out_cover_degrees(f)
    deg[~f.members] = -1
    r = int(deg.max())
    return r, int(np.flatnonzero(deg == r)[0])


def is_free(f: Family, p: Pattern) -> bool:
    """Freeness test, using the vectorised paths for directed paths and out-stars."""
    k = as_path(p)
    if k is not None:
        return longest_directed_path(f)[0] < k
    r = as_out_star(p)
    if r is not None:
        return max_out_cover_degree(f)[0] < r
    return contains_copy(f, p) is None

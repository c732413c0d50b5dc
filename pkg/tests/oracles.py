"""Brute-force oracles. None of these call into the search code they check."""

from itertools import permutations

import numpy as np


def pascal_row(n):
    row = [1]
    for _ in range(n):
        row = [1] + [row[i] + row[i + 1] for i in range(len(row) - 1)] + [1]
    return row


def members(f):
    return [int(v) for v in np.flatnonzero(f.members)]


def is_cover(a, b):
    d = b ^ a
    return a & b == a and bin(d).count("1") == 1


def brute_has_copy(f, p):
    """Try every injective assignment of family vertices to pattern vertices."""
    verts = members(f)
    for img in permutations(verts, p.m):
        if all(is_cover(img[u], img[v]) for u, v in p.edges):
            return True
    return False


def brute_copy_images(n, p):
    """All vertex sets of ``Q_n`` carrying a copy of ``p`` (permutation enumeration)."""
    out = set()
    for img in permutations(range(1 << n), p.m):
        if all(is_cover(img[u], img[v]) for u, v in p.edges):
            out.add(frozenset(img))
    return out


def brute_longest_path(f):
    verts = set(members(f))
    best = 0

    def walk(v, length):
        nonlocal best
        best = max(best, length)
        for b in range(f.n):
            w = v | 1 << b
            if w != v and w in verts:
                walk(w, length + 1)

    for v in verts:
        walk(v, 1)
    return best


def brute_chain_profile(f):
    """C_t by walking all n! maximal chains explicitly."""
    n = f.n
    counts = [0] * (n + 2)
    for perm in permutations(range(n)):
        v, t = 0, int(f.members[0])
        for b in perm:
            v |= 1 << b
            t += int(f.members[v])
        counts[t] += 1
    return counts


def brute_chain_weight(f, weight):
    n = f.n
    total = 0
    for perm in permutations(range(n)):
        v = 0
        total += weight(0) if f.members[0] else 0
        for b in perm:
            v |= 1 << b
            if f.members[v]:
                total += weight(v)
    return total


def brute_path_dp_weight(n, k):
    """Best ``2^n - sum C(n, a_i)`` by enumerating every subset of excluded levels."""
    from math import comb

    best = None
    for mask in range(1, 1 << (n + 1)):
        a = [i for i in range(n + 1) if mask >> i & 1]
        if a[0] > k - 1 or a[-1] < n - k + 1:
            continue
        if any(y - x > k for x, y in zip(a, a[1:])):
            continue
        w = 2 ** n - sum(comb(n, i) for i in a)
        best = w if best is None else max(best, w)
    return best


def isomorphic(p, q):
    if p.m != q.m or len(p.edges) != len(q.edges):
        return False
    target = set(q.edges)
    return any({(perm[u], perm[v]) for u, v in p.edges} == target
               for perm in permutations(range(p.m)))

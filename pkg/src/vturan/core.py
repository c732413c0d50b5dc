"""Oriented hypercube basics: vertices as bitmasks, families, levels, binomials.

Element ``i`` of ``[n]`` is stored in bit ``i - 1`` of a vertex mask. Every
edge of the oriented cube goes from a set ``A`` to ``A | {x}``, i.e. it
raises the level (popcount) by exactly one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, Iterator, Sequence

import numpy as np

MAX_FAMILY_DIM = 28
MAX_FORMULA_DIM = 200


def check_dim(n: int, cap: int = MAX_FAMILY_DIM) -> int:
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool):
        raise TypeError(f"dimension must be an integer, got {type(n).__name__}")
    n = int(n)
    if not 1 <= n <= cap:
        raise ValueError(f"dimension n={n} outside 1..{cap}")
    return n


def binomial(n: int, i: int) -> int:
    """Exact binomial coefficient, ``0 <= i <= n <= 200``."""
    if not 0 <= n <= MAX_FORMULA_DIM:
        raise ValueError(f"n={n} outside 0..{MAX_FORMULA_DIM}")
    if not 0 <= i <= n:
        raise ValueError(f"i={i} outside 0..{n}")
    return math.comb(n, i)


def level(v: int) -> int:
    return int(v).bit_count()


def out_neighbors(n: int, v: int) -> list[int]:
    """Vertices reached from ``v`` by one cover step, ascending."""
    full = (1 << n) - 1
    if not 0 <= v <= full:
        raise ValueError(f"vertex {v} invalid for n={n}")
    return [v | (1 << i) for i in range(n) if not v >> i & 1]


def in_neighbors(n: int, v: int) -> list[int]:
    if not 0 <= v < 1 << n:
        raise ValueError(f"vertex {v} invalid for n={n}")
    return sorted(v & ~(1 << i) for i in range(n) if v >> i & 1)


@lru_cache(maxsize=None)
def popcounts(n: int) -> np.ndarray:
    """Read-only array ``pc`` with ``pc[v] = level(v)`` for all ``v < 2**n``."""
    pc = np.zeros(1, dtype=np.uint8)
    for _ in range(n):
        pc = np.concatenate([pc, pc + 1])
    pc.setflags(write=False)
    return pc


@lru_cache(maxsize=None)
def level_vertices(n: int) -> tuple[np.ndarray, ...]:
    """Vertices of each level ``0..n`` as ascending int64 arrays."""
    pc = popcounts(n)
    order = np.argsort(pc, kind="stable").astype(np.int64)
    bounds = np.cumsum([0] + [math.comb(n, i) for i in range(n + 1)])
    out = []
    for i in range(n + 1):
        a = order[bounds[i]:bounds[i + 1]]
        a.setflags(write=False)
        out.append(a)
    return tuple(out)


@lru_cache(maxsize=None)
def level_ranks(n: int) -> np.ndarray:
    """``rank[v]`` = position of ``v`` within its level (ascending mask order)."""
    rank = np.empty(1 << n, dtype=np.int64)
    for verts in level_vertices(n):
        rank[verts] = np.arange(len(verts))
    rank.setflags(write=False)
    return rank


@dataclass(frozen=True, eq=False)
class Family:
    """An immutable set of vertices of the oriented ``n``-cube.

    ``members`` is a boolean array of length ``2**n``; ``members[v]`` is true
    iff vertex ``v`` belongs to the family.
    """

    n: int
    members: np.ndarray = field(repr=False)

    def __post_init__(self):
        n = check_dim(self.n)
        m = np.asarray(self.members, dtype=bool)
        if m.shape != (1 << n,):
            raise ValueError(f"member array must have length 2**{n}")
        if m.flags.writeable:
            m = m.copy()
            m.setflags(write=False)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "members", m)

    @classmethod
    def empty(cls, n: int) -> "Family":
        return cls(n, np.zeros(1 << check_dim(n), dtype=bool))

    @classmethod
    def full(cls, n: int) -> "Family":
        return cls(n, np.ones(1 << check_dim(n), dtype=bool))

    @classmethod
    def from_vertices(cls, n: int, vertices: Iterable[int]) -> "Family":
        n = check_dim(n)
        idx = np.fromiter((int(v) for v in vertices), dtype=np.int64)
        if idx.size and (idx.min() < 0 or idx.max() >= 1 << n):
            raise ValueError(f"vertex out of range for n={n}")
        m = np.zeros(1 << n, dtype=bool)
        m[idx] = True
        return cls(n, m)

    @cached_property
    def vertices(self) -> np.ndarray:
        v = np.flatnonzero(self.members).astype(np.int64)
        v.setflags(write=False)
        return v

    @cached_property
    def level_hist(self) -> tuple[int, ...]:
        counts = np.bincount(popcounts(self.n)[self.members], minlength=self.n + 1)
        return tuple(int(c) for c in counts)

    @cached_property
    def _lookup(self) -> bytes:
        return self.members.tobytes()

    def __len__(self) -> int:
        return int(self.vertices.size)

    def __iter__(self) -> Iterator[int]:
        return iter(self.vertices.tolist())

    def __contains__(self, v) -> bool:
        return 0 <= v < len(self._lookup) and self._lookup[v] == 1

    def __eq__(self, other) -> bool:
        if not isinstance(other, Family):
            return NotImplemented
        return self.n == other.n and bool(np.array_equal(self.members, other.members))

    def __hash__(self) -> int:
        return hash((self.n, self._lookup))

    def __repr__(self) -> str:
        return f"Family(n={self.n}, size={len(self)}, levels={self.level_hist})"

    def issubset(self, other: "Family") -> bool:
        return self.n == other.n and not np.any(self.members & ~other.members)

    def with_vertices(self, vertices: Iterable[int]) -> "Family":
        m = self.members.copy()
        m[list(vertices)] = True
        return Family(self.n, m)

    def union(self, other: "Family") -> "Family":
        if other.n != self.n:
            raise ValueError("dimension mismatch")
        return Family(self.n, self.members | other.members)

    def sets(self) -> list[list[int]]:
        return [vertex_to_set(v) for v in self]


def vertex_to_set(v: int) -> list[int]:
    """1-based sorted element list of vertex ``v``."""
    out, i = [], 1
    while v:
        if v & 1:
            out.append(i)
        v >>= 1
        i += 1
    return out


def set_to_vertex(n: int, elements: Sequence[int]) -> int:
    v = 0
    for e in elements:
        if isinstance(e, bool) or not isinstance(e, (int, np.integer)):
            raise TypeError(f"set element {e!r} is not an integer")
        if not 1 <= e <= n:
            raise ValueError(f"element {e} outside 1..{n}")
        if v >> (e - 1) & 1:
            raise ValueError(f"element {e} repeated within one set")
        v |= 1 << (e - 1)
    return v


def format_set(v: int) -> str:
    return "{" + ",".join(map(str, vertex_to_set(v))) + "}"


def make_family(n: int, sets: Iterable[Sequence[int]]) -> Family:
    """Build a family from 1-based element lists; duplicate sets are an error."""
    n = check_dim(n)
    seen: set[int] = set()
    for s in sets:
        v = set_to_vertex(n, s)
        if v in seen:
            raise ValueError(f"duplicate set {format_set(v)}")
        seen.add(v)
    return Family.from_vertices(n, seen)


def complement_family(f: Family) -> Family:
    """``{[n] - F : F in f}``; the complement of mask ``v`` is ``2**n - 1 - v``."""
    return Family(f.n, f.members[::-1])


# QFAM v1 text format

def format_qfam(f: Family) -> str:
    lines = ["#qfam v1", f"n={f.n}"]
    for v in f:
        els = vertex_to_set(v)
        lines.append(",".join(map(str, els)) if els else "-")
    return "\n".join(lines) + "\n"


def parse_qfam(text: str) -> Family:
    lines = text.splitlines()
    if not lines or lines[0].strip() != "#qfam v1":
        raise ValueError("QFAM: first line must be '#qfam v1'")
    body = [(no, ln.strip()) for no, ln in enumerate(lines[1:], start=2)]
    body = [(no, ln) for no, ln in body if ln and not ln.startswith("#")]
    if not body or not body[0][1].startswith("n="):
        raise ValueError("QFAM: missing 'n=<dim>' line")
    try:
        n = check_dim(int(body[0][1][2:]))
    except ValueError as exc:
        raise ValueError(f"QFAM line {body[0][0]}: {exc}") from None
    sets = []
    for no, ln in body[1:]:
        if ln == "-":
            sets.append([])
            continue
        try:
            els = [int(tok) for tok in ln.split(",")]
        except ValueError:
            raise ValueError(f"QFAM line {no}: malformed set {ln!r}") from None
        if els != sorted(els):
            raise ValueError(f"QFAM line {no}: elements must be sorted")
        sets.append(els)
    try:
        return make_family(n, sets)
    except ValueError as exc:
        raise ValueError(f"QFAM: {exc}") from None


def read_qfam(path) -> Family:
    with open(path, encoding="utf-8") as fh:
        return parse_qfam(fh.read())


def write_qfam(f: Family, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_qfam(f))

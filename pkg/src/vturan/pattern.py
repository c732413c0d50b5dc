"""Forbidden directed patterns and the poset data derived from them."""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Optional

MAX_PATTERN_SIZE = 16  # user-supplied (QPAT) patterns
MAX_BUILTIN_SIZE = 64  # P:k and V:r, which have vectorised fast paths

_NAME = re.compile(r"^[A-Za-z0-9_]+$")


@dataclass(frozen=True)
class Pattern:
    """A small DAG ``F``; vertices are ``0..m-1`` and edges are ``(u, v)`` for ``u -> v``."""

    m: int
    edges: tuple[tuple[int, int], ...]
    name: str = ""

    def __post_init__(self):
        if not 1 <= self.m <= MAX_BUILTIN_SIZE:
            raise ValueError(f"pattern size {self.m} outside 1..{MAX_BUILTIN_SIZE}")
        edges = tuple((int(u), int(v)) for u, v in self.edges)
        seen = set()
        for u, v in edges:
            if not (0 <= u < self.m and 0 <= v < self.m):
                raise ValueError(f"edge {u}->{v} references a missing vertex")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if (u, v) in seen:
                raise ValueError(f"repeated edge {u}->{v}")
            seen.add((u, v))
        object.__setattr__(self, "edges", edges)
        if self.topological_order is None:
            raise ValueError("pattern contains a directed cycle")

    @cached_property
    def succ(self) -> tuple[tuple[int, ...], ...]:
        out = [[] for _ in range(self.m)]
        for u, v in self.edges:
            out[u].append(v)
        return tuple(tuple(sorted(s)) for s in out)

    @cached_property
    def pred(self) -> tuple[tuple[int, ...], ...]:
        out = [[] for _ in range(self.m)]
        for u, v in self.edges:
            out[v].append(u)
        return tuple(tuple(sorted(s)) for s in out)

    @cached_property
    def topological_order(self) -> Optional[tuple[int, ...]]:
        indeg = [0] * self.m
        succ = [[] for _ in range(self.m)]
        for u, v in self.edges:
            indeg[v] += 1
            succ[u].append(v)
        ready = [x for x in range(self.m) if indeg[x] == 0]
        order = []
        while ready:
            x = ready.pop()
            order.append(x)
            for y in succ[x]:
                indeg[y] -= 1
                if indeg[y] == 0:
                    ready.append(y)
        return tuple(order) if len(order) == self.m else None

    def __str__(self) -> str:
        return self.name or f"pattern(m={self.m}, edges={list(self.edges)})"


@dataclass(frozen=True)
class PatternInfo:
    height: int
    is_tree: bool
    is_saturated: Optional[bool]  # None unless the pattern is a tree
    level_window: tuple[tuple[int, int], ...]  # (down_depth, up_height) per vertex

    def level_range(self, n: int, x: int) -> tuple[int, int]:
        """Cube levels that pattern vertex ``x`` may occupy in ``Q_n``."""
        down, up = self.level_window[x]
        return down - 1, n - up + 1


def path_pattern(k: int) -> Pattern:
    if k < 1:
        raise ValueError("P:k needs k >= 1")
    return Pattern(k, tuple((i, i + 1) for i in range(k - 1)), f"P:{k}")


def star_pattern(r: int) -> Pattern:
    if r < 1:
        raise ValueError("V:r needs r >= 1")
    return Pattern(r + 1, tuple((0, i) for i in range(1, r + 1)), f"V:{r}")


def c4_pattern() -> Pattern:
    return Pattern(4, ((0, 1), (0, 2), (1, 3), (2, 3)), "C4")


def parse_qpat(text: str, name: str = "") -> Pattern:
    """Parse QPAT v1: ``#qpat v1`` then one ``u -> v`` edge per line."""
    lines = text.splitlines()
    if not lines or lines[0].strip() != "#qpat v1":
        raise ValueError("QPAT: first line must be '#qpat v1'")
    index: dict[str, int] = {}
    edges = []
    for no, raw in enumerate(lines[1:], start=2):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split("->")
        if len(parts) != 2:
            raise ValueError(f"QPAT line {no}: expected 'u -> v', got {raw!r}")
        u, v = (p.strip() for p in parts)
        for tok in (u, v):
            if not _NAME.match(tok):
                raise ValueError(f"QPAT line {no}: bad vertex name {tok!r}")
            index.setdefault(tok, len(index))
        edges.append((index[u], index[v]))
    if not index:
        raise ValueError("QPAT: no edges")
    if len(index) > MAX_PATTERN_SIZE:
        raise ValueError(f"QPAT: {len(index)} vertices exceeds cap {MAX_PATTERN_SIZE}")
    return Pattern(len(index), tuple(edges), name)


def parse_pattern(spec: str) -> Pattern:
    """Resolve ``P:<k>``, ``V:<r>``, ``C4`` or ``file:<path>`` to a pattern."""
    spec = spec.strip()
    if spec == "C4":
        return c4_pattern()
    if spec.startswith("file:"):
        path = spec[5:]
        with open(path, encoding="utf-8") as fh:
            return parse_qpat(fh.read(), name=spec)
    m = re.fullmatch(r"([PV]):(\d+)", spec)
    if not m:
        raise ValueError(f"malformed pattern spec {spec!r}")
    kind, num = m.group(1), int(m.group(2))
    if num == 0:
        raise ValueError(f"{kind}:0 is not a pattern")
    return path_pattern(num) if kind == "P" else star_pattern(num)


def _longest_paths(p: Pattern) -> tuple[list[int], list[int]]:
    order = p.topological_order
    down = [1] * p.m
    for x in order:
        for y in p.succ[x]:
            down[y] = max(down[y], down[x] + 1)
    up = [1] * p.m
    for x in reversed(order):
        for y in p.succ[x]:
            up[x] = max(up[x], up[y] + 1)
    return down, up


def _is_tree(p: Pattern) -> bool:
    if len(p.edges) != p.m - 1:
        return False
    parent = list(range(p.m))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in p.edges:
        ru, rv = find(u), find(v)
        if ru == rv:
            return False
        parent[ru] = rv
    return True


def _hasse_edges(p: Pattern) -> list[tuple[int, int]]:
    # drop edges implied by a longer directed route
    reach = [set() for _ in range(p.m)]
    for x in reversed(p.topological_order):
        for y in p.succ[x]:
            reach[x] |= {y} | reach[y]
    keep = []
    for u, v in p.edges:
        if not any(v in reach[w] for w in p.succ[u] if w != v):
            keep.append((u, v))
    return keep


def maximal_chains(p: Pattern) -> list[list[int]]:
    """All maximal chains of the pattern's poset, as minimal-to-maximal vertex lists."""
    succ = [[] for _ in range(p.m)]
    indeg = [0] * p.m
    for u, v in _hasse_edges(p):
        succ[u].append(v)
        indeg[v] += 1
    chains = []

    def walk(path):
        x = path[-1]
        if not succ[x]:
            chains.append(list(path))
            return
        for y in succ[x]:
            path.append(y)
            walk(path)
            path.pop()

    for x in range(p.m):
        if indeg[x] == 0:
            walk([x])
    return chains


def pattern_info(p: Pattern) -> PatternInfo:
    down, up = _longest_paths(p)
    height = max(down)
    tree = _is_tree(p)
    saturated = None
    if tree:
        saturated = all(len(c) == height for c in maximal_chains(p))
    return PatternInfo(height, tree, saturated, tuple(zip(down, up)))


def opposite_pattern(p: Pattern) -> Pattern:
    name = p.name[:-1] if p.name.endswith("'") else (p.name + "'" if p.name else "")
    return Pattern(p.m, tuple((v, u) for u, v in p.edges), name)


def as_path(p: Pattern) -> Optional[int]:
    """Return ``k`` if ``p`` is a directed path on ``k`` vertices, else None."""
    if len(p.edges) != p.m - 1:
        return None
    if any(len(s) > 1 for s in p.succ) or any(len(s) > 1 for s in p.pred):
        return None
    return p.m if _is_tree(p) else None


def as_out_star(p: Pattern) -> Optional[int]:
    """Return ``r`` if ``p`` is an out-star with ``r >= 2`` leaves, else None."""
    if p.m < 3 or len(p.edges) != p.m - 1:
        return None
    centres = [x for x in range(p.m) if len(p.succ[x]) == p.m - 1]
    return p.m - 1 if centres else None


def is_c4(p: Pattern) -> bool:
    """True if ``p`` is the oriented 4-cycle (one source, one sink, two middles)."""
    if p.m != 4 or len(p.edges) != 4:
        return False
    sources = [x for x in range(4) if not p.pred[x] and len(p.succ[x]) == 2]
    sinks = [x for x in range(4) if not p.succ[x] and len(p.pred[x]) == 2]
    return (len(sources) == 1 and len(sinks) == 1
            and set(p.succ[sources[0]]) == set(p.pred[sinks[0]]))

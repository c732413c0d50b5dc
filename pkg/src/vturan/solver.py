"""Exact vertex Turan numbers for small cubes.

The copies of a pattern in the full cube form a hypergraph; a family is
pattern-free iff it contains no hyperedge entirely, so
``ex_v = 2**n - (minimum transversal)``. Vertex sets are Python ``int``
bitmasks over the ``2**n`` cube vertices.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Optional, TextIO

import numpy as np

from .construct import best_construction
from .core import Family, check_dim
from .detect import check_embedding, copy_through, is_free, iter_embeddings
from .pattern import Pattern

DEFAULT_MAX_N = 10
DEFAULT_MAX_EDGES = 2_000_000
DEFAULT_TIMEOUT = 300.0
BRUTEFORCE_MAX_VERTICES = 16


class GuardError(ValueError):
    """Instance exceeds a configured size guard."""


@dataclass(frozen=True)
class CopyHypergraph:
    n: int
    m: int
    edges: tuple[int, ...]  # each edge is a bitmask over cube vertices

    def edge_sets(self) -> list[list[int]]:
        return [_bits(e) for e in self.edges]

    def __len__(self) -> int:
        return len(self.edges)


@dataclass
class SearchResult:
    pattern: str
    n: int
    value: int
    witness: Family
    method: str
    exact: bool
    nodes: int = 0
    elapsed: float = 0.0
    upper: Optional[int] = None  # best proven upper bound when not exact
    stats: dict = field(default_factory=dict)

    def to_json(self, canonical: bool = False) -> dict:
        from .core import format_set

        out = {
            "pattern": self.pattern,
            "n": self.n,
            "value": self.value,
            "exact": self.exact,
            "method": self.method,
            "nodes": self.nodes,
            "elapsed_ms": int(round(self.elapsed * 1000)),
            "witness": [format_set(v) for v in self.witness],
        }
        if canonical:
            del out["elapsed_ms"]
        if not self.exact:
            out["upper"] = self.upper
        return out


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def enumerate_copies(n: int, p: Pattern, max_n: int = DEFAULT_MAX_N,
                     max_edges: int = DEFAULT_MAX_EDGES) -> CopyHypergraph:
    """One hyperedge per distinct vertex set that carries a copy of ``p`` in ``Q_n``."""
    n = check_dim(n)
    if n > max_n:
        raise GuardError(f"copy enumeration limited to n <= {max_n}")
    images = set()
    for emb in iter_embeddings(Family.full(n), p):
        mask = 0
        for v in emb:
            mask |= 1 << v
        images.add(mask)
        if len(images) > max_edges:
            raise GuardError(f"more than {max_edges} copies")
    return CopyHypergraph(n, p.m, tuple(sorted(images)))


def _family_from_mask(n: int, keep: int) -> Family:
    return Family.from_vertices(n, _bits(keep))


def _bruteforce(n: int, hyper: CopyHypergraph) -> tuple[int, int, int]:
    """Max kept-set over all ``2**(2**n)`` vertex subsets; returns (size, keep mask, nodes)."""
    nv = 1 << n
    subsets = np.arange(1 << nv, dtype=np.int64)
    bad = np.zeros(subsets.shape, dtype=bool)
    for e in hyper.edges:
        bad |= (subsets & e) == e
    sizes = np.zeros(subsets.shape, dtype=np.int64)
    for b in range(nv):
        sizes += (subsets >> b) & 1
    sizes[bad] = -1
    best = int(sizes.max())
    keep = int(np.flatnonzero(sizes == best)[0])
    return best, keep, int(subsets.size)


class _Timeout(Exception):
    pass


class _HittingSetSearch:
    """Minimum transversal by branch and bound.

    Branch on the uncovered edge with the fewest undecided vertices; child
    ``i`` takes its ``i``-th vertex into the transversal and bans the earlier
    ones. Pruning uses the larger of a greedy disjoint-edge packing and a
    max-degree counting bound.
    """

    def __init__(self, edges, incumbent: int, deadline: float):
        self.edges = list(edges)
        self.best = incumbent
        self.best_size = incumbent.bit_count()
        self.deadline = deadline
        self.nodes = 0

    def lower_bound(self, uncovered, banned) -> int:
        used = 0
        packing = 0
        for e in sorted(uncovered, key=lambda e: (e & ~banned).bit_count()):
            free = e & ~banned
            if not free & used:
                used |= free
                packing += 1
        deg: dict[int, int] = {}
        for e in uncovered:
            for v in _bits(e & ~banned):
                deg[v] = deg.get(v, 0) + 1
        top = max(deg.values(), default=1)
        return max(packing, -(-len(uncovered) // top))

    def root_bound(self) -> int:
        return self.lower_bound(self.edges, 0)

    def run(self) -> None:
        self._branch(0, 0, self.edges)

    def _branch(self, chosen: int, banned: int, edges) -> None:
        self.nodes += 1
        if self.nodes & 255 == 0 and time.monotonic() > self.deadline:
            raise _Timeout
        uncovered = [e for e in edges if not e & chosen]
        size = chosen.bit_count()
        if not uncovered:
            if size < self.best_size:
                self.best, self.best_size = chosen, size
            return
        pick, pick_free = None, None
        for e in uncovered:
            free = e & ~banned
            if not free:
                return
            if pick is None or free.bit_count() < pick_free.bit_count():
                pick, pick_free = e, free
        if size + self.lower_bound(uncovered, banned) >= self.best_size:
            return
        cover = {v: 0 for v in _bits(pick_free)}
        for e in uncovered:
            for v in cover:
                if e >> v & 1:
                    cover[v] += 1
        order = sorted(cover, key=lambda v: (-cover[v], v))
        tried = 0
        for v in order:
            self._branch(chosen | 1 << v, banned | tried, uncovered)
            tried |= 1 << v


def exact_exv(n: int, p: Pattern, method: str = "auto", timeout: float = DEFAULT_TIMEOUT,
              max_n: int = DEFAULT_MAX_N) -> SearchResult:
    """Exact ``ex_v(p, Q_n)`` by brute force (``2**n <= 16``) or branch and bound."""
    n = check_dim(n)
    if method not in ("auto", "bruteforce", "bnb"):
        raise ValueError(f"unknown method {method!r}")
    nv = 1 << n
    if method == "auto":
        method = "bruteforce" if nv <= BRUTEFORCE_MAX_VERTICES else "bnb"
    if method == "bruteforce" and nv > BRUTEFORCE_MAX_VERTICES:
        raise GuardError(f"brute force needs 2**n <= {BRUTEFORCE_MAX_VERTICES}")
    start = time.monotonic()
    hyper = enumerate_copies(n, p, max_n=max_n)
    full = (1 << nv) - 1
    exact, upper = True, None
    if method == "bruteforce":
        value, keep, nodes = _bruteforce(n, hyper)
    else:
        constr, _ = best_construction(n, p)
        incumbent = full
        for v in constr:
            incumbent &= ~(1 << v)
        if any(not e & incumbent for e in hyper.edges):
            incumbent = full
        search = _HittingSetSearch(hyper.edges, incumbent, start + timeout)
        try:
            search.run()
        except _Timeout:
            exact = False
            upper = nv - max(search.root_bound(), 0)
        keep = full & ~search.best
        value = nv - search.best_size
        nodes = search.nodes
    witness = _family_from_mask(n, keep)
    if len(witness) != value or not is_free(witness, p):
        raise RuntimeError("solver witness failed independent verification")
    return SearchResult(str(p), n, value, witness, method, exact, nodes,
                        time.monotonic() - start, upper, {"copies": len(hyper)})


def complete_to_maximal(f: Family, p: Pattern, order: str = "ascending",
                        seed: int = 0) -> Family:
    """Greedily add vertices (in the given order) while the family stays ``p``-free.

    A single pass suffices: a vertex rejected once stays blocked because the
    family only grows.
    """
    if not is_free(f, p):
        raise ValueError("input family is not pattern-free")
    verts = list(range(1 << f.n))
    if order == "descending":
        verts.reverse()
    elif order == "random":
        random.Random(seed).shuffle(verts)
    elif order != "ascending":
        raise ValueError(f"unknown order {order!r}")
    mem = f.members.copy()
    for v in verts:
        if mem[v]:
            continue
        mem[v] = True
        if copy_through(Family(f.n, mem), p, v) is not None:
            mem[v] = False
    return Family(f.n, mem)


def export_wcnf(n: int, p: Pattern, sink: TextIO, max_n: int = DEFAULT_MAX_N) -> dict:
    """Write the max-size ``p``-free family problem as classic WCNF.

    Variable ``v + 1`` means cube vertex ``v`` is kept; soft unit clauses
    reward keeping vertices, hard clauses forbid keeping a whole copy.
    """
    hyper = enumerate_copies(n, p, max_n=max_n)
    nv = 1 << hyper.n
    top = nv + 1
    nc = nv + len(hyper)
    sink.write(f"p wcnf {nv} {nc} {top}\n")
    for v in range(nv):
        sink.write(f"1 {v + 1} 0\n")
    for edge in hyper.edge_sets():
        sink.write(f"{top} " + " ".join(f"-{v + 1}" for v in edge) + " 0\n")
    return {"nv": nv, "nc": nc, "top": top, "soft": nv, "hard": len(hyper)}


def verify_hypergraph(hyper: CopyHypergraph, p: Pattern) -> bool:
    """Every hyperedge has ``m`` vertices and carries an embedding of ``p``."""
    for verts in hyper.edge_sets():
        if len(verts) != p.m:
            return False
        sub = Family.from_vertices(hyper.n, verts)
        emb = next(iter_embeddings(sub, p), None)
        if emb is None or not check_embedding(sub, p, emb):
            return False
    return True

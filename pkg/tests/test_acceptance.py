"""Acceptance criteria. Each test carries a ``criterion`` marker; a PASS/FAIL
line per criterion is printed in the pytest terminal summary."""

import json
import time
from fractions import Fraction
from math import comb, factorial

import numpy as np
import pytest

from vturan.chains import (
    chain_profile,
    fat_chain_count,
    formula_pk,
    lubell,
    pk_weight_bound,
    total_chain_weight,
    tree_upper_estimate,
)
from vturan.cli import run
from vturan.construct import (
    best_residue_size,
    levels_family,
    residue_levels_family,
    v2_family,
    vr_size,
)
from vturan.core import Family, complement_family
from vturan.detect import contains_copy, longest_directed_path, max_out_cover_degree
from vturan.pattern import opposite_pattern, parse_pattern
from vturan.solver import complete_to_maximal, exact_exv

BUILTINS = ["P:1", "P:2", "P:3", "P:4", "P:5", "V:1", "V:2", "V:3", "V:4", "C4"]


class Timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start


@pytest.mark.criterion(1, "P_k exact values by brute force, 2 <= k <= n <= 4")
def test_c01_path_bruteforce(capsys):
    with Timer() as t:
        for n in range(2, 5):
            for k in range(2, n + 1):
                assert run(["exact", "--pattern", f"P:{k}", "--n", str(n),
                            "--method", "bruteforce", "--json-canonical"]) == 0
                data = json.loads(capsys.readouterr().out)
                assert data["exact"] and data["value"] == formula_pk(n, k), (n, k)
        assert exact_exv(4, parse_pattern("P:3"), "bruteforce").value == 11
    assert t.elapsed < 10


@pytest.mark.criterion(2, "P_k exact values at n = 5 by branch and bound")
def test_c02_path_bnb_n5():
    with Timer() as t:
        got = [exact_exv(5, parse_pattern(f"P:{k}"), "bnb") for k in range(2, 6)]
    assert all(r.exact for r in got)
    assert [r.value for r in got] == [formula_pk(5, k) for k in range(2, 6)] == [16, 22, 26, 30]
    assert t.elapsed < 60


@pytest.mark.criterion(3, "V_2 exact values 3, 5, 9 (brute force) and 17 (B&B)")
def test_c03_v2_exact():
    p = parse_pattern("V:2")
    with Timer() as t:
        small = [exact_exv(n, p, "bruteforce").value for n in (2, 3, 4)]
        big = exact_exv(5, p, "bnb")
    assert small == [3, 5, 9] == [2 ** (n - 1) + 1 for n in (2, 3, 4)]
    assert big.exact and big.value == 17
    assert t.elapsed < 60


@pytest.mark.criterion(4, "construction suite: sizes and freeness")
def test_c04_constructions():
    with Timer() as t:
        for n in range(2, 21):
            f = v2_family(n)
            assert len(f) == 2 ** (n - 1) + 1
            assert max_out_cover_degree(f)[0] <= 1
        for n in range(1, 13):
            for k in range(1, n + 1):
                for j in range(1, k + 1):
                    assert longest_directed_path(residue_levels_family(n, k, j))[0] <= k - 1
        for n in range(1, 61):
            for k in range(1, n + 1):
                assert best_residue_size(n, k) == formula_pk(n, k)
    assert t.elapsed < 30


@pytest.mark.criterion(5, "residue-class exchange: gap-sequence DP equals closed form, n <= 60")
def test_c05_residue_exchange():
    with Timer() as t:
        for n in range(1, 61):
            for k in range(1, n + 1):
                assert pk_weight_bound(n, k) == formula_pk(n, k), (n, k)
    assert t.elapsed < 10


@pytest.mark.criterion(6, "chain identities on 200 random families per n = 4..10")
def test_c06_chain_identities():
    rng = np.random.default_rng(0)
    with Timer() as t:
        for n in range(4, 11):
            nf = factorial(n)
            for _ in range(200):
                f = Family(n, rng.random(1 << n) < rng.uniform(0, 1))
                prof = chain_profile(f)
                assert prof.total == nf
                assert prof.incidence == lubell(f).numerator
                assert total_chain_weight(f) == len(f) * nf
    assert t.elapsed < 60


@pytest.mark.criterion(7, "fat-chain inequality on 100 window families")
def test_c07_fat_chains():
    rng = np.random.default_rng(1)
    checked = 0
    with Timer() as t:
        while checked < 100:
            n = int(rng.integers(4, 11))
            k = int(rng.integers(1, 5))
            i = int(rng.integers(0, n - k + 2))
            window = levels_family(n, range(i, i + k))
            keep = rng.random(1 << n) < rng.uniform(0.6, 1.0)
            f = Family(n, window.members & keep)
            nf = factorial(n)
            excess = lubell(f).numerator - (k - 1) * nf  # eps * n!
            if excess <= 0:
                continue
            fat = fat_chain_count(f, k)
            assert fat >= -(-excess // k), (n, k, i)
            checked += 1
    assert t.elapsed < 60


@pytest.mark.criterion(8, "duality under complement + opposite pattern")
def test_c08_duality():
    rng = np.random.default_rng(2)
    with Timer() as t:
        for _ in range(500):
            n = int(rng.integers(1, 7))
            p = parse_pattern(BUILTINS[int(rng.integers(len(BUILTINS)))])
            f = Family(n, rng.random(1 << n) < rng.uniform(0.1, 0.9))
            a = contains_copy(f, p) is None
            b = contains_copy(complement_family(f), opposite_pattern(p)) is None
            assert a == b
        for spec in BUILTINS:
            p = parse_pattern(spec)
            for n in range(1, 5):
                assert exact_exv(n, p).value == exact_exv(n, opposite_pattern(p)).value
    assert t.elapsed < 60


@pytest.mark.criterion(9, "greedy maximal V_2-free families contain [n] and an (n-1)-set")
def test_c09_maximal_v2_free():
    p = parse_pattern("V:2")
    with Timer() as t:
        for n in (4, 5):
            top = (1 << n) - 1
            for seed in range(100):
                g = complete_to_maximal(Family.empty(n), p, "random", seed=seed)
                assert top in g
                assert g.level_hist[n - 1] >= 1
    assert t.elapsed < 30


C10_TITLE = "height-h trend: lower bound at n = 40, tree estimate at n = 120"


@pytest.mark.criterion(10, C10_TITLE)
@pytest.mark.parametrize("h", [2, 3, 4])
def test_c10_lower_trend(h):
    with Timer() as t:
        ratio = Fraction(formula_pk(40, h), 2**40)
    assert ratio >= Fraction(h - 1, h) - Fraction(2, 100)
    assert t.elapsed < 10


@pytest.mark.criterion(10, C10_TITLE)
@pytest.mark.parametrize("h", [2, 3, 4])
def test_c10_upper_trend(h):
    n = 120
    sizes = [t for t in range(h, 17) if Fraction(h * t * t, n) <= Fraction(1, 2)]
    with Timer() as timer:
        ratios = {t: float(Fraction(tree_upper_estimate(n, h, t), 2**n)) for t in sizes}
    assert timer.elapsed < 10
    limit = (h - 1) / h + 0.15
    bad = {t: r for t, r in ratios.items() if r > limit}
    assert not bad, f"estimate/2^n exceeds {limit:.3f} for t_size -> ratio {bad}"


@pytest.mark.criterion(11, "C4 cross-check at n = 4")
def test_c11_c4():
    with Timer() as t:
        res = exact_exv(4, parse_pattern("C4"))
    closed = max(sum(comb(4, i) for i in range(5) if (i - j) % 3) for j in range(3))
    assert res.exact and res.value == closed == 11
    assert t.elapsed < 10


# frozen regression band for (|vr_family| - 2^(n-1)) / n^(r-2), 2r <= n <= 60
VR_BAND = {3: (Fraction(1), Fraction(1)), 4: (Fraction(29, 64), Fraction(1771, 3600))}


@pytest.mark.criterion(12, "V_r excess growth band, r = 3, 4")
@pytest.mark.parametrize("r", [3, 4])
def test_c12_vr_growth(r):
    lo, hi = VR_BAND[r]
    assert lo > 0
    with Timer() as t:
        ratios = [Fraction(vr_size(n, r) - 2 ** (n - 1), n ** (r - 2)) for n in range(2 * r, 61)]
    assert min(ratios) == lo and max(ratios) == hi
    assert t.elapsed < 10

"""End-to-end acceptance checks, one test per criterion.

Each test records a PASS/FAIL line that is printed in the pytest summary.
"""

import json
import random
import time
from fractions import Fraction
from math import gcd
from pathlib import Path

import pytest

from x0models import arith
from x0models.cli import _sweep_row, main, sweep_levels
from x0models.divisors import verify_closed_form
from x0models.fiber import build_edixhoven, fiber_canonical_degree_check, igusa, structural_problems
from x0models.linalg import kernel_basis, mat_vec
from x0models.minimal import (
    blow_down_composite,
    blow_down_iterative,
    canonical_intersections,
    minimal_fiber,
)
from x0models.oracles import brute_force_invariants, supersingular_count_excluding_0_1728
from x0models.selfint import closed_form_coefficient, finite_part

DATA = Path(__file__).resolve().parent.parent / "data"

# one prime from each class mod 12, then more of each
CLASS_PRIMES = [13, 37, 61, 5, 17, 29, 7, 19, 31, 11, 23, 59]
LATTICE_M = (1, 7, 11, 13, 35, 77)

# Frozen from the shipped sweeps (data/*.jsonl); see data/asymptotic_bound.json.
B_FROZEN = 0.4375
B_TAIL = 0.0495  # prime powers with N > 10^4
B_PRIMES = 0.0013


def admissible_levels(lo, hi):
    return [N for N in range(lo, hi + 1) if N % 2 and N % 3 and N not in (13, 25)]


def lattice_blocks():
    for p in CLASS_PRIMES:
        for n in range(1, 6):
            for M in LATTICE_M:
                if gcd(M, 6 * p) == 1 and p**n * M not in (5, 7, 13):
                    yield p, n, M


def test_criterion_1_row_sum_kernel(report):
    start = time.perf_counter()
    count = 0
    bad = []
    for N in admissible_levels(11, 50_000):
        for b in arith.factor_level(N).blocks:
            f = minimal_fiber(b.p, b.n, b.M)
            count += 1
            if (not f.matrix.is_symmetric()
                    or any(x != 0 for x in mat_vec(f.matrix, f.multiplicities))
                    or kernel_basis(f.matrix) != [tuple(Fraction(m) for m in f.multiplicities)]):
                bad.append((N, b.p))
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 300
    report(1, ok, f"{count} fibres, {len(bad)} bad, {elapsed:.1f}s")
    assert not bad
    assert elapsed < 300


def test_criterion_2_closed_forms(report):
    blocks = list(lattice_blocks())
    bad = []
    reduced = 0
    for p, n, M in blocks:
        f = minimal_fiber(p, n, M)
        reduced += f.model_tag == "minimal"
        if not verify_closed_form(f):
            bad.append((p, n, M))
    report(2, not bad, f"{len(blocks)} blocks ({reduced} blown down), {len(bad)} residual failures")
    assert not bad


def test_criterion_3_finite_part_identity(report):
    levels = sorted({p**n * M for p, n, M in lattice_blocks()
                     if p**n * M not in (5, 7, 13, 25) and arith.genus(p**n * M) >= 2})
    bad = []
    primes = 0
    for N in levels:
        for c in finite_part(N).primes:
            primes += 1
            if c.coeff != closed_form_coefficient(c.p, c.n, c.M):
                bad.append((N, c.p))
    report(3, not bad, f"{len(levels)} levels, {primes} prime coefficients, {len(bad)} mismatches")
    assert not bad


EQUIV_PRIMES = [13, 37, 5, 17, 7, 19, 11, 23]


def _blow_down_agrees(p, n):
    edi = build_edixhoven(p, n, 1)
    comp, it = blow_down_composite(edi), blow_down_iterative(edi)
    return (comp.kinds == it.kinds and comp.matrix == it.matrix
            and comp.multiplicities == it.multiplicities and comp.genera == it.genera
            and canonical_intersections(comp) == canonical_intersections(it))


def test_criterion_4_blow_down_equivalence(report):
    cases = [(p, n) for p in EQUIV_PRIMES for n in (2, 4)]
    failing = [(p, n) for p, n in cases if not _blow_down_agrees(p, n)]
    f = minimal_fiber(13, 2, 1)
    g = arith.genus(169)
    anchor = (f.intersection(igusa(0), igusa(2)) == 7 and f.self_intersections == (-7, -7)
              and f.genera == (1, 1) and fiber_canonical_degree_check(f) == 14 == 2 * g - 2)
    known = [(5, 2)]
    detail = (f"{len(cases) - len(failing)}/{len(cases)} (p, n) agree; N=169 anchor "
              f"{'ok' if anchor else 'wrong'}")
    if failing:
        detail += f"; disagreeing: {', '.join(f'{p}^{n}' for p, n in failing)} (N=25 is genus 0)"
    report(4, not failing and anchor, detail)
    assert anchor
    # everything outside the known genus-0 defect must agree
    assert [c for c in failing if c not in known] == []


@pytest.mark.xfail(strict=True, reason="X_0(25) has genus 0: C0 and C2 remain exceptional "
                                        "after the three listed contractions")
def test_criterion_4_level_25():
    assert _blow_down_agrees(5, 2)


def test_criterion_5_canonical_degree(report):
    checked = 0
    bad = []
    for N in admissible_levels(11, 20_000):
        g = arith.genus(N)
        for b in arith.factor_level(N).blocks:
            for f in (build_edixhoven(b.p, b.n, b.M), minimal_fiber(b.p, b.n, b.M)):
                checked += 1
                if fiber_canonical_degree_check(f, g) != 2 * g - 2:
                    bad.append((N, b.p, f.model_tag))
    report(5, not bad, f"{checked} fibres over both models, {len(bad)} failures")
    assert not bad


def test_criterion_6_invariant_oracles(report):
    bad_inv = [N for N in range(1, 2001) if gcd(N, 6) == 1
               and brute_force_invariants(N) != arith.invariants(N)]
    primes = arith.primes_up_to(200)[2:]
    bad_k = [p for p in primes if arith.k_count(p, 1) != supersingular_count_excluding_0_1728(p)]
    ok = not bad_inv and not bad_k
    report(6, ok, f"levels <= 2000: {len(bad_inv)} mismatches; primes <= 200: {len(bad_k)} mismatches")
    assert ok


def test_criterion_7_gauge_invariance(report):
    pool = [N for N in admissible_levels(11, 5000) if N != 7 and arith.genus(N) >= 2]
    sample = random.Random(20240607).sample(pool, 20)
    bad = []
    for N in sample:
        base = finite_part(N).primes
        for t in (Fraction(1), Fraction(-1), Fraction(7, 3)):
            if finite_part(N, shift=t).primes != base:
                bad.append((N, t))
    report(7, not bad, f"20 levels x 3 shifts, {len(bad)} changes")
    assert not bad


def _load(name):
    with open(DATA / name) as fh:
        return [json.loads(line) for line in fh]


def test_criterion_8_asymptotic_trend(report):
    start = time.perf_counter()
    prime_levels = sweep_levels(10_001, 99_999, "prime")
    power_levels = sweep_levels(1, 9_999_999, "prime-power", 2)
    prime_rows = [_sweep_row(N) for N in prime_levels]
    power_rows = [_sweep_row(N) for N in power_levels]
    elapsed = time.perf_counter() - start
    # the shipped sweep output is what the bounds were frozen from
    assert [r["N"] for r in _load("sweep_primes_1e4_1e5.jsonl")] == prime_levels
    assert [r["N"] for r in _load("sweep_prime_powers_below_1e7.jsonl")] == power_levels
    assert _load("sweep_primes_1e4_1e5.jsonl") == json.loads(json.dumps(prime_rows))

    dev_primes = max(abs(r["ratio"] - 1) for r in prime_rows)
    dev_powers = max(abs(r["ratio"] - 1) for r in power_rows)
    worst_power = max(power_rows, key=lambda r: abs(r["ratio"] - 1))["N"]
    dev_tail = max(abs(r["ratio"] - 1) for r in power_rows if r["N"] > 10_000)
    overall = max(dev_primes, dev_powers)
    ok = overall <= B_FROZEN and dev_primes <= B_PRIMES and dev_tail <= B_TAIL and elapsed < 600
    report(8, ok, f"max|ratio-1| = {overall:.4f} <= B = {B_FROZEN} (primes {dev_primes:.5f}, "
                  f"prime powers {dev_powers:.4f} at N={worst_power}, prime powers N>1e4 "
                  f"{dev_tail:.4f}); {len(prime_rows) + len(power_rows)} levels, {elapsed:.0f}s")
    assert overall <= B_FROZEN
    assert dev_primes <= B_PRIMES
    assert dev_tail <= B_TAIL
    assert elapsed < 600


def test_criterion_9_error_paths(report, capsys):
    codes = {}
    for N in (5, 7, 13, 25, 15, 9, 22):
        codes[("finite-part", N)] = main(["finite-part", str(N)])
    for N in (11, 49):
        codes[("finite-part", N)] = main(["finite-part", str(N)])
    codes[("fiber p=3", 21)] = main(["fiber", "21", "--p", "3"])
    codes[("bad flag", 23)] = main(["fiber", "23", "--p", "23", "--format", "png"])
    capsys.readouterr()
    expected = {k: 3 for k in codes}
    expected[("finite-part", 11)] = expected[("finite-part", 49)] = 4
    expected[("bad flag", 23)] = 2

    genus_one_ok = True
    for N in (11, 49):
        assert arith.genus(N) == 1
        for b in arith.factor_level(N).blocks:
            f = minimal_fiber(b.p, b.n, b.M)
            genus_one_ok &= not structural_problems(f)
            genus_one_ok &= verify_closed_form(f)
            genus_one_ok &= fiber_canonical_degree_check(f) == 0
            if b.M == 1 and b.n % 2 == 0:
                genus_one_ok &= _blow_down_agrees(b.p, b.n)
        genus_one_ok &= brute_force_invariants(N) == arith.invariants(N)
    ok = codes == expected and genus_one_ok
    report(9, ok, f"{len(codes)} error paths with expected exit codes: {codes == expected}; "
                  f"genus-1 levels 11, 49 pass fibre checks: {genus_one_ok}")
    assert codes == expected
    assert genus_one_ok

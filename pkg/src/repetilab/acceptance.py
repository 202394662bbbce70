"""Acceptance criteria A1-A9 as plain functions.

Each check returns a :class:`Result`; runtime limits are part of the
criterion.  Bands and constants below were computed once from this code and
frozen; they are regression values, not derived bounds.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass
from itertools import product

from .engine import LengthTable, expand_full, extract, generate, window
from .exact import bms_decodable, brute_bwt, brute_substrings, parse_sources, smallest_bms
from .families import (expanding_counterexample_system, kociumaka_string, lemma1_fixed_point_prefix,
                       lemma1_system, prefixed_kociumaka, random_shifts, sqrt_params,
                       sqrt_system, theorem4_nu, zeros_one_system)
from .measures import (bwt, inverse_bwt, lz76, lz_end, lz_no, r_measure, rle_runs,
                       substring_complexity)
from .model import Extract, LSystem, NUSystem, nu_size, system_size, validate_lsystem
from .nu import find_extraction_cycle, nu_generate, validate_nu

# Frozen regression bands.
A3_BAND = (0.40, 0.42)          # delta / sqrt(n) on lemma1 strings, d = 64..1024
A5_R_BAND = (1.95, 2.05)        # r / log2 n on Kociumaka strings
A5_ZE_BAND = (2.05, 2.15)       # z_e / log2 n on prefixed Kociumaka strings
A5_RUNS_BAND = (1.85, 1.95)     # runs / log2 n on Kociumaka strings
A8_SQRT_C = 6.5                 # system_size(sqrt_system(n)) <= C * sqrt(n)

SEED = 20240917


@dataclass
class Result:
    name: str
    passed: bool
    detail: str
    seconds: float = 0.0

    def line(self) -> str:
        return f"{self.name} {'PASS' if self.passed else 'FAIL'} ({self.seconds:.1f}s) {self.detail}"


def _timed(name, limit):
    def deco(fn):
        def run():
            t0 = time.perf_counter()
            ok, detail = fn()
            dt = time.perf_counter() - t0
            if ok and dt >= limit:
                ok, detail = False, f"{detail}; runtime {dt:.1f}s exceeds {limit}s"
            return Result(name, ok, detail, dt)
        run.__name__ = fn.__name__
        run.limit = limit
        return run
    return deco


def random_lsystem(rng: random.Random, sigma_max=4, size_max=12, d_max=8,
                   expansion_max=10**5) -> LSystem:
    """A random valid system within the given size and expansion bounds."""
    while True:
        sigma = rng.randint(1, sigma_max)
        alphabet = "abcd"[:sigma]
        budget = size_max - sigma - 2  # shared by rule lengths and the axiom
        if budget < sigma + 1:
            continue
        total = rng.randint(sigma + 1, budget)
        cuts = sorted(rng.sample(range(1, total), sigma))
        lengths = [b - a for a, b in zip([0] + cuts, cuts + [total])]
        rules = {a: "".join(rng.choice(alphabet) for _ in range(k))
                 for a, k in zip(alphabet, lengths)}
        axiom = "".join(rng.choice(alphabet) for _ in range(lengths[-1]))
        coding = {a: rng.choice(alphabet) for a in alphabet}
        d = rng.randint(0, d_max)
        table = LengthTable(rules)
        size = sum(table(a, d) for a in axiom)
        if size > expansion_max:
            continue
        n = rng.randint(1, size)
        if d > n * n:
            continue
        L = LSystem(alphabet, rules, axiom, d, n, coding)
        assert not validate_lsystem(L)
        return L


@_timed("A1", 30)
def check_a1():
    rng = random.Random(SEED)
    for _ in range(1000):
        L = random_lsystem(rng)
        if generate(L) != expand_full(L)[:L.length]:
            return False, f"mismatch on {L}"
    return True, "1000 random systems agree with the naive oracle"


@_timed("A2", 5)
def check_a2():
    for d in range(1, 51):
        L = lemma1_system(d)
        if generate(L) != expand_full(L)[:L.length]:
            return False, f"mismatch at d={d}"
    return True, "d=1..50 agree with naive iteration"


@_timed("A3", 60)
def check_a3():
    ratios = []
    for d in (64, 128, 256, 512, 1024):
        L = lemma1_system(d)
        if system_size(L) != 11:
            return False, f"system_size {system_size(L)} at d={d}"
        s = generate(L)
        ratios.append(float(substring_complexity(s).delta) / math.sqrt(len(s)))
    lo, hi = min(ratios), max(ratios)
    ok = A3_BAND[0] <= lo and hi <= A3_BAND[1] and A3_BAND[1] / A3_BAND[0] <= 3
    return ok, f"delta/sqrt(n) in [{lo:.4f}, {hi:.4f}], band {A3_BAND}"


@_timed("A4", 30)
def check_a4():
    rng = random.Random(SEED)
    gen_bad, size_bad = [], []
    for e in range(4, 13):
        n = 2**e
        y = lemma1_fixed_point_prefix(n)
        for shifts in [None] + [random_shifts(n, rng) for _ in range(3)]:
            x = kociumaka_string(n, shifts)
            N = theorem4_nu(x)
            if nu_generate(N) != x + y:
                gen_bad.append(n)
            k = x.count("1")
            if nu_size(N) != 5 * k + 16:
                size_bad.append((n, k, nu_size(N)))
    detail = (f"generation {'ok' if not gen_bad else 'FAILED at ' + str(gen_bad)}; "
              f"nu_size == 5k+16 {'ok' if not size_bad else 'FAILED'}")
    if size_bad:
        n, k, got = size_bad[0]
        detail += f" ({len(size_bad)}/36 instances, e.g. n={n} k={k}: nu_size={got}, 5k+16={5 * k + 16})"
    return not gen_bad and not size_bad, detail


@_timed("A5", 120)
def check_a5():
    r_ratio, ze_ratio, runs_ratio = [], [], []
    for e in range(8, 17):
        n = 2**e
        x = kociumaka_string(n)
        r_ratio.append(r_measure(x) / e)
        runs_ratio.append(rle_runs(x) / e)
        ze_ratio.append(len(lz_end(prefixed_kociumaka(n))) / e)
    ok = True
    parts = []
    for label, vals, band in (("r", r_ratio, A5_R_BAND), ("z_e", ze_ratio, A5_ZE_BAND),
                              ("runs", runs_ratio, A5_RUNS_BAND)):
        inside = band[0] <= min(vals) and max(vals) <= band[1] and band[1] / band[0] <= 3
        ok &= inside
        parts.append(f"{label}/log2n in [{min(vals):.3f}, {max(vals):.3f}]")
    return ok, "; ".join(parts)


@_timed("A6", 600)
def check_a6():
    count = 0
    for m in range(1, 13):
        for bits in product("01", repeat=m):
            w = "".join(bits)
            b = smallest_bms(w).b
            z = lz76(w)
            zno = lz_no(w)
            if not (substring_complexity(w).delta <= b <= len(z) <= len(zno)):
                return False, f"ordering fails on {w}"
            for p in (z, zno):
                if not bms_decodable(w, *parse_sources(p)):
                    return False, f"{p.variant} parse of {w} not decodable"
            count += 1
    return True, f"delta <= b <= z <= z_no on all {count} binary strings |w| <= 12"


@_timed("A7", 60)
def check_a7():
    for m in range(1, 15):
        for bits in product("01", repeat=m):
            w = "".join(bits)
            if substring_complexity(w) != brute_substrings(w):
                return False, f"complexity mismatch on {w}"
    rng = random.Random(SEED)
    for _ in range(1000):
        w = "".join(rng.choice("abcd"[:rng.randint(1, 4)]) for _ in range(rng.randint(1, 200)))
        if substring_complexity(w) != brute_substrings(w):
            return False, f"complexity mismatch on {w}"
    for m in range(1, 11):
        for bits in product("01", repeat=m):
            w = "".join(bits)
            if bwt(w) != brute_bwt(w):
                return False, f"bwt mismatch on {w}"
    for _ in range(10000):
        w = "".join(rng.choice("abc") for _ in range(rng.randint(1, 40)))
        if inverse_bwt(bwt(w, "sentinel")) != w:
            return False, f"sentinel round trip fails on {w}"
    for _ in range(10000):
        w = "".join(rng.choice("ab") for _ in range(rng.randint(1, 40)))
        if substring_complexity(w).delta != substring_complexity(w[::-1]).delta:
            return False, f"delta not reversal invariant on {w}"
    return True, "complexity, BWT, inverse BWT and reversal checks agree"


def sqrt_grid(count=50, top=10**4):
    valid = [n for n in range(9, top + 1)
             if sqrt_params(n)[0] > 2 and sqrt_params(n)[1] > 1]
    step = (len(valid) - 1) / (count - 1)
    return [valid[round(i * step)] for i in range(count)]


@_timed("A8", 60)
def check_a8():
    for n in range(1, 257):
        if generate(zeros_one_system(n)) != "0" * n + "1":
            return False, f"zeros_one fails at n={n}"
    if generate(zeros_one_system(10**4)) != "0" * 10**4 + "1":
        return False, "zeros_one fails at n=10^4"
    worst = 0.0
    for n in sqrt_grid():
        L = sqrt_system(n)
        if generate(L) != "0" * n + "1":
            return False, f"sqrt_system fails at n={n}"
        worst = max(worst, system_size(L) / math.sqrt(n))
    if worst > A8_SQRT_C:
        return False, f"sqrt_system size/sqrt(n) reached {worst:.3f} > {A8_SQRT_C}"
    for n in range(1, 21):
        if generate(expanding_counterexample_system(n)) != "0" * n + "1" + "0" * 2**n:
            return False, f"expanding system fails at n={n}"
    L = expanding_counterexample_system(40)
    last = 2**40 + 40 + 1
    spots = {40: "0", 41: "1", 42: "0", last: "0"}
    for pos, want in spots.items():
        if window(L, pos, pos) != want:
            return False, f"expanding n=40 position {pos} is not {want}"
    if extract(L, "0", 40, 2**40, 2**40) != "0":
        return False, "extract of the last zero at level 40 failed"
    return True, f"all witnesses generate their strings; max sqrt size ratio {worst:.3f}"


@_timed("A9", 1)
def check_a9():
    loop = Extract("a", 2, 1, 1)
    self_loop = NUSystem("a", {"a": (loop,)}, ("a",), 1, 2)
    ta, tb = Extract("b", 3, 1, 2), Extract("a", 3, 1, 2)
    two = NUSystem("ab", {"a": (ta,), "b": (tb,)}, ("a",), 1, 3)
    c1 = find_extraction_cycle(self_loop)
    c2 = find_extraction_cycle(two)
    if c1 != [loop, loop]:
        return False, f"self-loop witness {c1}"
    if c2 is None or set(c2) != {ta, tb} or len(c2) != 3:
        return False, f"2-cycle witness {c2}"
    if not validate_nu(self_loop) or not validate_nu(two):
        return False, "cyclic fixtures accepted"
    rng = random.Random(SEED)
    count = 0
    for e in range(1, 13):
        n = 2**e
        for shifts in [None] + [random_shifts(n, rng) for _ in range(3)]:
            if validate_nu(theorem4_nu(kociumaka_string(n, shifts))):
                return False, f"theorem4_nu rejected at n={n}"
            count += 1
    return True, f"cycles rejected with witnesses; {count} theorem4 systems accepted"


CHECKS = [check_a1, check_a2, check_a3, check_a4, check_a5, check_a6, check_a7, check_a8, check_a9]
QUICK = CHECKS[:6]


def verify(level: str = "quick", report=print) -> bool:
    checks = QUICK if level == "quick" else CHECKS
    ok = True
    for check in checks:
        res = check()
        report(res.line())
        ok &= res.passed
    return ok

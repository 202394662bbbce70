"""String families and explicit systems, each with a direct constructor."""

from __future__ import annotations

import math
import random
from itertools import product
from typing import Iterator

from .engine import fixed_point_prefix
from .model import Extract, LSystem, NUSystem

LEMMA1_RULES = {"a": "a", "b": "ab", "c": "cb"}


def lemma1_system(d: int) -> LSystem:
    """The c-prolongable system a->a, b->ab, c->cb at level d+1."""
    if d < 1:
        raise ValueError("d must be at least 1")
    return LSystem("abc", LEMMA1_RULES, "c", d + 1, 1 + d * (d + 1) // 2 + d)


def lemma1_direct(d: int) -> str:
    """phi^(d+1)(c) = c b ab aab ... a^d b, cut to the system length."""
    s = "c" + "".join("a" * i + "b" for i in range(d + 1))
    return s[:1 + d * (d + 1) // 2 + d]


def lemma1_fixed_point_prefix(n: int) -> str:
    return fixed_point_prefix(LSystem("abc", LEMMA1_RULES, "c", 0, 1), n)


def lemma1_fixed_point_direct(n: int) -> str:
    parts, size, i = ["c"], 1, 0
    while size < n:
        parts.append("a" * i + "b")
        size += i + 1
        i += 1
    return "".join(parts)[:n]


def _ones(n: int) -> list[int]:
    out, p = [], 1
    while p <= n:
        out.append(p)
        p *= 2
    return out


def kociumaka_ones(n: int) -> int:
    return len(_ones(n))


def kociumaka_string(n: int, shifts=None) -> str:
    """Prefix of length n of the characteristic sequence of powers of two, with
    the k-th one moved forward by ``shifts[k-1] < 2**(k-1)`` positions."""
    if n < 2:
        raise ValueError("n must be at least 2")
    ones = _ones(n)
    if shifts is None:
        shifts = [0] * len(ones)
    if len(shifts) != len(ones):
        raise ValueError(f"expected {len(ones)} shifts, got {len(shifts)}")
    out = ["0"] * n
    for k, (p, s) in enumerate(zip(ones, shifts), 1):
        if not 0 <= s < 2 ** (k - 1) or p + s > n:
            raise ValueError(f"shift {s} out of range for one number {k} at position {p}")
        out[p + s - 1] = "1"
    return "".join(out)


def random_shifts(n: int, rng: random.Random) -> list[int]:
    return [rng.randrange(min(2 ** (k - 1), n - p + 1))
            for k, p in enumerate(_ones(n), 1)]


def prefixed_kociumaka(n: int, shifts=None) -> str:
    return "0" * n + kociumaka_string(n, shifts)


def zeros_one_system(n: int) -> LSystem:
    if n < 1:
        raise ValueError("n must be at least 1")
    return LSystem("01", {"0": "0", "1": "01"}, "1", n, n + 1)


def uniform_pow2_system(n: int) -> LSystem:
    if n < 1:
        raise ValueError("n must be at least 1")
    return LSystem("01", {"0": "00", "1": "11"}, "01", n, 2**n + 1)


def sqrt_params(n: int):
    s = math.isqrt(n)
    k, j = divmod(n, s) if s else (0, 0)
    return s, k, j


def sqrt_system(n: int) -> LSystem:
    """Prolongable system with coding for 0^n 1 of size O(sqrt n)."""
    s, k, j = sqrt_params(n)
    if s <= 2:
        raise ValueError(f"need floor(sqrt(n)) > 2, got {s}")
    if k <= 1:
        raise ValueError(f"need k = n // floor(sqrt(n)) > 1, got {k}")
    rules = {
        "a": "ab",
        "b": "c" * (k - 1) + "d",
        "c": "0" * (s - 1),
        "d": "0" * (s - 3 + j) + "1",
        "0": "0",
        "1": "1",
    }
    coding = {x: ("1" if x == "1" else "0") for x in rules}
    return LSystem("abcd01", rules, "a", 3, n + 1, coding)


def sqrt_direct_expansion(n: int) -> str:
    """phi^3(a) written out from the closed form."""
    s, k, j = sqrt_params(n)
    return "ab" + "c" * (k - 1) + "d" + "0" * ((s - 1) * (k - 1)) + "0" * (s - 3 + j) + "1"


def expanding_counterexample_system(n: int) -> LSystem:
    if n < 1:
        raise ValueError("n must be at least 1")
    return LSystem("012", {"0": "00", "1": "21", "2": "2"}, "10", n, 2**n + n + 1,
                   {"0": "0", "1": "1", "2": "0"})


def gaps(x: str) -> list[int]:
    """Zero-run lengths before, between and after the ones of x."""
    return [len(run) for run in x.split("1")]


def theorem4_nu(x: str) -> NUSystem:
    """NU-system for ``x . y[:|x|]`` with y the fixed point of the lemma1 system."""
    if not x or set(x) - {"0", "1"}:
        raise ValueError("x must be a non-empty binary string")
    n = len(x)
    axiom = []
    runs = gaps(x)
    for idx, g in enumerate(runs):
        if g:
            axiom.append(Extract("0", n, 1, g))
        if idx < len(runs) - 1:
            axiom.append("1")
    axiom.append(Extract("c", n, 1, n))
    rules = {"0": ("0", "0"), "1": ("1",), "a": ("a",), "b": ("a", "b"), "c": ("c", "b")}
    return NUSystem("01abc", rules, tuple(axiom), 1, 2 * n)


FAMILY_NAMES = ("lemma1", "kociumaka", "prefixed-kociumaka", "zeros-one",
                "uniform-pow2", "sqrt", "expanding", "theorem4")


def _values(v):
    if isinstance(v, (list, tuple, range)):
        return list(v)
    return [v]


def family_iter(name: str, params: dict) -> Iterator[tuple[str, object]]:
    """Yield ``(label, object)`` for every parameter combination.

    Parameter values may be scalars or lists.  Systems are yielded for the
    system families, strings for the Kociumaka families.  ``seed`` selects
    random shifts (reproducibly); without it shifts are zero.
    """
    if name not in FAMILY_NAMES:
        raise ValueError(f"unknown family {name!r}; choose from {', '.join(FAMILY_NAMES)}")
    key = "d" if name == "lemma1" else "n"
    allowed = {key, "seed"} if name in ("kociumaka", "prefixed-kociumaka", "theorem4") else {key}
    extra = set(params) - allowed
    if extra:
        raise ValueError(f"unknown parameters for {name}: {sorted(extra)}")
    if key not in params:
        raise ValueError(f"family {name} needs parameter {key}")
    seeds = _values(params.get("seed", [None]))
    for v, seed in product(_values(params[key]), seeds):
        v = int(v)
        label = f"{name}:{key}={v}" + ("" if seed is None else f",seed={seed}")
        if name == "lemma1":
            yield label, lemma1_system(v)
        elif name == "zeros-one":
            yield label, zeros_one_system(v)
        elif name == "uniform-pow2":
            yield label, uniform_pow2_system(v)
        elif name == "sqrt":
            yield label, sqrt_system(v)
        elif name == "expanding":
            yield label, expanding_counterexample_system(v)
        else:
            shifts = None if seed is None else random_shifts(v, random.Random(int(seed)))
            x = kociumaka_string(v, shifts)
            if name == "kociumaka":
                yield label, x
            elif name == "prefixed-kociumaka":
                yield label, "0" * v + x
            else:
                yield label, theorem4_nu(x)

"""Computable repetitiveness measures: substring complexity and delta, BWT runs
and the LZ76 / LZ-no / LZ-End parsings.

Positions in :class:`Phrase` are 0-based Python indices.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from bisect import bisect_right
from itertools import groupby

import numpy as np

SENTINEL = "\x00"
NAIVE_LIMIT = 512


def _codes(w) -> np.ndarray:
    if isinstance(w, str):
        return np.frombuffer(w.encode("utf-32-le"), dtype="<u4").astype(np.int64)
    return np.asarray(w, dtype=np.int64)


def _decode(codes) -> str:
    return np.asarray(codes, dtype="<u4").tobytes().decode("utf-32-le")


def _prefix_doubling(codes: np.ndarray, cyclic: bool = False):
    """Suffix (or rotation) ranks by prefix doubling.

    Returns the final order and the list of rank arrays; ``levels[k]`` ranks
    the windows of length ``2**k``.
    """
    n = len(codes)
    _, rank = np.unique(codes, return_inverse=True)
    rank = rank.astype(np.int64)
    levels = [rank.astype(np.int32)]
    idx = np.arange(n)
    k = 1
    while rank.max() < n - 1 and not (cyclic and k >= n):
        if cyclic:
            second = rank[(idx + k) % n]
        else:
            second = np.full(n, -1, dtype=np.int64)
            if k < n:
                second[:n - k] = rank[k:]
        order = np.lexsort((second, rank))
        r, s = rank[order], second[order]
        new_class = np.empty(n, dtype=np.int64)
        new_class[0] = 0
        np.cumsum((r[1:] != r[:-1]) | (s[1:] != s[:-1]), out=new_class[1:])
        rank = np.empty(n, dtype=np.int64)
        rank[order] = new_class
        levels.append(rank.astype(np.int32))
        k *= 2
    return np.argsort(rank, kind="stable"), levels


def _lcp_from_levels(sa, levels, n):
    i, j = sa[:-1], sa[1:]
    lcp = np.zeros(n - 1, dtype=np.int64)
    for k in range(len(levels) - 1, -1, -1):
        a, b = i + lcp, j + lcp
        ok = (a < n) & (b < n)
        rk = levels[k]
        eq = ok & (rk[np.minimum(a, n - 1)] == rk[np.minimum(b, n - 1)])
        lcp += eq.astype(np.int64) << k
    return np.concatenate(([0], lcp))


def _kasai(w, sa):
    n = len(w)
    rank = [0] * n
    for r, p in enumerate(sa):
        rank[p] = r
    lcp = [0] * n
    h = 0
    for p in range(n):
        r = rank[p]
        if r == 0:
            h = 0
            continue
        q = sa[r - 1]
        while p + h < n and q + h < n and w[p + h] == w[q + h]:
            h += 1
        lcp[r] = h
        if h:
            h -= 1
    return lcp


def suffix_array(w, method: str = "auto"):
    """Suffix array and LCP array (``lcp[r]`` = lcp of suffixes ``sa[r-1]``, ``sa[r]``)."""
    n = len(w)
    if n == 0:
        return [], []
    if method == "auto":
        method = "naive" if n <= NAIVE_LIMIT else "doubling"
    if method == "naive":
        sa = sorted(range(n), key=lambda p: w[p:])
        return sa, _kasai(w, sa)
    if method != "doubling":
        raise ValueError(f"unknown method {method!r}")
    sa, levels = _prefix_doubling(_codes(w))
    return sa, _lcp_from_levels(sa, levels, n)


@dataclass(frozen=True)
class ComplexityProfile:
    counts: tuple  # counts[k-1] = number of distinct length-k substrings
    delta: Fraction

    @property
    def delta_float(self) -> float:
        return float(self.delta)

    @property
    def n(self) -> int:
        return len(self.counts)

    def __getitem__(self, k: int) -> int:
        return self.counts[k - 1]


def profile_from_counts(counts) -> ComplexityProfile:
    counts = np.asarray(counts, dtype=np.int64)
    ks = np.arange(1, len(counts) + 1)
    ratio = counts / ks
    top = ratio.max()
    cands = np.nonzero(ratio >= top * (1 - 1e-9))[0]
    delta = max(Fraction(int(counts[c]), int(c + 1)) for c in cands)
    return ComplexityProfile(tuple(int(c) for c in counts), delta)


def substring_complexity(w, method: str = "auto") -> ComplexityProfile:
    n = len(w)
    if n == 0:
        raise ValueError("empty string")
    _, lcp = suffix_array(w, method)
    hist = np.bincount(np.asarray(lcp[1:], dtype=np.int64), minlength=n + 1)
    at_least = np.cumsum(hist[::-1])[::-1]  # at_least[k] = #pairs with lcp >= k
    ks = np.arange(1, n + 1)
    return profile_from_counts((n - ks + 1) - at_least[1:n + 1])


def delta(w) -> Fraction:
    return substring_complexity(w).delta


def bwt(w: str, mode: str = "rotations") -> str:
    """Last column of the sorted rotations of ``w`` (``mode="rotations"``) or of
    ``w + SENTINEL`` (``mode="sentinel"``)."""
    n = len(w)
    if n == 0:
        raise ValueError("empty string")
    codes = _codes(w)
    if mode == "rotations":
        order, _ = _prefix_doubling(codes, cyclic=True)
        return _decode(codes[(order - 1) % n])
    if mode == "sentinel":
        if SENTINEL in w:
            raise ValueError("input contains the sentinel character")
        ext = np.concatenate((codes, [0]))
        order, _ = _prefix_doubling(ext)
        return _decode(ext[(order - 1) % (n + 1)])
    raise ValueError(f"unknown BWT mode {mode!r}")


def inverse_bwt(b: str) -> str:
    """Invert a sentinel-mode BWT."""
    if b.count(SENTINEL) != 1:
        raise ValueError("expected exactly one sentinel")
    order = sorted(range(len(b)), key=b.__getitem__)
    lf = [0] * len(b)
    for i, j in enumerate(order):
        lf[j] = i
    out = []
    r = 0
    for _ in range(len(b) - 1):
        out.append(b[r])
        r = lf[r]
    return "".join(reversed(out))


def rle_runs(x) -> int:
    if len(x) == 0:
        raise ValueError("empty string has no runs")
    return sum(1 for _ in groupby(x))


def r_measure(w: str, mode: str = "rotations") -> int:
    return rle_runs(bwt(w, mode))


@dataclass(frozen=True)
class Phrase:
    """``length`` symbols starting at ``start``: a copy of ``copy_length`` symbols
    from ``source`` followed by ``symbol`` when it is not None."""

    start: int
    length: int
    source: int | None = None
    symbol: str | None = None

    @property
    def copy_length(self) -> int:
        return self.length - (self.symbol is not None)


@dataclass(frozen=True)
class Parse:
    variant: str
    phrases: tuple

    def __len__(self):
        return len(self.phrases)

    def __iter__(self):
        return iter(self.phrases)

    def replay(self) -> str:
        out = []
        for ph in self.phrases:
            if len(out) != ph.start:
                raise ValueError(f"phrase at {ph.start} does not continue the parse")
            for t in range(ph.copy_length):
                out.append(out[ph.source + t])
            if ph.symbol is not None:
                out.append(ph.symbol)
        return "".join(out)

    def as_strings(self, w: str) -> list[str]:
        return [w[p.start:p.start + p.length] for p in self.phrases]


def _longest_previous(w: str, i: int, overlap: bool):
    """Longest ``l`` with ``w[i:i+l]`` occurring at an earlier start (overlap)
    or entirely inside ``w[:i]``; returns ``(l, leftmost source)``."""
    n = len(w)

    def find(l):
        end = i + l - 1 if overlap else i
        return w.find(w[i:i + l], 0, end)

    if i == 0 or find(1) < 0:
        return 0, None
    lo, hi = 1, 2
    while hi <= n - i and find(hi) >= 0:
        lo, hi = hi, hi * 2
    hi = min(hi, n - i + 1)
    while hi - lo > 1:  # find(lo) succeeds, find(hi) fails or hi is out of range
        mid = (lo + hi) // 2
        if find(mid) >= 0:
            lo = mid
        else:
            hi = mid
    return lo, find(lo)


def _lz_greedy(w: str, overlap: bool, variant: str) -> Parse:
    if len(w) == 0:
        raise ValueError("empty string")
    phrases = []
    i = 0
    while i < len(w):
        l, src = _longest_previous(w, i, overlap)
        if l == 0:
            phrases.append(Phrase(i, 1, None, w[i]))
            i += 1
        else:
            phrases.append(Phrase(i, l, src))
            i += l
    return Parse(variant, tuple(phrases))


def lz76(w: str) -> Parse:
    return _lz_greedy(w, True, "lz76")


def lz_no(w: str) -> Parse:
    return _lz_greedy(w, False, "lz_no")


def _boundary_copy(sa, lcp, rank, i: int, bounds: list[int]):
    """Longest ``l`` with ``w[e-l:e] == w[i:i+l]`` for a phrase boundary ``e <= i``.

    Earlier suffixes are visited in decreasing order of their lcp with suffix
    ``i`` (walking outwards from its rank); a suffix ``j`` can supply at most
    ``lcp`` symbols, so the walk stops once that drops to the best length.
    Returns ``(l, e)``.
    """
    n = len(sa)
    r = rank[i]
    best, best_end = 0, None
    lo, hi = r - 1, r + 1
    mlo = lcp[r] if lo >= 0 else 0
    mhi = lcp[hi] if hi < n else 0
    while True:
        if mlo >= mhi:
            m, side = mlo, lo
        else:
            m, side = mhi, hi
        if m <= best:
            return best, best_end
        j = sa[side]
        if j < i:
            k = bisect_right(bounds, min(j + m, i)) - 1
            if k >= 0 and bounds[k] - j > best:
                best, best_end = bounds[k] - j, bounds[k]
        if side == lo:
            lo -= 1
            mlo = min(mlo, lcp[lo + 1]) if lo >= 0 else 0
        else:
            hi += 1
            mhi = min(mhi, lcp[hi]) if hi < n else 0


def lz_end(w: str) -> Parse:
    n = len(w)
    if n == 0:
        raise ValueError("empty string")
    sa, lcp = suffix_array(w)
    sa, lcp = list(map(int, sa)), list(map(int, lcp))
    rank = [0] * n
    for k, p in enumerate(sa):
        rank[p] = k
    phrases, bounds = [], []
    i = 0
    while i < n:
        l, e = _boundary_copy(sa, lcp, rank, i, bounds)
        if l == 0:
            phrases.append(Phrase(i, 1, None, w[i]))
        elif i + l == n:
            phrases.append(Phrase(i, l, e - l))
        else:
            phrases.append(Phrase(i, l + 1, e - l, w[i + l]))
        i += phrases[-1].length
        bounds.append(i)
    return Parse("lz_end", tuple(phrases))

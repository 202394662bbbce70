from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from repetilab.exact import brute_bwt, brute_substrings
from repetilab.families import kociumaka_string
from repetilab.measures import (bwt, delta, inverse_bwt, lz76, lz_end, lz_no, r_measure, rle_runs,
                                substring_complexity, suffix_array)

from conftest import binary, small_text


@pytest.mark.parametrize("w, counts, d", [
    ("aaaa", (1, 1, 1, 1), 1),
    ("ab", (2, 1), 2),
    ("a", (1,), 1),
    ("abab", (2, 2, 2, 1), 2),
])
def test_profile_examples(w, counts, d):
    prof = substring_complexity(w)
    assert prof.counts == counts
    assert prof.delta == d
    assert prof[1] == counts[0] and prof.n == len(w)


def test_delta_is_exact_fraction():
    assert delta("abcab") == max(Fraction(c, k + 1) for k, c in enumerate(brute_substrings("abcab").counts))
    assert isinstance(delta("ab"), Fraction)


def test_bwt_examples():
    assert bwt("aaa") == "aaa"
    assert bwt("abab") == "bbaa"
    assert bwt("ab") == "ba"
    assert r_measure("aaa") == 1
    assert r_measure("abab") == 2


def test_rle_runs():
    assert rle_runs("aaabbb") == 2
    # 11|0|1|000|1|0000000|1
    assert rle_runs(kociumaka_string(16)) == 7
    with pytest.raises(ValueError):
        rle_runs("")


def test_lz_examples():
    assert lz76("ab").as_strings("ab") == ["a", "b"]
    assert lz76("aaaa").as_strings("aaaa") == ["a", "aaa"]
    assert lz76("abab").as_strings("abab") == ["a", "b", "ab"]
    assert lz_no("aaaa").as_strings("aaaa") == ["a", "a", "aa"]
    assert lz_no("aaaaaaaa").as_strings("aaaaaaaa") == ["a", "a", "aa", "aaaa"]
    assert len(lz_end("ab")) == 2
    assert lz_end("aaaa").as_strings("aaaa") == ["a", "aa", "a"]


def test_suffix_array_large_input():
    w = kociumaka_string(4096) + "0" * 100
    sa, lcp = suffix_array(w)
    assert list(sa) == sorted(range(len(w)), key=lambda i: w[i:])
    assert all(lcp[k] == len(_common(w[sa[k - 1]:], w[sa[k]:])) for k in range(1, len(w), 97))


def _common(a, b):
    k = 0
    while k < min(len(a), len(b)) and a[k] == b[k]:
        k += 1
    return a[:k]


def test_z_at_most_z_no_exhaustive():
    for m in range(1, 13):
        for bits in product("01", repeat=m):
            w = "".join(bits)
            assert len(lz76(w)) <= len(lz_no(w))


@settings(max_examples=200, deadline=None)
@given(small_text)
def test_suffix_array_doubling_vs_naive(w):
    sa1, lcp1 = suffix_array(w, "naive")
    sa2, lcp2 = suffix_array(w, "doubling")
    assert list(sa1) == list(sa2)
    assert list(lcp1) == list(lcp2)


@settings(max_examples=200, deadline=None)
@given(small_text)
def test_complexity_matches_brute(w):
    assert substring_complexity(w) == brute_substrings(w)


@settings(max_examples=200, deadline=None)
@given(st.text(alphabet="ab", min_size=1, max_size=12))
def test_bwt_matches_brute(w):
    assert bwt(w) == brute_bwt(w)


@settings(max_examples=300, deadline=None)
@given(small_text)
def test_inverse_bwt_round_trip(w):
    assert inverse_bwt(bwt(w, "sentinel")) == w


@settings(max_examples=200, deadline=None)
@given(binary)
def test_delta_reversal_invariant(w):
    assert delta(w) == delta(w[::-1])


@settings(max_examples=300, deadline=None)
@given(small_text)
def test_parses_replay(w):
    for parse in (lz76(w), lz_no(w), lz_end(w)):
        assert parse.replay() == w
        assert "".join(parse.as_strings(w)) == w


@settings(max_examples=300, deadline=None)
@given(small_text)
def test_z_at_most_z_no(w):
    assert len(lz76(w)) <= len(lz_no(w))


@settings(max_examples=200, deadline=None)
@given(small_text)
def test_profile_invariants(w):
    prof = substring_complexity(w)
    P = prof.counts
    assert P[-1] == 1 and P[0] == len(set(w))
    sigma = len(set(w))
    for k in range(2, len(w) + 1):
        assert P[k - 1] <= min(P[k - 2] * sigma, len(w) - k + 1)
    for mode in ("rotations", "sentinel"):
        assert r_measure(w, mode) >= len(set(w))


@settings(max_examples=200, deadline=None)
@given(small_text)
def test_lz_end_sources_end_at_phrase_boundaries(w):
    parse = lz_end(w)
    ends = {p.start + p.length for p in parse}
    for p in parse:
        if p.copy_length:
            assert p.source + p.copy_length in ends
            assert p.source + p.copy_length <= p.start


@settings(max_examples=200, deadline=None)
@given(small_text)
def test_lz_no_sources_do_not_overlap(w):
    for p in lz_no(w):
        if p.copy_length:
            assert p.source + p.copy_length <= p.start


def naive_lz_end_lengths(w):
    out, bounds, i = [], [], 0
    while i < len(w):
        best = 0
        for e in bounds:
            for l in range(min(e, len(w) - i), best, -1):
                if w[e - l:e] == w[i:i + l]:
                    best = l
                    break
        step = 1 if best == 0 else min(best + 1, len(w) - i)
        out.append(step)
        i += step
        bounds.append(i)
    return out


@settings(max_examples=400, deadline=None)
@given(st.text(alphabet="ab", min_size=1, max_size=80))
def test_lz_end_matches_naive(w):
    parse = lz_end(w)
    assert [p.length for p in parse] == naive_lz_end_lengths(w)
    for p in parse:
        if p.copy_length:
            assert w[p.source:p.source + p.copy_length] == w[p.start:p.start + p.copy_length]


def test_lz_end_matches_naive_long():
    for n in (300, 700):
        w = kociumaka_string(n) + "0" * 50
        assert [p.length for p in lz_end(w)] == naive_lz_end_lengths(w)

import pytest
from hypothesis import given, settings

from repetilab.engine import (ExpansionError, Expander, LengthTable, expand_full, expansion_length, extract,
                              fixed_point_prefix, generate, window)
from repetilab.families import expanding_counterexample_system, lemma1_system, zeros_one_system
from repetilab.model import LSystem

from conftest import small_lsystems

UNIFORM = LSystem("01", {"0": "00", "1": "11"}, "01", 3, 16)


def test_expand_full_examples(lemma1):
    assert expand_full(lemma1.replace(level=1, length=2)) == "cb"
    assert expand_full(lemma1) == "cbabaab"
    assert expand_full(UNIFORM) == "0000000011111111"


def test_expand_full_guard():
    with pytest.raises(ExpansionError, match="expansion too large"):
        expand_full(UNIFORM.replace(level=30, length=6), guard=1000)


def test_generate_examples(lemma1):
    assert generate(lemma1.replace(length=6)) == "cbabaa"
    assert generate(zeros_one_system(4)) == "00001"
    assert generate(lemma1.replace(level=1, length=1)) == "c"


def test_prefix_longer_than_expansion(lemma1):
    with pytest.raises(ExpansionError, match="prefix longer than expansion"):
        generate(lemma1.replace(level=2, length=5))


def test_extract_examples(lemma1):
    assert extract(lemma1, "c", 3, 2, 4) == "bab"
    L = expanding_counterexample_system(40)
    assert extract(L, "0", 40, 2**40, 2**40) == "0"
    for a in "012":
        assert extract(L, a, 0, 1, 1) == L.coding[a]
    with pytest.raises(ExpansionError, match="slice beyond expansion"):
        extract(lemma1, "c", 3, 5, 8)


def test_window_past_length():
    L = expanding_counterexample_system(20)
    assert window(L, 21, 21) == "1"
    assert window(L, 20, 22) == "010"


def test_fixed_point_prefix(lemma1):
    assert fixed_point_prefix(lemma1, 7) == "cbabaab"
    assert fixed_point_prefix(lemma1, 1) == "c"
    assert fixed_point_prefix(LSystem("ab", {"a": "ab", "b": "b"}, "a", 0, 1), 4) == "abbb"
    with pytest.raises(ValueError):
        fixed_point_prefix(UNIFORM, 3)


def test_deep_levels_do_not_recurse():
    L = zeros_one_system(200_000)
    w = generate(L)
    assert len(w) == 200_001 and w.endswith("01") and w.count("1") == 1


def test_length_table_exact_big_counts():
    t = LengthTable({"a": "aa"})
    assert t("a", 200) == 2**200
    capped = LengthTable({"a": "aa"}, cap=1000)
    assert capped("a", 200) == 1000


def test_length_table_stabilizes():
    t = LengthTable({"a": "a", "b": "b"})
    assert t("a", 10**12) == 1 and t.stable
    # saturation makes growing rows repeat too
    capped = LengthTable({"a": "a", "b": "ab"}, cap=50)
    assert capped("b", 10**12) == 50 and len(capped.rows) <= 51


def test_expansion_length(lemma1):
    assert expansion_length(lemma1) == 7
    assert expansion_length(UNIFORM.replace(level=100, length=10), cap=50) == 50


def test_unary_cycle_jump():
    ex = Expander({"a": "b", "b": "c", "c": "a", "d": "ad"}, {}, None)
    assert ex.jump("a", 10**9 + 1) == ("c", 0)
    assert ex.jump("d", 5) == ("d", 5)
    L = LSystem("abcd", {"a": "b", "b": "c", "c": "a", "d": "da"}, "d", 5000, 3000)
    assert generate(L) == expand_full(L)[:3000]


@settings(max_examples=300, deadline=None)
@given(small_lsystems())
def test_generate_matches_oracle(L):
    assert generate(L) == expand_full(L)[:L.length]


@settings(max_examples=150, deadline=None)
@given(small_lsystems())
def test_prefix_chain(L):
    full = generate(L)
    for m in range(1, L.length + 1):
        if L.level > m * m:
            continue
        assert generate(L.replace(length=m)) == full[:m]


@settings(max_examples=150, deadline=None)
@given(small_lsystems())
def test_windows_partition(L):
    full = expand_full(L)
    cut = max(1, len(full) // 3)
    parts = [window(L, 1, cut)]
    if cut < len(full):
        parts.append(window(L, cut + 1, len(full)))
    assert "".join(parts) == full


def test_lemma1_against_naive():
    for d in range(1, 40):
        L = lemma1_system(d)
        assert generate(L) == expand_full(L)[:L.length]

import pytest
from hypothesis import given, settings, strategies as st

from repetilab.engine import generate
from repetilab.exact import (SearchLimitExceeded, bms_decodable, bounded_smallest_lsystem,
                             brute_bwt, brute_substrings, parse_sources, smallest_bms)
from repetilab.measures import delta, lz76, lz_no
from repetilab.model import system_size


def test_decodable_examples():
    assert not bms_decodable("abab", [2, 2], [2, 0])
    assert bms_decodable("aaaa", [1, 3], [None, 0])
    assert bms_decodable("abc", [1, 1, 1], [None, None, None])


def test_decodable_rejects_bad_tiling():
    with pytest.raises(ValueError):
        bms_decodable("abc", [1, 1], [None, None])


@pytest.mark.parametrize("w, b", [("a", 1), ("aaaa", 2), ("abab", 3), ("abba", 4)])
def test_smallest_bms(w, b):
    wit = smallest_bms(w)
    assert wit.b == b
    assert wit.replay() == w
    assert bms_decodable(w, wit.lengths, wit.sources)


def test_bms_can_point_forward():
    # "abaab" with a backward-only scheme needs more phrases than one that
    # copies from the right
    w = "aabaa"
    wit = smallest_bms(w)
    assert wit.b <= len(lz76(w))
    assert wit.replay() == w


def test_bms_limit():
    with pytest.raises(SearchLimitExceeded):
        smallest_bms("a" * 13)


@settings(max_examples=80, deadline=None)
@given(st.text(alphabet="ab", min_size=1, max_size=9))
def test_bms_sandwich(w):
    b = smallest_bms(w).b
    assert delta(w) <= b <= len(lz76(w)) <= len(lz_no(w))
    for parse in (lz76(w), lz_no(w)):
        assert bms_decodable(w, *parse_sources(parse))


def test_brute_oracles():
    assert brute_substrings("abab").counts == (2, 2, 2, 1)
    assert brute_bwt("abab") == "bbaa"
    assert brute_bwt("aaa") == "aaa"


def test_bounded_lsystem_examples():
    L, size = bounded_smallest_lsystem("a")
    assert size == 5 and generate(L) == "a"
    # the minimum for "aaaa" over one symbol is x -> xx at level 2 (5 + 1)
    L, size = bounded_smallest_lsystem("aaaa", sigma_max=1)
    assert size == 6 and generate(L) == "aaaa" and system_size(L) == 6
    # "ab": axiom "ab" with identity rules at level 0 costs 2 + 2 + 2 + 2
    L, size = bounded_smallest_lsystem("ab", sigma_max=2)
    assert size == 8 and generate(L) == "ab"


def test_bounded_lsystem_none_within_budget():
    assert bounded_smallest_lsystem("abc", sigma_max=2, size_max=8) is None


def test_bounded_lsystem_node_cap():
    with pytest.raises(SearchLimitExceeded):
        bounded_smallest_lsystem("abaababb", sigma_max=3, size_max=14, node_cap=50)

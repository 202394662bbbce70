import random

import pytest
from hypothesis import assume, strategies as st

from repetilab.engine import LengthTable
from repetilab.model import LSystem


@pytest.fixture
def lemma1():
    return LSystem("abc", {"a": "a", "b": "ab", "c": "cb"}, "c", 3, 7)


@st.composite
def small_lsystems(draw, sigma_max=3, rule_max=3, d_max=6, expansion_max=4000):
    sigma = draw(st.integers(1, sigma_max))
    alphabet = "abcd"[:sigma]
    sym = st.sampled_from(alphabet)
    rules = {a: "".join(draw(st.lists(sym, min_size=1, max_size=rule_max))) for a in alphabet}
    axiom = "".join(draw(st.lists(sym, min_size=1, max_size=3)))
    coding = {a: draw(st.sampled_from("xyz")) for a in alphabet}
    d = draw(st.integers(0, d_max))
    total = sum(LengthTable(rules)(a, d) for a in axiom)
    if total > expansion_max:
        d = 0
        total = len(axiom)
    n = draw(st.integers(1, total))
    assume(d <= n * n)
    return LSystem(alphabet, rules, axiom, d, n, coding)


binary = st.text(alphabet="01", min_size=1, max_size=40)
small_text = st.text(alphabet="abc", min_size=1, max_size=60)


def rng():
    return random.Random(1234)

"""Evaluation of L-systems.

``expand_full`` is the naive oracle: it materialises every level.  The other
entry points descend the derivation tree with an explicit stack, guided by a
table of (saturating) expansion lengths, so only the requested slice is ever
produced.
"""

from __future__ import annotations

from collections import Counter
from typing import Callable, Mapping, Sequence

from .model import Extract, LSystem, classify, require_valid


class ExpansionError(ValueError):
    """An expansion is too short for the requested slice, or too long to build."""


class GrowthStalled(RuntimeError):
    pass


DEFAULT_GUARD = 10**7
# Subtrees whose exact length is at most this many symbols are materialised
# and memoised instead of being descended symbol by symbol.
BLOCK = 256


class LengthTable:
    """``len(a, t) = |phi^t(a)|`` capped at ``cap`` (``cap=None`` for exact counts).

    Extraction tokens inside rules are inert leaves of fixed length.  Rows are
    computed on demand; once a row repeats, every later row equals it, so
    levels far beyond that point cost nothing.
    """

    def __init__(self, rules: Mapping[str, Sequence], cap: int | None = None):
        self.rules = rules
        self.cap = cap
        self.rows = [{a: 1 for a in rules}]
        self.stable = False

    def ensure(self, t: int) -> None:
        cap = self.cap
        while not self.stable and len(self.rows) <= t:
            prev = self.rows[-1]
            row = {}
            for a, rhs in self.rules.items():
                s = 0
                for x in rhs:
                    s += len(x) if isinstance(x, Extract) else prev[x]
                row[a] = s if cap is None or s < cap else cap
            if row == prev:
                self.stable = True
            else:
                self.rows.append(row)

    def __call__(self, a: str, t: int) -> int:
        self.ensure(t)
        return self.rows[min(t, len(self.rows) - 1)][a]


class Expander:
    """Slice extraction over the derivation tree of a (token) rule set."""

    def __init__(self, rules: Mapping[str, Sequence], coding: Mapping[str, str],
                 cap: int | None, leaf_text: Callable[[Extract], str] | None = None):
        self.rules = rules
        self.coding = coding
        self.cap = cap
        self.lengths = LengthTable(rules, cap)
        self.leaf_text = leaf_text
        self._chains = {}
        self._blocks = {}

    def _chain(self, a):
        # Follow single-symbol rules from a: returns (path, exit, loop_start).
        ch = self._chains.get(a)
        if ch is None:
            path, index = [], {}
            b = a
            while True:
                rhs = self.rules[b]
                if len(rhs) != 1 or isinstance(rhs[0], Extract):
                    ch = (path, b, None)
                    break
                if b in index:
                    ch = (path, None, index[b])
                    break
                index[b] = len(path)
                path.append(b)
                b = rhs[0]
            self._chains[a] = ch
        return ch

    def jump(self, a: str, t: int):
        """Skip runs of single-symbol rules: returns ``(b, u)`` with
        ``phi^t(a) = phi^u(b)`` and either ``u == 0`` or ``b`` branching."""
        path, exit_sym, loop = self._chain(a)
        m = len(path)
        if t < m:
            return path[t], 0
        if exit_sym is not None:
            return exit_sym, t - m
        return path[loop + (t - loop) % (m - loop)], 0

    def length(self, a: str, t: int) -> int:
        return self.lengths(a, t)

    def _block(self, a, t):
        key = (a, t)
        s = self._blocks.get(key)
        if s is None:
            if t == 0:
                s = self.coding[a]
            else:
                parts = []
                for x in self.rules[a]:
                    if isinstance(x, Extract):
                        parts.append(self.leaf_text(x))
                    else:
                        b, u = self.jump(x, t - 1)
                        parts.append(self._block(b, u))
                s = "".join(parts)
            self._blocks[key] = s
        return s

    def slice(self, items: Sequence, t: int, lo: int, hi: int) -> str:
        """Coded symbols ``lo..hi-1`` (0-based, half open) of the level-``t``
        expansion of ``items``."""
        if lo < 0 or hi < lo:
            raise ValueError(f"bad slice [{lo}:{hi}]")
        if self.cap is not None and hi >= self.cap:
            raise ValueError(f"slice end {hi} not below length cap {self.cap}")
        out = []
        skip, need = lo, hi - lo
        stack = [(x, t) for x in reversed(items)]
        cap = self.cap
        while stack and need > 0:
            x, u = stack.pop()
            if isinstance(x, Extract):
                size = len(x)
                if size <= skip:
                    skip -= size
                    continue
                s = self.leaf_text(x)[skip:skip + need]
            else:
                if u:
                    x, u = self.jump(x, u)
                size = self.lengths(x, u)
                if size <= skip:
                    skip -= size
                    continue
                if u == 0:
                    s = self.coding[x]
                elif size <= BLOCK and (cap is None or size < cap):
                    s = self._block(x, u)[skip:skip + need]
                else:
                    u -= 1
                    for y in reversed(self.rules[x]):
                        stack.append((y, u))
                    continue
            out.append(s)
            need -= len(s)
            skip = 0
        if need > 0:
            raise ExpansionError("slice beyond expansion")
        return "".join(out)


def expand_full(L: LSystem, guard: int = DEFAULT_GUARD) -> str:
    """``tau(phi^d(axiom))`` by plain iterated rewriting."""
    require_valid(L)
    rule_len = {a: len(r) for a, r in L.rules.items()}
    table = str.maketrans(L.rules)
    s = L.axiom
    for _ in range(L.level):
        nxt = sum(rule_len[a] * c for a, c in Counter(s).items())
        if nxt > guard:
            raise ExpansionError(f"expansion too large: {nxt} > guard {guard}")
        s = s.translate(table)
    if len(s) > guard:
        raise ExpansionError(f"expansion too large: {len(s)} > guard {guard}")
    return s.translate(str.maketrans(L.coding))


def expansion_length(L: LSystem, cap: int | None = None) -> int:
    """``|phi^d(axiom)|``, exact or capped."""
    require_valid(L)
    table = LengthTable(L.rules, cap)
    total = sum(table(a, L.level) for a in L.axiom)
    return total if cap is None else min(total, cap)


def generate(L: LSystem) -> str:
    """The string ``tau(phi^d(axiom))[1:n]`` denoted by ``L``."""
    require_valid(L)
    n = L.length
    ex = Expander(L.rules, L.coding, n + 1)
    total = sum(ex.length(a, L.level) for a in L.axiom)
    if total < n:
        raise ExpansionError(f"prefix longer than expansion: n = {n} but expansion has length {total}")
    return ex.slice(L.axiom, L.level, 0, n)


def extract(L: LSystem, a: str, t: int, i: int, j: int) -> str:
    """``tau(phi^t(a))[i:j]`` with 1-based inclusive bounds."""
    require_valid(L)
    if a not in L.rules:
        raise ValueError(f"unknown symbol {a!r}")
    if not 1 <= i <= j:
        raise ValueError(f"bad interval [{i}:{j}]")
    ex = Expander(L.rules, L.coding, j + 1)
    size = ex.length(a, t)
    if size < j:
        raise ExpansionError(f"slice beyond expansion: |phi^{t}({a})| = {size} < {j}")
    return ex.slice(a, t, i - 1, j)


def window(L: LSystem, i: int, j: int) -> str:
    """``tau(phi^d(axiom))[i:j]`` (1-based, inclusive), ignoring the length n."""
    require_valid(L)
    if not 1 <= i <= j:
        raise ValueError(f"bad interval [{i}:{j}]")
    ex = Expander(L.rules, L.coding, j + 1)
    size = sum(ex.length(a, L.level) for a in L.axiom)
    if size < j:
        raise ExpansionError(f"slice beyond expansion: length {size} < {j}")
    return ex.slice(L.axiom, L.level, i - 1, j)


def fixed_point_prefix(L: LSystem, m: int) -> str:
    """First ``m`` symbols of ``tau`` applied to the fixed point of the axiom."""
    a = classify(L).prolongable
    if a is None:
        raise ValueError("system is not prolongable")
    if m < 1:
        raise ValueError("m must be positive")
    ex = Expander(L.rules, L.coding, m + 1)
    t = 0
    while ex.length(a, t) < m:
        t += 1
        if t > m:
            raise GrowthStalled(f"no level of length {m} within {m} steps")
    return ex.slice(a, t, 0, m)

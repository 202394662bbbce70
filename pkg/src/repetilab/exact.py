"""Exponential-time exact oracles, usable on tiny strings only."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .engine import generate
from .measures import ComplexityProfile, Parse, lz76
from .model import LSystem, system_size


class SearchLimitExceeded(RuntimeError):
    pass


def brute_substrings(w: str) -> ComplexityProfile:
    n = len(w)
    if not 1 <= n <= 1000:
        raise ValueError("brute_substrings needs 1 <= |w| <= 1000")
    counts = tuple(len({w[i:i + k] for i in range(n - k + 1)}) for k in range(1, n + 1))
    return ComplexityProfile(counts, max(Fraction(c, k) for k, c in enumerate(counts, 1)))


def brute_bwt(w: str) -> str:
    if not 1 <= len(w) <= 1000:
        raise ValueError("brute_bwt needs 1 <= |w| <= 1000")
    return "".join(r[-1] for r in sorted(w[i:] + w[:i] for i in range(len(w))))


def _pointer_map(lengths, sources):
    ptr = []
    for length, src in zip(lengths, sources):
        ptr.extend(None if src is None else src + t for t in range(length))
    return ptr


def bms_decodable(w: str, lengths, sources) -> bool:
    """True iff following source pointers from every position ends at an
    explicit symbol.  ``sources[i]`` is the 0-based copy start of phrase ``i``
    or None for an explicit symbol."""
    if sum(lengths) != len(w) or len(lengths) != len(sources):
        raise ValueError("parse does not tile the string")
    ptr = _pointer_map(lengths, sources)
    n = len(w)
    state = [0] * n  # 0 unknown, 1 on current path, 2 resolves
    for x in range(n):
        path = []
        y = x
        while y is not None and state[y] == 0:
            if not 0 <= y < n:
                return False
            state[y] = 1
            path.append(y)
            y = ptr[y]
        if y is not None and state[y] == 1:
            return False
        for p in path:
            state[p] = 2
    return True


def bms_replay(w_len: int, lengths, sources, symbols) -> str:
    """Decode a macro-scheme; ``symbols[i]`` is the explicit symbol of phrase i."""
    ptr = _pointer_map(lengths, sources)
    out = [None] * w_len
    pos = 0
    for length, sym in zip(lengths, symbols):
        if sym is not None:
            out[pos] = sym
        pos += length
    for x in range(w_len):
        y, steps = x, 0
        while out[y] is None:
            y = ptr[y]
            steps += 1
            if steps > w_len:
                raise ValueError("cyclic macro-scheme")
        out[x] = out[y]
    return "".join(out)


def parse_sources(parse: Parse):
    """Phrase lengths and sources of an LZ76 / LZ-no parse (copy-or-symbol phrases)."""
    lengths, sources = [], []
    for ph in parse:
        if ph.symbol is not None and ph.length > 1:
            raise ValueError("phrase mixes a copy and an explicit symbol")
        lengths.append(ph.length)
        sources.append(ph.source if ph.symbol is None else None)
    return lengths, sources


@dataclass(frozen=True)
class BmsWitness:
    text: str
    phrases: tuple  # (start, length, source or None)

    @property
    def b(self) -> int:
        return len(self.phrases)

    @property
    def lengths(self):
        return [p[1] for p in self.phrases]

    @property
    def sources(self):
        return [p[2] for p in self.phrases]

    def replay(self) -> str:
        syms = [self.text[s] if src is None else None for s, _, src in self.phrases]
        return bms_replay(len(self.text), self.lengths, self.sources, syms)

    def to_json(self) -> dict:
        return {"text": self.text, "b": self.b,
                "phrases": [{"start": s, "length": l, "source": src}
                            for s, l, src in self.phrases]}


def smallest_bms(w: str, limit: int = 12) -> BmsWitness:
    """Exact smallest bidirectional macro-scheme by iterative deepening.

    Length-1 phrases are explicit; longer phrases may copy from any other
    occurrence, before or after.  Among minimum schemes the first in
    (length ascending, source ascending) depth-first order is returned.
    """
    n = len(w)
    if n == 0:
        raise ValueError("empty string")
    if n > limit:
        raise SearchLimitExceeded(f"|w| = {n} exceeds the search limit {limit}")
    occ = {}
    for p in range(n):
        for L in range(2, n - p + 1):
            piece = w[p:p + L]
            srcs = [q for q in range(n - L + 1) if q != p and w[q:q + L] == piece]
            if not srcs:
                break
            occ[p, L] = srcs
    upper = len(lz76(w))
    ptr = [None] * n
    chosen = []

    def closes_cycle(p, L):
        for x in range(p, p + L):
            y, steps = ptr[x], 0
            while y is not None and steps <= n:
                if y == x:
                    return True
                y = ptr[y]
                steps += 1
        return False

    def dfs(pos, budget):
        if pos == n:
            return True
        if budget == 0:
            return False
        chosen.append((pos, 1, None))
        if dfs(pos + 1, budget - 1):
            return True
        chosen.pop()
        L = 2
        while (pos, L) in occ:
            for q in occ[pos, L]:
                for t in range(L):
                    ptr[pos + t] = q + t
                if not closes_cycle(pos, L):
                    chosen.append((pos, L, q))
                    if dfs(pos + L, budget - 1):
                        return True
                    chosen.pop()
                for t in range(L):
                    ptr[pos + t] = None
            L += 1
        return False

    for k in range(1, upper + 1):
        if dfs(0, k):
            return BmsWitness(w, tuple(chosen))
    raise AssertionError("LZ76 parse should always be a valid macro-scheme")


SYMBOLS = "xyzuvwpqrs"


def _compositions(total, parts):
    if parts == 1:
        if total >= 1:
            yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def bounded_smallest_lsystem(w: str, sigma_max: int = 2, size_max: int = 12,
                             d_max: int | None = None, node_cap: int = 10**8):
    """Smallest L-system generating ``w`` within the budget, or None.

    Enumerates by increasing size over alphabets of at most ``sigma_max``
    symbols, axioms of length 1 or 2, levels up to ``d_max`` (default
    ``|w|**2``) and codings onto the symbols of ``w``.  Returns
    ``(system, size)``.
    """
    n = len(w)
    if n == 0:
        raise ValueError("empty string")
    if d_max is None:
        d_max = n * n
    targets = sorted(set(w))
    nodes = 0
    for size in range(5, size_max + 1):
        for sigma in range(1, sigma_max + 1):
            if sigma < len(targets):
                continue
            sym = SYMBOLS[:sigma]
            for ax_len in (1, 2):
                rule_total = size - ax_len - sigma - 2
                if rule_total < sigma:
                    continue
                codings = [c for c in product(targets, repeat=sigma)
                           if set(c) == set(targets)]
                for comp in _compositions(rule_total, sigma):
                    for bodies in product(*(product(sym, repeat=k) for k in comp)):
                        rules = {a: "".join(b) for a, b in zip(sym, bodies)}
                        for axiom in map("".join, product(sym, repeat=ax_len)):
                            # Truncated levels: phi(u)[:n] only depends on u[:n].
                            cur, seen = axiom[:n], set()
                            for d in range(d_max + 1):
                                nodes += 1
                                if nodes > node_cap:
                                    raise SearchLimitExceeded(
                                        f"search exceeded the node cap of {node_cap}")
                                if len(cur) >= n:
                                    for code in codings:
                                        tau = dict(zip(sym, code))
                                        if all(tau[c] == x for c, x in zip(cur, w)):
                                            L = LSystem(sym, rules, axiom, d, n, tau)
                                            assert generate(L) == w
                                            return L, system_size(L)
                                if cur in seen:
                                    break
                                seen.add(cur)
                                cur = "".join(rules[c] for c in cur)[:n]
    return None

"""L-systems and NU-systems as plain immutable values.

Symbols are single-character strings.  Rules of an L-system are strings;
rules of a NU-system are token tuples mixing plain symbols and
:class:`Extract` tokens.  Positions inside extraction tokens are 1-based and
inclusive, following the usual ``a(k)[i:j]`` notation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence, Union

MAX_LENGTH = 2**64


class ValidationError(ValueError):
    """Raised when an operation requires a valid system and gets an invalid one."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


@dataclass(frozen=True)
class Extract:
    """Extraction token ``sym(level)[start:end]``."""

    sym: str
    level: int
    start: int
    end: int

    def __len__(self):
        return self.end - self.start + 1

    def __str__(self):
        return f"{self.sym}({self.level})[{self.start}:{self.end}]"


Token = Union[str, Extract]


def _freeze_map(m):
    return tuple(sorted(dict(m).items()))


@dataclass(frozen=True)
class LSystem:
    alphabet: tuple
    rules: Mapping[str, str]
    axiom: str
    level: int
    length: int
    coding: Mapping[str, str] = field(default=None)

    def __post_init__(self):
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "rules", dict(self.rules))
        coding = {a: a for a in self.alphabet} if self.coding is None else dict(self.coding)
        object.__setattr__(self, "coding", coding)

    def __hash__(self):
        return hash((self.alphabet, _freeze_map(self.rules), self.axiom,
                     self.level, self.length, _freeze_map(self.coding)))

    def replace(self, **changes) -> "LSystem":
        kw = dict(alphabet=self.alphabet, rules=self.rules, axiom=self.axiom,
                  level=self.level, length=self.length, coding=self.coding)
        kw.update(changes)
        return LSystem(**kw)

    @property
    def width(self) -> int:
        return max(len(r) for r in self.rules.values())


@dataclass(frozen=True)
class NUSystem:
    alphabet: tuple
    rules: Mapping[str, tuple]
    axiom: tuple
    level: int
    length: int
    coding: Mapping[str, str] = field(default=None)

    def __post_init__(self):
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "rules", {a: tuple(r) for a, r in dict(self.rules).items()})
        object.__setattr__(self, "axiom", tuple(self.axiom))
        coding = {a: a for a in self.alphabet} if self.coding is None else dict(self.coding)
        object.__setattr__(self, "coding", coding)

    def __hash__(self):
        return hash((self.alphabet, _freeze_map(self.rules), self.axiom,
                     self.level, self.length, _freeze_map(self.coding)))

    def tokens(self):
        """All extraction tokens, in order of first appearance (axiom first)."""
        seen = {}
        for seq in (self.axiom, *(self.rules[a] for a in self.alphabet if a in self.rules)):
            for tok in seq:
                if isinstance(tok, Extract):
                    seen.setdefault(tok, None)
        return list(seen)

    @classmethod
    def from_lsystem(cls, L: LSystem) -> "NUSystem":
        return cls(L.alphabet, {a: tuple(r) for a, r in L.rules.items()},
                   tuple(L.axiom), L.level, L.length, L.coding)


@dataclass(frozen=True)
class VariantClasses:
    expanding: bool
    uniform: bool
    prolongable: str | None  # witness symbol
    identity_coding: bool

    @property
    def class_lm(self):
        return self.prolongable is not None

    @property
    def class_ld(self):
        return self.identity_coding

    @property
    def class_le(self):
        return self.expanding

    @property
    def class_lu(self):
        return self.uniform

    @property
    def class_lp(self):
        return self.class_lm and self.identity_coding

    @property
    def class_la(self):
        return self.class_lm and self.uniform

    def labels(self) -> list[str]:
        out = []
        if self.prolongable is not None:
            out.append(f"prolongable({self.prolongable})")
        if self.expanding:
            out.append("expanding")
        if self.uniform:
            out.append("uniform")
        if self.identity_coding:
            out.append("identity-coding")
        for name in ("m", "d", "e", "u", "p", "a"):
            if getattr(self, f"class_l{name}"):
                out.append(f"ℓ_{name}")
        return out

    def __str__(self):
        return " ".join(self.labels())


def _check_common(alphabet, rules, coding, level, length, axiom_len) -> list[str]:
    errs = []
    if not alphabet:
        errs.append("empty alphabet")
    for a in alphabet:
        if not isinstance(a, str) or len(a) != 1:
            errs.append(f"symbol {a!r} is not a single character")
    if len(set(alphabet)) != len(alphabet):
        errs.append("duplicate alphabet symbols")
    sigma = set(alphabet)
    for a in alphabet:
        if a not in rules:
            errs.append(f"missing rule for {a}")
        if a not in coding:
            errs.append(f"missing coding for {a}")
        elif not isinstance(coding[a], str) or len(coding[a]) != 1:
            errs.append(f"coding of {a} is not a single symbol")
    for a in rules:
        if a not in sigma:
            errs.append(f"rule for unknown symbol {a!r}")
    for a in coding:
        if a not in sigma:
            errs.append(f"coding for unknown symbol {a!r}")
    if axiom_len == 0:
        errs.append("empty axiom")
    if not isinstance(length, int) or length < 1:
        errs.append("length must be a positive integer")
    elif length >= MAX_LENGTH:
        errs.append("length does not fit in a 64-bit word")
    if not isinstance(level, int) or level < 0:
        errs.append("level must be a non-negative integer")
    elif isinstance(length, int) and length >= 1 and level > length * length:
        errs.append(f"level {level} exceeds length^2 = {length * length}")
    return errs


def validate_lsystem(L: LSystem) -> list[str]:
    """Return the list of violated invariants; empty means valid."""
    errs = _check_common(L.alphabet, L.rules, L.coding, L.level, L.length, len(L.axiom))
    sigma = set(L.alphabet)
    for a in L.alphabet:
        rhs = L.rules.get(a)
        if rhs is None:
            continue
        if len(rhs) == 0:
            errs.append(f"empty rule for {a}")
        for b in rhs:
            if b not in sigma:
                errs.append(f"rule for {a} uses unknown symbol {b!r}")
    for b in L.axiom:
        if b not in sigma:
            errs.append(f"unknown axiom symbol {b!r}")
    return errs


def _check_tokens(where, seq, sigma, n) -> list[str]:
    errs = []
    for tok in seq:
        if isinstance(tok, Extract):
            if tok.sym not in sigma:
                errs.append(f"{where}: token {tok} uses unknown symbol")
            if not (1 <= tok.start <= tok.end):
                errs.append(f"{where}: token {tok} has an empty or inverted interval")
            if isinstance(n, int) and (tok.end > n or tok.level > n):
                errs.append(f"{where}: token {tok} has an index above n = {n}")
            if tok.level < 0:
                errs.append(f"{where}: token {tok} has a negative level")
        elif tok not in sigma:
            errs.append(f"{where}: unknown symbol {tok!r}")
    return errs


def validate_nu_structure(N: NUSystem) -> list[str]:
    """Structural checks of a NU-system (everything except extraction cycles)."""
    errs = _check_common(N.alphabet, N.rules, N.coding, N.level, N.length, len(N.axiom))
    sigma = set(N.alphabet)
    for a in N.alphabet:
        rhs = N.rules.get(a)
        if rhs is None:
            continue
        if len(rhs) == 0:
            errs.append(f"empty rule for {a}")
        errs += _check_tokens(f"rule for {a}", rhs, sigma, N.length)
    errs += _check_tokens("axiom", N.axiom, sigma, N.length)
    return errs


def require_valid(L: LSystem) -> None:
    errs = validate_lsystem(L)
    if errs:
        raise ValidationError(errs)


def system_size(L: LSystem) -> int:
    require_valid(L)
    return sum(len(L.rules[a]) for a in L.alphabet) + len(L.axiom) + len(L.alphabet) + 2


def token_size(seq: Sequence[Token]) -> int:
    return sum(4 if isinstance(t, Extract) else 1 for t in seq)


def nu_size(N: NUSystem) -> int:
    errs = validate_nu_structure(N)
    if errs:
        raise ValidationError(errs)
    return (sum(token_size(N.rules[a]) for a in N.alphabet) + token_size(N.axiom)
            + len(N.alphabet) + 2)


def classify(L: LSystem) -> VariantClasses:
    require_valid(L)
    lengths = [len(L.rules[a]) for a in L.alphabet]
    expanding = min(lengths) >= 2
    uniform = expanding and len(set(lengths)) == 1
    prolongable = None
    if len(L.axiom) == 1:
        a = L.axiom
        if len(L.rules[a]) >= 2 and L.rules[a][0] == a:
            prolongable = a
    identity = all(L.coding[a] == a for a in L.alphabet)
    return VariantClasses(expanding, uniform, prolongable, identity)

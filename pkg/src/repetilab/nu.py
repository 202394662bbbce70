"""Evaluation and validation of NU-systems.

An extraction token ``a(k)[i:j]`` stands for ``tau(E^k(a))[i:j]`` where ``E``
is one NU rewriting step.  Resolved tokens are already coded and inert: later
steps copy them verbatim and the outer coding does not touch them again.
"""

from __future__ import annotations

from .engine import ExpansionError, Expander
from .model import Extract, NUSystem, ValidationError, validate_nu_structure


def extraction_graph(N: NUSystem) -> dict[Extract, list[Extract]]:
    """Edges ``u -> v`` when ``v`` occurs in the rule of a symbol reachable from
    ``u.sym`` in fewer than ``u.level`` rewriting steps."""
    graph = {}
    for u in N.tokens():
        seen = {u.sym}
        frontier = [u.sym]
        for _ in range(u.level - 1):
            nxt = []
            for b in frontier:
                for x in N.rules.get(b, ()):
                    if not isinstance(x, Extract) and x not in seen:
                        seen.add(x)
                        nxt.append(x)
            if not nxt:
                break
            frontier = nxt
        edges = {}
        if u.level >= 1:
            for b in seen:
                for x in N.rules.get(b, ()):
                    if isinstance(x, Extract):
                        edges.setdefault(x, None)
        graph[u] = list(edges)
    return graph


def find_extraction_cycle(N: NUSystem) -> list[Extract] | None:
    """A cycle of extraction tokens (first token repeated at the end), or None."""
    graph = extraction_graph(N)
    WHITE, GREY, BLACK = 0, 1, 2
    color = dict.fromkeys(graph, WHITE)
    for root in graph:
        if color[root] != WHITE:
            continue
        path = [root]
        color[root] = GREY
        iters = [iter(graph[root])]
        while iters:
            v = next(iters[-1], None)
            if v is None:
                color[path.pop()] = BLACK
                iters.pop()
                continue
            c = color.get(v, BLACK)
            if c == GREY:
                return path[path.index(v):] + [v]
            if c == WHITE:
                color[v] = GREY
                path.append(v)
                iters.append(iter(graph[v]))
    return None


def validate_nu(N: NUSystem) -> list[str]:
    errs = validate_nu_structure(N)
    if errs:
        return errs
    cycle = find_extraction_cycle(N)
    if cycle:
        errs.append("extraction cycle: " + " -> ".join(map(str, cycle)))
    return errs


class NUEvaluator:
    """Single-system evaluator with a per-token memo table."""

    def __init__(self, N: NUSystem, memo: bool = True, reach: int = 0):
        errs = validate_nu(N)
        if errs:
            raise ValidationError(errs)
        self.system = N
        cap = max([N.length, reach] + [t.end for t in N.tokens()]) + 1
        self.memo = {} if memo else None
        self.expander = Expander(N.rules, N.coding, cap, self.resolve)

    def resolve(self, tok: Extract) -> str:
        if self.memo is not None and tok in self.memo:
            return self.memo[tok]
        size = self.expander.length(tok.sym, tok.level)
        if size < tok.end:
            raise ExpansionError(f"slice beyond expansion: token {tok} but level length is {size}")
        s = self.expander.slice(tok.sym, tok.level, tok.start - 1, tok.end)
        if self.memo is not None:
            self.memo[tok] = s
        return s

    def generate(self) -> str:
        N = self.system
        ex = self.expander
        total = 0
        for x in N.axiom:
            total += len(x) if isinstance(x, Extract) else ex.length(x, N.level)
        if total < N.length:
            raise ExpansionError(
                f"prefix longer than expansion: n = {N.length} but expansion has length {total}")
        return ex.slice(N.axiom, N.level, 0, N.length)


def resolve_extraction(N: NUSystem, tok: Extract) -> str:
    return NUEvaluator(N, reach=tok.end).resolve(tok)


def nu_generate(N: NUSystem, memo: bool = True) -> str:
    return NUEvaluator(N, memo=memo).generate()


def nu_expand_full(N: NUSystem, guard: int = 10**6) -> str:
    """Materialising reference evaluator: the whole coded last level, untruncated."""
    errs = validate_nu(N)
    if errs:
        raise ValidationError(errs)
    cache = {}

    def level(seq, k):
        # Items are plain symbols or already resolved strings wrapped in a tuple.
        cur = [resolve_tok(x) if isinstance(x, Extract) else x for x in seq]
        for _ in range(k):
            nxt = []
            for x in cur:
                if isinstance(x, tuple):
                    nxt.append(x)
                else:
                    nxt.extend(resolve_tok(y) if isinstance(y, Extract) else y
                               for y in N.rules[x])
            if sum(len(x[0]) if isinstance(x, tuple) else 1 for x in nxt) > guard:
                raise ExpansionError("expansion too large")
            cur = nxt
        return "".join(x[0] if isinstance(x, tuple) else N.coding[x] for x in cur)

    def resolve_tok(tok):
        if tok not in cache:
            s = level([tok.sym], tok.level)
            if len(s) < tok.end:
                raise ExpansionError(f"slice beyond expansion: token {tok}")
            cache[tok] = (s[tok.start - 1:tok.end],)
        return cache[tok]

    return level(N.axiom, N.level)

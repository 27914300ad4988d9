"""The presented algebra A_n on generators E_0, ..., E_n.

Words are tuples of generator indices (E = E_0, F = E_n).  Distant generators
commute, so a word is really an element of a trace monoid; relation matching
is done on its heap (the dependency order of letter occurrences), which finds
a relation's left-hand side whenever *some* commutation-equivalent word
contains it as a factor.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from . import diagrams as dg
from .diagrams import DELTA, DELTA_L, DELTA_R, KAPPA_L, KAPPA_LR, KAPPA_R, ZERO_WEIGHT, add_weights
from .errors import BudgetError, PreconditionError, VerificationError

Word = tuple[int, ...]


def commute(i: int, j: int) -> bool:
    return abs(i - j) > 1


def gen_name(n: int, k: int) -> str:
    if k == 0:
        return "E"
    if k == n:
        return "F"
    return f"E{k}"


# ---------------------------------------------------------------------------
# Cartier-Foata form


@dataclass(frozen=True, order=True)
class ReducedMonomial:
    """A commutation class stored as its Cartier-Foata blocks (each sorted)."""

    n: int
    blocks: tuple[tuple[int, ...], ...]

    @property
    def word(self) -> Word:
        return tuple(k for b in self.blocks for k in b)

    def __len__(self):
        return sum(map(len, self.blocks))

    def to_str(self) -> str:
        return "|".join(".".join(map(str, b)) for b in self.blocks) or "-"

    @classmethod
    def from_str(cls, n: int, text: str) -> "ReducedMonomial":
        if text == "-":
            return cls(n, ())
        return cls(n, tuple(tuple(int(k) for k in b.split(".")) for b in text.split("|")))

    def pretty(self) -> str:
        return "".join(gen_name(self.n, k) for k in self.word) or "1"


def _depths(word: Sequence[int]) -> list[int]:
    depth = []
    for i, a in enumerate(word):
        d = 0
        for j in range(i):
            if not commute(word[j], a) and depth[j] >= d:
                d = depth[j] + 1
        depth.append(d)
    return depth


def cf_normal_form(word: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    """Cartier-Foata blocks of a word: block j holds the letters of heap depth j."""
    depth = _depths(word)
    if not depth:
        return ()
    blocks = [[] for _ in range(max(depth) + 1)]
    for a, d in zip(word, depth):
        blocks[d].append(a)
    return tuple(tuple(sorted(b)) for b in blocks)


def canonical(n: int, word: Sequence[int]) -> ReducedMonomial:
    return ReducedMonomial(n, cf_normal_form(word))


def descents(word: Sequence[int]) -> tuple[frozenset[int], frozenset[int]]:
    """(left descent set, right descent set)."""
    blocks = cf_normal_form(word)
    if not blocks:
        return frozenset(), frozenset()
    right = cf_normal_form(tuple(reversed(tuple(word))))
    return frozenset(blocks[0]), frozenset(right[0])


# ---------------------------------------------------------------------------
# relations


@dataclass(frozen=True)
class Relation:
    name: str
    lhs: Word
    weight: tuple[int, ...]
    rhs: Word


def special_words(n: int) -> tuple[Word, Word]:
    """(I, J): I collects the odd-index generators, J the even-index ones."""
    if n == 1:
        return (1,), (0,)
    return tuple(range(1, n + 1, 2)), tuple(range(0, n + 1, 2))


def _w(slot: int) -> tuple[int, ...]:
    return dg._unit(slot)


@lru_cache(maxsize=None)
def relations(n: int) -> tuple[Relation, ...]:
    if n < 1:
        raise PreconditionError("rank must be at least 1")
    rels = [Relation("E^2", (0, 0), _w(DELTA_L), (0,)), Relation("F^2", (n, n), _w(DELTA_R), (n,))]
    rels += [Relation(f"E{i}^2", (i, i), _w(DELTA), (i,)) for i in range(1, n)]
    if n >= 2:
        rels.append(Relation("E1 E E1", (1, 0, 1), _w(KAPPA_L), (1,)))
        rels.append(Relation(f"E{n - 1} F E{n - 1}", (n - 1, n, n - 1), _w(KAPPA_R), (n - 1,)))
    for i in range(1, n):
        for j in (i - 1, i + 1):
            if 1 <= j <= n - 1:
                rels.append(Relation(f"E{i} E{j} E{i}", (i, j, i), ZERO_WEIGHT, (i,)))
    I, J = special_words(n)
    rels.append(Relation("IJI", I + J + I, _w(KAPPA_LR), I))
    rels.append(Relation("JIJ", J + I + J, _w(KAPPA_LR), J))
    return tuple(rels)


class _Heap:
    def __init__(self, word: Sequence[int]):
        self.word = tuple(word)
        L = len(self.word)
        below = [0] * L
        for i in range(L):
            m = 0
            for j in range(i):
                if not commute(self.word[j], self.word[i]):
                    m |= (1 << j) | below[j]
            below[i] = m
        above = [0] * L
        for i in range(L):
            b = below[i]
            j = 0
            while b:
                if b & 1:
                    above[j] |= 1 << i
                b >>= 1
                j += 1
        self.below, self.above = below, above
        self.positions: dict[int, list[int]] = {}
        for i, a in enumerate(self.word):
            self.positions.setdefault(a, []).append(i)

    def convex(self, mask: int) -> bool:
        for z in range(len(self.word)):
            if not (mask >> z) & 1 and self.below[z] & mask and self.above[z] & mask:
                return False
        return True

    def occurrences(self, pattern: Word, first_only: bool = True) -> list[tuple[int, ...]]:
        """Convex position sets whose induced trace equals ``pattern``."""
        k = len(pattern)
        found = []
        chosen: list[int] = []

        def rec(a: int, mask: int) -> bool:
            if a == k:
                if self.convex(mask):
                    found.append(tuple(chosen))
                    return first_only
                return False
            letter = pattern[a]
            lo = -1
            for b in range(a):
                if not commute(pattern[b], letter):
                    lo = max(lo, chosen[b])
            for pos in self.positions.get(letter, ()):
                if pos <= lo or (mask >> pos) & 1:
                    continue
                # a later-matched dependent letter must not precede an earlier one
                chosen.append(pos)
                if rec(a + 1, mask | (1 << pos)):
                    return True
                chosen.pop()
            return False

        rec(0, 0)
        return found

    def replace(self, occ: Sequence[int], rhs: Word) -> Word:
        mask = 0
        for p in occ:
            mask |= 1 << p
        pre = 0
        for p in occ:
            pre |= self.below[p]
        pre &= ~mask
        head = [self.word[z] for z in range(len(self.word)) if (pre >> z) & 1]
        tail = [self.word[z] for z in range(len(self.word)) if not ((pre | mask) >> z) & 1]
        return tuple(head) + rhs + tuple(tail)


def applicable_relations(n: int, word: Sequence[int]) -> set[str]:
    heap = _Heap(word)
    return {r.name for r in relations(n) if heap.occurrences(r.lhs)}


def reduce(n: int, word: Sequence[int], ps=None, rng: random.Random | None = None):
    """Rewrite to a reduced monomial.

    Returns ``(weight, ReducedMonomial)``, or ``(coefficient, ReducedMonomial)``
    when a ParamSet ``ps`` is supplied.
    """
    rels = relations(n)
    word = tuple(word)
    if any(not 0 <= k <= n for k in word):
        raise PreconditionError(f"letter out of range in {word}")
    weight = ZERO_WEIGHT
    while True:
        heap = _Heap(word)
        order = list(rels)
        if rng:
            rng.shuffle(order)
        step = None
        for r in order:
            occ = heap.occurrences(r.lhs, first_only=rng is None)
            if occ:
                step = (r, rng.choice(occ) if rng else occ[0])
                break
        if step is None:
            break
        r, occ = step
        word = heap.replace(occ, r.rhs)
        weight = add_weights(weight, r.weight)
    mono = canonical(n, word)
    if ps is not None:
        return ps.weight(weight), mono
    return weight, mono


def is_reduced(n: int, word: Sequence[int]) -> bool:
    heap = _Heap(word)
    return not any(heap.occurrences(r.lhs) for r in relations(n))


def reducibility(n: int, word: Sequence[int]) -> dict[str, list[tuple[int, int]]]:
    """Witnesses (s, t) for left and right reducibility (t not E or F)."""

    def side(w: Word) -> list[tuple[int, int]]:
        out = []
        heads = cf_normal_form(w)[0] if w else ()
        for s in heads:
            i = w.index(s)
            rest = w[:i] + w[i + 1:]
            if not rest:
                continue
            for t in cf_normal_form(rest)[0]:
                if not commute(s, t) and s != t and t not in (0, n):
                    out.append((s, t))
        return sorted(set(out))

    w = tuple(word)
    return {"left": side(w), "right": side(tuple(reversed(w)))}


# ---------------------------------------------------------------------------
# the map to diagrams and the verification


def phi(n: int, word: Sequence[int], ps=None):
    """Image of a monomial in b_n^x: a weighted basis diagram."""
    res = dg.multiply_word(n, tuple(word))
    if ps is not None:
        return ps.weight(res.weight), res.diagram
    return res


@lru_cache(maxsize=None)
def enumerate_reduced(n: int, budget: int = 200_000) -> tuple[ReducedMonomial, ...]:
    """Breadth-first closure of the empty word under right multiplication."""
    start = ReducedMonomial(n, ())
    seen = {start}
    order = [start]
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for k in range(n + 1):
            _, v = reduce(n, u.word + (k,))
            if v not in seen:
                seen.add(v)
                order.append(v)
                queue.append(v)
                if len(seen) > budget:
                    raise BudgetError(f"more than {budget} reduced monomials at rank {n}")
    return tuple(order)


@dataclass
class IsomorphismReport:
    n: int
    reduced_count: int
    diagram_count: int
    bijective: bool
    unit_images: bool
    pairs_checked: int
    exhaustive: bool
    failures: list = field(default_factory=list)
    table: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.reduced_count == self.diagram_count and self.bijective and not self.failures

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "reduced_count": self.reduced_count,
            "diagram_count": self.diagram_count,
            "bijective": self.bijective,
            "unit_images": self.unit_images,
            "pairs_checked": self.pairs_checked,
            "exhaustive": self.exhaustive,
            "failures": self.failures[:20],
            "bijection": self.table,
            "passed": self.passed,
        }


def verify_isomorphism(n: int, sample: int | None = None, seed: int = 0, max_failures: int = 20) -> IsomorphismReport:
    """Check that E_k -> generator(k) is an isomorphism A_n -> b_n^x.

    All pairs are compared when ``sample`` is None; otherwise ``sample`` random pairs.
    """
    reduced = enumerate_reduced(n)
    basis = dg.enumerate_basis(n)
    images = [phi(n, u.word) for u in reduced]
    diagrams_hit = [r.diagram for r in images]
    bijective = len(set(diagrams_hit)) == len(diagrams_hit) and set(diagrams_hit) == set(basis)
    unit = all(r.weight == ZERO_WEIGHT for r in images)
    report = IsomorphismReport(n, len(reduced), len(basis), bijective, unit, 0, sample is None)
    report.table = [[u.to_str(), r.diagram.to_str(), list(r.weight)] for u, r in zip(reduced, images)]
    if sample is None:
        pairs: Iterable = ((i, j) for i in range(len(reduced)) for j in range(len(reduced)))
    else:
        rng = random.Random(seed)
        pairs = [(rng.randrange(len(reduced)), rng.randrange(len(reduced))) for _ in range(sample)]
    for i, j in pairs:
        u, v = reduced[i], reduced[j]
        w_red, r = reduce(n, u.word + v.word)
        img = phi(n, r.word)
        lhs = (add_weights(w_red, img.weight), img.diagram)
        prod = dg.compose(images[i].diagram, images[j].diagram)
        rhs = (add_weights(images[i].weight, images[j].weight, prod.weight), prod.diagram)
        report.pairs_checked += 1
        if lhs != rhs:
            report.failures.append({
                "u": u.to_str(), "v": v.to_str(),
                "presentation": [list(lhs[0]), lhs[1].to_str()],
                "diagrams": [list(rhs[0]), rhs[1].to_str()],
            })
            if len(report.failures) >= max_failures:
                break
    return report


def commutation_class(word: Sequence[int], limit: int = 100_000) -> set[Word]:
    """Brute-force closure under swapping adjacent commuting letters (oracle)."""
    start = tuple(word)
    seen = {start}
    queue = deque([start])
    while queue:
        w = queue.popleft()
        for i in range(len(w) - 1):
            if commute(w[i], w[i + 1]):
                v = w[:i] + (w[i + 1], w[i]) + w[i + 2:]
                if v not in seen:
                    seen.add(v)
                    queue.append(v)
                    if len(seen) > limit:
                        raise BudgetError("commutation class too large")
    return seen


def require(report: IsomorphismReport) -> IsomorphismReport:
    if not report.passed:
        raise VerificationError(f"presentation check failed at n={report.n}", payload=report.to_json())
    return report

"""Label posets and their consistency with hom spaces between standard modules."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property

from . import cells as C
from .conditions import QFactor, generic_unit_point, gmp_at, point_on
from .embeddings import CONDITIONS, FAMILIES
from .errors import PoleError
from .ring import DEFAULT_PRIME


@dataclass(frozen=True)
class Poset:
    """Covers are pairs ``(upper, lower)``."""

    n: int
    name: str
    covers: frozenset[tuple[int, int]]

    @property
    def labels(self) -> list[int]:
        return list(C.labels(self.n))

    @cached_property
    def _below(self) -> dict[int, frozenset[int]]:
        down: dict[int, set[int]] = {l: set() for l in self.labels}
        for a, b in self.covers:
            down[a].add(b)
        out: dict[int, frozenset[int]] = {}

        def walk(a):
            if a not in out:
                acc = set()
                for b in down[a]:
                    acc.add(b)
                    acc |= walk(b)
                out[a] = frozenset(acc)
            return out[a]

        for l in self.labels:
            walk(l)
        return out

    def less(self, b: int, a: int) -> bool:
        """True when b < a."""
        return b in self._below[a]

    def comparable(self, a: int, b: int) -> bool:
        return a == b or self.less(a, b) or self.less(b, a)

    def maximal(self) -> list[int]:
        return [a for a in self.labels if not any(self.less(a, b) for b in self.labels)]

    def minimal(self) -> list[int]:
        return [a for a in self.labels if not self._below[a]]

    def to_json(self) -> dict:
        return {"n": self.n, "name": self.name, "labels": self.labels,
                "covers": sorted([list(c) for c in self.covers]),
                "maximal": self.maximal(), "minimal": self.minimal()}


def chain_poset(n: int) -> Poset:
    """0 on top, then the pairs {k, -k}, each element above both of the next pair, and -n at the bottom."""
    covers = set()
    if n >= 2:
        covers |= {(0, 1), (0, -1)}
        for k in range(1, n - 1):
            for a in (k, -k):
                for b in (k + 1, -(k + 1)):
                    covers.add((a, b))
        covers |= {(n - 1, -n), (-(n - 1), -n)}
    else:
        covers.add((0, -1))
    return Poset(n, "chain", frozenset(c for c in covers if _valid(n, *c)))


def coarse_poset(n: int) -> Poset:
    """0 covers +-1 and +-2; each k != 0 covers the same-signed k+-2 step and both of +-(|k|+3)."""
    covers = {(0, 1), (0, -1), (0, 2), (0, -2)}
    for k in range(1, n + 1):
        for s in (1, -1):
            a = s * k
            covers |= {(a, s * (k + 2)), (a, k + 3), (a, -(k + 3))}
    return Poset(n, "coarse", frozenset(c for c in covers if _valid(n, *c)))


def _valid(n: int, a: int, b: int) -> bool:
    return -n <= a <= n - 1 and -n <= b <= n - 1


# ---------------------------------------------------------------------------
# consistency with hom spaces


@dataclass
class ConsistencyReport:
    n: int
    poset: str
    nonzero: list[tuple[int, int, int]] = field(default_factory=list)
    violations: list[tuple[int, int, int]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {"n": self.n, "poset": self.poset, "passed": self.passed,
                "nonzero_homs": [list(x) for x in self.nonzero],
                "violations": [list(x) for x in self.violations]}


def poset_consistency(n: int, ps, poset: Poset | None = None) -> ConsistencyReport:
    """Every nonzero Hom(S(b), S(a)) with b != a must have b < a."""
    poset = poset or coarse_poset(n)
    report = ConsistencyReport(n, poset.name)
    mods = {l: C.cell_module(n, l) for l in C.labels(n)}
    nums = {l: C.numeric_module(m, ps) for l, m in mods.items()}
    for b in C.labels(n):
        for a in C.labels(n):
            if a == b:
                continue
            dim = C.hom_space_dim(mods[b], nums[a], ps)
            if dim:
                report.nonzero.append((b, a, dim))
                if not poset.less(b, a):
                    report.violations.append((b, a, dim))
    return report


# ---------------------------------------------------------------------------
# weak minimality: every covering edge is forced by some nonzero hom


def candidate_conditions(n: int) -> list[tuple[str, str]]:
    """(source, condition) pairs; family conditions at every rank m of the parity of n first."""
    out: list[tuple[str, str]] = []
    seen = set()

    def add(src, text):
        f = QFactor.parse(text, n)
        if f not in seen and (f.w1 or f.w2 or f.theta):
            seen.add(f)
            out.append((src, f.expression()))

    for m in range(n, 0, -2):
        for c in CONDITIONS:
            add(f"family@m={m}", c.replace("n", str(m)))
    span = 2 * n + 3
    for k in range(-span, span + 1):
        for form in ("w1", "w2", "w1+w2", "w1-w2"):
            add("search", f"{form}+({k})")
    for k in range(-span, span + 1):
        for form in ("w1+w2+theta", "w1+w2-theta", "w1-w2+theta", "w1-w2-theta"):
            add("search", f"({form}+({k}))/2")
    return out


@dataclass
class MinimalityReport:
    n: int
    witnesses: dict[tuple[int, int], dict] = field(default_factory=dict)
    missing: list[tuple[int, int]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.missing

    def to_json(self) -> dict:
        return {"n": self.n, "passed": self.passed,
                "witnesses": [{"upper": a, "lower": b, **w} for (a, b), w in sorted(self.witnesses.items())],
                "missing": [list(x) for x in self.missing]}


def minimality_witnesses(n: int, seed: int = 0, p: int = DEFAULT_PRIME) -> MinimalityReport:
    """For each covering edge a > b look for a point with Hom(S(b), S(a)) != 0."""
    poset = coarse_poset(n)
    todo = sorted(poset.covers)
    report = MinimalityReport(n)
    mods = {l: C.cell_module(n, l) for l in C.labels(n)}
    rng = random.Random(seed)
    points = []
    for src, cond in candidate_conditions(n):
        try:
            points.append((src, cond, point_on(cond, rng, p, n=n)))
        except PoleError:
            continue
    for src, cond, pt in points:
        if not todo:
            break
        ps = gmp_at(pt, n, p)
        left = []
        for a, b in todo:
            dim = C.hom_space_dim(mods[b], mods[a], ps)
            if dim:
                report.witnesses[(a, b)] = {"condition": f"[{cond}]", "source": src, "point": pt, "hom_dim": dim}
            else:
                left.append((a, b))
        todo = left
    report.missing = todo
    return report


def family_edges(n: int) -> set[tuple[int, int]]:
    """Covering edges (upper, lower) realised directly by the rank-n map families."""
    out = set()
    for fam in FAMILIES:
        if n >= fam.min_rank:
            a, b = fam.labels(n)
            out.add((b, a))
    return out


__all__ = ["Poset", "chain_poset", "coarse_poset", "poset_consistency", "minimality_witnesses",
           "candidate_conditions", "family_edges", "generic_unit_point"]

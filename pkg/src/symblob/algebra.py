"""Linear combinations of basis diagrams, structure constants, TL, corners."""

from __future__ import annotations

import json
import os
import threading
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from . import __version__
from . import diagrams as dg
from .diagrams import Diagram
from .errors import PreconditionError
from .presentation import relations
from .ring import ParamSet


class AlgElement:
    """A sparse linear combination of basis diagrams of one rank."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping[Diagram, object] | Iterable[tuple[Diagram, object]] = ()):
        self.n = n
        acc: dict[Diagram, object] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for d, c in items:
            if d.n != n:
                raise PreconditionError(f"rank {d.n} diagram in a rank {n} element")
            acc[d] = acc[d] + c if d in acc else c
        self.terms = {d: c for d, c in acc.items() if not _is_zero(c)}

    @classmethod
    def basis(cls, d: Diagram, coeff=1) -> "AlgElement":
        return cls(d.n, {d: coeff})

    def __add__(self, other: "AlgElement") -> "AlgElement":
        self._same_rank(other)
        return AlgElement(self.n, list(self.terms.items()) + list(other.terms.items()))

    def __sub__(self, other: "AlgElement") -> "AlgElement":
        return self + other.scale(-1)

    def scale(self, c) -> "AlgElement":
        return AlgElement(self.n, {d: v * c for d, v in self.terms.items()})

    def _same_rank(self, other):
        if self.n != other.n:
            raise PreconditionError(f"rank mismatch {self.n} vs {other.n}")

    def __eq__(self, other):
        if not isinstance(other, AlgElement) or self.n != other.n:
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self):
        return hash((self.n, frozenset(self.terms)))

    def is_zero(self) -> bool:
        return not self.terms

    def mod(self, m: int | None) -> "AlgElement":
        """Coefficients reduced into GF(m); unchanged when ``m`` is None."""
        if not m:
            return self
        return AlgElement(self.n, {d: c % m for d, c in self.terms.items()})

    def coefficient(self, d: Diagram, default=0):
        return self.terms.get(d, default)

    def support(self) -> list[Diagram]:
        return sorted(self.terms, key=dg.sort_key)

    def __repr__(self):
        parts = [f"({c})*[{d.to_str()}]" for d, c in sorted(self.terms.items(), key=lambda t: dg.sort_key(t[0]))]
        return " + ".join(parts) or "0"


def _is_zero(c) -> bool:
    return c == 0


def element(d: Diagram, coeff=1) -> AlgElement:
    return AlgElement.basis(d, coeff)


def mul(x: AlgElement, y: AlgElement, ps: ParamSet) -> AlgElement:
    """Bilinear extension of straighten(concat(., .))."""
    x._same_rank(y)
    out: list[tuple[Diagram, object]] = []
    m = ps.modulus
    for d1, c1 in x.terms.items():
        for d2, c2 in y.terms.items():
            r = dg.compose(d1, d2)
            c = c1 * c2 * ps.weight(r.weight)
            out.append((r.diagram, c % m if m else c))
    return AlgElement(x.n, out).mod(m)


def product(ps: ParamSet, *xs: AlgElement) -> AlgElement:
    out = xs[0]
    for x in xs[1:]:
        out = mul(out, x, ps)
    return out


def involution(x: AlgElement) -> AlgElement:
    return AlgElement(x.n, {dg.flip(d): c for d, c in x.terms.items()})


def dimension(n: int) -> int:
    return len(dg.enumerate_basis(n))


def one(n: int, ps: ParamSet) -> AlgElement:
    return element(dg.identity(n), ps.one())


def gen_element(n: int, k: int, ps: ParamSet) -> AlgElement:
    return element(dg.generator(n, k), ps.one())


def word_element(n: int, word: Sequence[int], ps: ParamSet) -> AlgElement:
    r = dg.multiply_word(n, tuple(word))
    return element(r.diagram, ps.weight(r.weight))


# ---------------------------------------------------------------------------
# structure constants


class StructureTable:
    """Lazily computed products of basis diagrams with an optional disk cache.

    Entries are parameter independent: ``(i, j) -> (weight, k)`` with basis
    index ``k``.  The cache file records the code version and the ordered
    parameter names used to interpret weights; anything else is ignored.
    """

    SCHEMA = "symblob.structure.v1"

    def __init__(self, n: int, cache_dir: str | os.PathLike | None = None, param_id: str = "weights"):
        self.n = n
        self.basis = dg.enumerate_basis(n)
        self.index = dg.basis_index(n)
        self.param_id = param_id
        self._entries: dict[tuple[int, int], tuple[tuple[int, ...], int]] = {}
        self._lock = threading.RLock()
        self._path = Path(cache_dir) / f"structure_n{n}_{param_id}.json" if cache_dir else None
        if self._path is not None:
            self._load()

    def _header(self) -> dict:
        from .ring import PARAM_NAMES

        return {"schema": self.SCHEMA, "n": self.n, "version": __version__, "param": self.param_id,
                "indeterminates": list(PARAM_NAMES), "dim": len(self.basis)}

    def _load(self) -> None:
        try:
            data = json.loads(self._path.read_text())
            if data.get("header") != self._header():
                return
            loaded = {}
            for i, j, w, k in data["entries"]:
                loaded[(i, j)] = (tuple(w), k)
        except (OSError, ValueError, KeyError, TypeError):
            return
        with self._lock:
            self._entries.update(loaded)

    def save(self) -> None:
        if self._path is None:
            return
        with self._lock:
            entries = [[i, j, list(w), k] for (i, j), (w, k) in sorted(self._entries.items())]
        self._path.parent.mkdir(parents=True, exist_ok=True)
        tmp = self._path.with_suffix(".tmp")
        tmp.write_text(json.dumps({"header": self._header(), "entries": entries}))
        tmp.replace(self._path)

    def entry(self, i: int, j: int) -> tuple[tuple[int, ...], int]:
        hit = self._entries.get((i, j))
        if hit is not None:
            return hit
        r = dg.compose(self.basis[i], self.basis[j])
        val = (r.weight, self.index[r.diagram])
        with self._lock:
            self._entries[(i, j)] = val
        return val

    def element(self, i: int, j: int, ps: ParamSet) -> AlgElement:
        w, k = self.entry(i, j)
        return element(self.basis[k], ps.weight(w))

    def __len__(self):
        return len(self._entries)


# ---------------------------------------------------------------------------
# Temperley-Lieb


@dataclass(frozen=True)
class TLAlgebra:
    """TL_n with loop value ``delta``: the undecorated part of the same engine."""

    n: int
    delta: object

    @property
    def basis(self) -> tuple[Diagram, ...]:
        return dg.tl_basis(self.n)

    def dimension(self) -> int:
        return len(self.basis)

    def U(self, i: int) -> Diagram:
        return dg.gen_ei(self.n, i)

    def mul_diagrams(self, d1: Diagram, d2: Diagram):
        if any(w for _, _, w in d1.edges + d2.edges):
            raise PreconditionError("TL diagrams carry no decorations")
        r = dg.compose(d1, d2)
        return self.delta ** r.weight[dg.DELTA], r.diagram

    def mul(self, x: AlgElement, y: AlgElement) -> AlgElement:
        out = []
        for d1, c1 in x.terms.items():
            for d2, c2 in y.terms.items():
                c, d = self.mul_diagrams(d1, d2)
                out.append((d, c1 * c2 * c))
        return AlgElement(self.n, out)


def tl_algebra(n: int, delta) -> TLAlgebra:
    return TLAlgebra(n, delta)


# ---------------------------------------------------------------------------
# corner embeddings


def _inv(ps: ParamSet, x):
    if ps.modulus:
        return pow(x, ps.modulus - 2, ps.modulus)
    return ps.one() / x


def corner_images(n: int, side: str, ps_big: ParamSet) -> list[AlgElement]:
    """Images of E_0..E_n of b_n inside the rank n+1 algebra with parameters ``ps_big``.

    ``side='e'`` uses the idempotent e/delta_L (a new strand on the left);
    ``side='f'`` uses f/delta_R (a new strand on the right).  The small algebra
    carries ``ps_big.swap_left()`` or ``ps_big.swap_right()`` respectively.
    """
    N = n + 1
    w = lambda *word: word_element(N, word, ps_big)  # noqa: E731
    if side == "e":
        inv = _inv(ps_big, ps_big.delta_L)
        imgs = [w(0, 1, 0).scale(inv)]
        imgs += [w(0, k + 1).scale(inv) for k in range(1, n + 1)]
    elif side == "f":
        inv = _inv(ps_big, ps_big.delta_R)
        imgs = [w(k, N).scale(inv) for k in range(0, n)]
        imgs.append(w(N, n, N).scale(inv))
    else:
        raise PreconditionError("side must be 'e' or 'f'")
    return imgs


def corner_idempotent(n: int, side: str, ps_big: ParamSet) -> AlgElement:
    N = n + 1
    if side == "e":
        return word_element(N, (0,), ps_big).scale(_inv(ps_big, ps_big.delta_L))
    return word_element(N, (N,), ps_big).scale(_inv(ps_big, ps_big.delta_R))


def small_params(side: str, ps_big: ParamSet) -> ParamSet:
    return ps_big.swap_left() if side == "e" else ps_big.swap_right()


def verify_corner_relations(n: int, side: str, ps_big: ParamSet) -> list[str]:
    """Names of the A_n relations that fail for the corner images (empty on success)."""
    imgs = corner_images(n, side, ps_big)
    ps_small = small_params(side, ps_big)
    unit = corner_idempotent(n, side, ps_big)
    m = ps_big.modulus

    def differ(a: AlgElement, b: AlgElement) -> bool:
        return not (a - b).mod(m).is_zero()

    bad = []
    for rel in relations(n):
        lhs = product(ps_big, *[imgs[k] for k in rel.lhs])
        rhs = product(ps_big, *[imgs[k] for k in rel.rhs]).scale(ps_small.weight(rel.weight))
        if differ(lhs, rhs):
            bad.append(rel.name)
    for k, x in enumerate(imgs):
        if differ(mul(unit, x, ps_big), x) or differ(mul(x, unit, ps_big), x):
            bad.append(f"unit{k}")
    for i in range(n + 1):
        for j in range(n + 1):
            if abs(i - j) > 1 and differ(mul(imgs[i], imgs[j], ps_big), mul(imgs[j], imgs[i], ps_big)):
                bad.append(f"commute{i},{j}")
    return bad


def corner_word_image(n: int, side: str, word: Sequence[int], ps_big: ParamSet) -> AlgElement:
    """Image of a monomial of b_n under the corner embedding into rank n+1."""
    imgs = corner_images(n, side, ps_big)
    out = corner_idempotent(n, side, ps_big)
    for k in word:
        out = mul(out, imgs[k], ps_big)
    return out

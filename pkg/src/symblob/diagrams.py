"""Decorated planar (n,n)-diagrams and the straightening calculus.

Points are numbered in boundary order: top vertex i is ``i`` and bottom
vertex j' is ``2n+1-j``.  An edge is a pair ``x < y`` carrying a decoration
word over {L, R}, read walking from ``x`` to ``y``.  In these coordinates the
left wall sits in the gap between ``2n`` and ``1`` and the right wall in the gap
between ``n`` and ``n+1``; flipping a diagram upside down is ``x -> 2n+1-x``.

Products are computed on pseudo-diagrams (loops and unreduced words allowed)
and straightened back to the basis.  The scalar produced by straightening is
always a monomial in the six parameters, so it is returned as an exponent
vector (a *weight*) indexed like :data:`symblob.ring.PARAM_NAMES`.
"""

from __future__ import annotations

import itertools
import random
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from .errors import PreconditionError, VerificationError

# weight vector slots
DELTA, DELTA_L, DELTA_R, KAPPA_L, KAPPA_R, KAPPA_LR = range(6)
ZERO_WEIGHT = (0, 0, 0, 0, 0, 0)


def add_weights(*ws: Sequence[int]) -> tuple[int, ...]:
    return tuple(sum(col) for col in zip(*ws)) if ws else ZERO_WEIGHT


def _unit(slot: int, k: int = 1) -> tuple[int, ...]:
    w = [0] * 6
    w[slot] = k
    return tuple(w)


class Diagram:
    """An immutable decorated diagram in canonical form.

    ``edges`` is a tuple of ``(x, y, word)`` sorted by ``x`` with ``x < y``.
    Construction does not check basis membership; use :func:`is_basis_diagram`.
    """

    __slots__ = ("n", "edges", "_hash", "_partner")

    def __init__(self, n: int, edges: Iterable[tuple[int, int, str]]):
        self.n = n
        self.edges = tuple(sorted(edges))
        self._hash = hash((n, self.edges))
        self._partner = None

    def __eq__(self, other):
        return isinstance(other, Diagram) and self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return sort_key(self) < sort_key(other)

    def __repr__(self):
        return f"Diagram({self.to_str()!r})"

    # geometry -------------------------------------------------------------

    @property
    def partner(self) -> dict[int, tuple[int, str, bool]]:
        """point -> (other end, word, whether this point is the reading start)."""
        if self._partner is None:
            p = {}
            for x, y, w in self.edges:
                p[x] = (y, w, True)
                p[y] = (x, w, False)
            self._partner = p
        return self._partner

    def is_top(self, x: int) -> bool:
        return x <= self.n

    def lines(self) -> list[tuple[int, int, str]]:
        return [e for e in self.edges if e[0] <= self.n < e[1]]

    def propagating_count(self) -> int:
        return sum(1 for x, y, _ in self.edges if x <= self.n < y)

    def matching(self) -> tuple[tuple[int, int], ...]:
        return tuple((x, y) for x, y, _ in self.edges)

    def undecorated(self) -> "Diagram":
        return Diagram(self.n, ((x, y, "") for x, y, _ in self.edges))

    def word_at(self, x: int) -> str:
        """Decoration word of the edge at ``x``, read starting from ``x``."""
        y, w, start = self.partner[x]
        return w if start else w[::-1]

    def top_half(self):
        """Top half: top arcs with words, plus line tops with their words."""
        n = self.n
        return tuple((x, y if y <= n else None, w) for x, y, w in self.edges if x <= n)

    def bottom_half(self):
        n = self.n
        return tuple((x if x > n else None, y, w) for x, y, w in self.edges if y > n)

    # serialization --------------------------------------------------------

    def point_name(self, x: int) -> str:
        return str(x) if x <= self.n else f"{2 * self.n + 1 - x}'"

    def to_str(self) -> str:
        """``n|(a b)(c d)...|a:WORD,...`` in vertex names (bottom vertices primed)."""
        pairs = "".join(f"({self.point_name(x)} {self.point_name(y)})" for x, y, _ in self.edges)
        words = ",".join(f"{self.point_name(x)}:{w}" for x, y, w in self.edges if w)
        return f"{self.n}|{pairs}|{words}"

    @classmethod
    def from_str(cls, text: str) -> "Diagram":
        try:
            n_txt, pairs_txt, words_txt = text.strip().split("|")
            n = int(n_txt)

            def pt(tok: str) -> int:
                return 2 * n + 1 - int(tok[:-1]) if tok.endswith("'") else int(tok)

            pairs = re.findall(r"\(([^()\s]+)\s+([^()\s]+)\)", pairs_txt)
            words = {}
            for item in filter(None, words_txt.split(",")):
                k, w = item.split(":")
                words[pt(k)] = w
        except ValueError as exc:
            raise PreconditionError(f"cannot parse diagram {text!r}") from exc
        edges = []
        for a, b in pairs:
            x, y = sorted((pt(a), pt(b)))
            edges.append((x, y, words.pop(x, "")))
        if words:
            raise PreconditionError(f"words attached to non-edge-starts in {text!r}")
        d = cls(n, edges)
        _check_matching(d)
        return d

    def to_json(self) -> dict:
        return {"n": self.n, "edges": [[self.point_name(x), self.point_name(y), w] for x, y, w in self.edges]}

    @classmethod
    def from_json(cls, obj: dict) -> "Diagram":
        n = obj["n"]
        pairs = "".join(f"({a} {b})" for a, b, _ in obj["edges"])
        d0 = cls.from_str(f"{n}|{pairs}|")
        words = {}
        for a, b, w in obj["edges"]:
            pa = 2 * n + 1 - int(a[:-1]) if a.endswith("'") else int(a)
            pb = 2 * n + 1 - int(b[:-1]) if b.endswith("'") else int(b)
            words[min(pa, pb)] = w
        return cls(n, ((x, y, words[x]) for x, y, _ in d0.edges))


def _check_matching(d: Diagram) -> None:
    seen = set()
    for x, y, w in d.edges:
        if not (1 <= x < y <= 2 * d.n) or x in seen or y in seen or set(w) - {"L", "R"}:
            raise PreconditionError(f"malformed diagram {d.edges}")
        seen.update((x, y))
    if len(seen) != 2 * d.n:
        raise PreconditionError("not a perfect matching")
    for (a, b, _), (c, e, _) in itertools.combinations(d.edges, 2):
        if a < c < b < e or c < a < e < b:
            raise PreconditionError("matching is not planar")


_LETTER_RANK = {"": 0, "L": 1, "LR": 2, "R": 3, "RL": 4}


def sort_key(d: Diagram):
    """Basis order: propagating count descending, then matching, then words."""
    return (-d.propagating_count(), d.matching(), tuple(_LETTER_RANK.get(w, 9) for _, _, w in d.edges))


# ---------------------------------------------------------------------------
# exposure and basis membership


def _exposure(n: int, edges: Sequence[tuple[int, int, str]]):
    """For each edge, whether it is L-exposed and R-exposed.

    A chord separates an edge from a wall gap when exactly one of the two lies
    inside it.  The left gap is inside no chord; the right gap is inside
    exactly the propagating ones.
    """
    out = []
    for x, y, _ in edges:
        left = right = True
        for a, b, _ in edges:
            if a == x:
                continue
            inside = a < x and y < b
            if inside:
                left = False
            if inside != (a <= n < b):
                right = False
        out.append((left, right))
    return out


def exposure(d: Diagram) -> list[tuple[bool, bool]]:
    return _exposure(d.n, d.edges)


def allowed_words(n: int, x: int, y: int, left: bool, right: bool, p: int) -> tuple[str, ...]:
    words = [""]
    if left:
        words.append("L")
    if right:
        words.append("R")
    if left and right:
        if p == 1:
            words += ["LR", "RL"]
        elif x <= n:
            words.append("LR")
        else:
            words.append("RL")
    return tuple(words)


def _flattened_ok(seq: Sequence[str]) -> bool:
    """Tethers read left to right must be of the form L*R*."""
    seen_r = False
    for w in seq:
        for ch in w:
            if ch == "R":
                seen_r = True
            elif seen_r:
                return False
    return True


def _side_sequences(n: int, edges):
    """Outer top arcs and outer bottom arcs (left to right) with words read left to right."""
    top, bottom = [], []
    for x, y, w in edges:
        if any(a < x and y < b for a, b, _ in edges):
            continue
        if y <= n:
            top.append((x, w))
        elif x > n:
            bottom.append((-y, w[::-1]))
    return [w for _, w in sorted(top)], [w for _, w in sorted(bottom)]


def has_topquot_feature(d: Diagram) -> bool:
    """No lines, a doubly decorated top arc and a doubly decorated bottom arc."""
    if d.n % 2 or d.propagating_count():
        return False
    top = any(len(w) == 2 for x, y, w in d.edges if y <= d.n)
    bottom = any(len(w) == 2 for x, y, w in d.edges if x > d.n)
    return top and bottom


def is_basis_diagram(d: Diagram) -> bool:
    try:
        _check_matching(d)
    except PreconditionError:
        return False
    p = d.propagating_count()
    for (x, y, w), (left, right) in zip(d.edges, exposure(d)):
        if w not in allowed_words(d.n, x, y, left, right, p):
            return False
    if p == 0:
        top, bottom = _side_sequences(d.n, d.edges)
        if not (_flattened_ok(top) and _flattened_ok(bottom)):
            return False
    return not has_topquot_feature(d)


# ---------------------------------------------------------------------------
# enumeration


def noncrossing_matchings(points: Sequence[int]) -> Iterator[tuple[tuple[int, int], ...]]:
    """All non-crossing perfect matchings of an ordered point list."""
    if not points:
        yield ()
        return
    first = points[0]
    for k in range(1, len(points), 2):
        inner, outer = points[1:k], points[k + 1:]
        for a in noncrossing_matchings(inner):
            for b in noncrossing_matchings(outer):
                yield ((first, points[k]),) + a + b


@lru_cache(maxsize=None)
def tl_basis(n: int) -> tuple[Diagram, ...]:
    """Undecorated diagrams on n strands (a Catalan number of them)."""
    ds = [Diagram(n, ((x, y, "") for x, y in m)) for m in noncrossing_matchings(list(range(1, 2 * n + 1)))]
    return tuple(sorted(ds, key=sort_key))


@lru_cache(maxsize=None)
def enumerate_basis(n: int) -> tuple[Diagram, ...]:
    """Every basis diagram of b_n^x, in the graded order of :func:`sort_key`."""
    if n < 1:
        raise PreconditionError("rank must be at least 1")
    out = []
    for skel in tl_basis(n):
        edges = skel.edges
        p = skel.propagating_count()
        exp = _exposure(n, edges)
        choices = [allowed_words(n, x, y, l, r, p) for (x, y, _), (l, r) in zip(edges, exp)]
        for words in itertools.product(*choices):
            d = Diagram(n, ((x, y, w) for (x, y, _), w in zip(edges, words)))
            if p == 0:
                top, bottom = _side_sequences(n, d.edges)
                if not (_flattened_ok(top) and _flattened_ok(bottom)):
                    continue
            if has_topquot_feature(d):
                continue
            out.append(d)
    return tuple(sorted(out, key=sort_key))


@lru_cache(maxsize=None)
def basis_index(n: int) -> dict[Diagram, int]:
    return {d: i for i, d in enumerate(enumerate_basis(n))}


# ---------------------------------------------------------------------------
# generators and flip


def identity(n: int) -> Diagram:
    return Diagram(n, ((i, 2 * n + 1 - i, "") for i in range(1, n + 1)))


def _decorate(d: Diagram, point: int, word: str) -> Diagram:
    return Diagram(d.n, ((x, y, word if point in (x, y) else w) for x, y, w in d.edges))


def gen_e(n: int) -> Diagram:
    return _decorate(identity(n), 1, "L")


def gen_f(n: int) -> Diagram:
    return _decorate(identity(n), n, "R")


def gen_ei(n: int, i: int) -> Diagram:
    if not 1 <= i < n:
        raise PreconditionError(f"e_{i} does not exist at rank {n}")
    m = 2 * n + 1
    edges = [(i, i + 1, ""), (m - i - 1, m - i, "")]
    edges += [(j, m - j, "") for j in range(1, n + 1) if j not in (i, i + 1)]
    return Diagram(n, edges)


def generator(n: int, k: int) -> Diagram:
    """Image of E_k: E_0 = e, E_i = e_i, E_n = f."""
    if k == 0:
        return gen_e(n)
    if k == n:
        return gen_f(n)
    return gen_ei(n, k)


def generators(n: int) -> tuple[Diagram, ...]:
    """(e, e_1, ..., e_{n-1}, f)."""
    return tuple(generator(n, k) for k in range(n + 1))


def flip(d: Diagram) -> Diagram:
    m = 2 * d.n + 1
    return Diagram(d.n, ((m - y, m - x, w[::-1]) for x, y, w in d.edges))


# ---------------------------------------------------------------------------
# concatenation and straightening


@dataclass(frozen=True)
class PseudoDiagram:
    """Concatenation output: edges with unreduced words, plus closed loops."""

    n: int
    edges: tuple[tuple[int, int, str], ...]
    loops: tuple[str, ...]

    def propagating_count(self) -> int:
        return sum(1 for x, y, _ in self.edges if x <= self.n < y)


def concat(d1: Diagram, d2: Diagram) -> PseudoDiagram:
    """Stack ``d1`` above ``d2``."""
    if d1.n != d2.n:
        raise PreconditionError(f"rank mismatch {d1.n} vs {d2.n}")
    n = d1.n
    m = 2 * n + 1
    p1, p2 = d1.partner, d2.partner
    # A node is (layer, point).  Middle point j is d1's bottom m-j and d2's top j.
    visited_mid = set()

    def walk(layer: int, point: int):
        word = []
        while True:
            part = p1 if layer == 1 else p2
            other, w, start = part[point]
            word.append(w if start else w[::-1])
            if layer == 1:
                if other <= n:
                    return ("top", other), "".join(word)
                j = m - other
                visited_mid.add(j)
                layer, point = 2, j
            else:
                if other > n:
                    return ("bottom", other), "".join(word)
                visited_mid.add(other)
                layer, point = 1, m - other

    edges = []
    done = set()
    for start in range(1, m):
        if start in done:
            continue
        if start <= n:
            (kind, end), word = walk(1, start)
        else:
            (kind, end), word = walk(2, start)
        done.update((start, end))
        if start < end:
            edges.append((start, end, word))
        else:
            edges.append((end, start, word[::-1]))
    loops = []
    for j in range(1, n + 1):
        if j in visited_mid:
            continue
        # trace a closed loop starting downward from middle point j
        word = []
        layer, point = 2, j
        while True:
            visited_mid.add(point if layer == 2 else m - point)
            part = p1 if layer == 1 else p2
            other, w, start = part[point]
            word.append(w if start else w[::-1])
            if layer == 2:
                layer, point = 1, m - other
            else:
                layer, point = 2, m - other
            if layer == 2 and point == j:
                break
        loops.append("".join(word))
    return PseudoDiagram(n, tuple(sorted(edges)), tuple(loops))


_LINEAR_RULES = (("LL", "L", DELTA_L), ("RR", "R", DELTA_R), ("LRL", "L", KAPPA_LR), ("RLR", "R", KAPPA_LR))


def reduce_word(word: str, rng: random.Random | None = None) -> tuple[str, tuple[int, ...]]:
    """Rewrite a linear word with LL, RR, LRL, RLR -> L, R, L, R."""
    counts = [0] * 6
    if rng is None:
        stack: list[str] = []
        for ch in word:
            stack.append(ch)
            while True:
                if len(stack) >= 2 and stack[-1] == stack[-2]:
                    stack.pop()
                    counts[DELTA_L if ch == "L" else DELTA_R] += 1
                elif len(stack) >= 3 and stack[-1] == stack[-3]:
                    del stack[-2:]
                    counts[KAPPA_LR] += 1
                else:
                    break
        return "".join(stack), tuple(counts)
    while True:
        sites = [(i, lhs, rhs, slot) for lhs, rhs, slot in _LINEAR_RULES for i in _find_all(word, lhs)]
        if not sites:
            return word, tuple(counts)
        i, lhs, rhs, slot = rng.choice(sites)
        word = word[:i] + rhs + word[i + len(lhs):]
        counts[slot] += 1


def _find_all(word: str, pat: str) -> list[int]:
    return [i for i in range(len(word) - len(pat) + 1) if word.startswith(pat, i)]


def reduce_loop(word: str, rng: random.Random | None = None) -> tuple[int, ...]:
    """Weight of a closed loop with cyclic decoration ``word``.

    Adjacent equal letters merge first (delta_L, delta_R); what is left is an
    alternating cycle (LR)^k of weight kappa_LR^k, a single blob (kappa_L or
    kappa_R) or a bare loop (delta).
    """
    counts = [0] * 6
    w = list(word)
    while len(w) >= 2:
        sites = [i for i in range(len(w)) if w[i] == w[(i + 1) % len(w)]]
        if not sites:
            break
        i = rng.choice(sites) if rng else sites[0]
        counts[DELTA_L if w[i] == "L" else DELTA_R] += 1
        del w[i]
    if not w:
        counts[DELTA] += 1
    elif len(w) == 1:
        counts[KAPPA_L if w[0] == "L" else KAPPA_R] += 1
    else:
        counts[KAPPA_LR] += len(w) // 2
    return tuple(counts)


@dataclass(frozen=True)
class ReductionResult:
    """``weight`` is the exponent vector of the scalar multiplier."""

    weight: tuple[int, ...]
    diagram: Diagram

    def coefficient(self, ps):
        return ps.weight(self.weight)


def straighten(pd: PseudoDiagram, ps=None, rng: random.Random | None = None, check: bool = True):
    """Reduce a pseudo-diagram to a weighted basis diagram.

    With ``ps`` given, returns ``(coefficient, diagram)``; otherwise a
    :class:`ReductionResult`.  ``rng`` randomizes the order of rule application.
    """
    n = pd.n
    weights = []
    order = list(range(len(pd.edges)))
    if rng:
        rng.shuffle(order)
    new_words = [None] * len(pd.edges)
    for k in order:
        x, y, w = pd.edges[k]
        word, wt = reduce_word(w, rng)
        new_words[k] = word
        weights.append(wt)
    loops = list(pd.loops)
    if rng:
        rng.shuffle(loops)
    for lw in loops:
        weights.append(reduce_loop(lw, rng))
    d = Diagram(n, ((x, y, nw) for (x, y, _), nw in zip(pd.edges, new_words)))
    if has_topquot_feature(d):
        d = _apply_topquot(d)
        weights.append(_unit(KAPPA_LR))
    if check and not is_basis_diagram(d):
        raise VerificationError(f"straightening left a non-basis diagram {d.to_str()}", payload=pd)
    res = ReductionResult(add_weights(*weights), d)
    if ps is not None:
        return res.coefficient(ps), d
    return res


def _apply_topquot(d: Diagram) -> Diagram:
    n = d.n
    top = [(x, y) for x, y, w in d.edges if y <= n and len(w) == 2]
    bottom = [(x, y) for x, y, w in d.edges if x > n and len(w) == 2]
    (a, b), (c, e) = top[0], bottom[0]
    keep = [(x, y, w) for x, y, w in d.edges if (x, y) not in ((a, b), (c, e))]
    # (c, e) with c < e: c is the right end k' of the bottom arc, e its left end.
    return Diagram(n, keep + [(a, e, "L"), (b, c, "R")])


def concat_skeleton(d1: Diagram, d2: Diagram) -> Diagram:
    """The product with loops dropped and edge words reduced, before the topological relation."""
    pd = concat(d1, d2)
    return Diagram(pd.n, ((x, y, reduce_word(w)[0]) for x, y, w in pd.edges))


@lru_cache(maxsize=1 << 20)
def compose(d1: Diagram, d2: Diagram) -> ReductionResult:
    """Straightened product ``d1 * d2`` (d1 on top)."""
    return straighten(concat(d1, d2), check=False)


def multiply_word(n: int, word: Sequence[int]) -> ReductionResult:
    """Straightened product of generators E_k for k in ``word``."""
    out = ReductionResult(ZERO_WEIGHT, identity(n))
    for k in word:
        r = compose(out.diagram, generator(n, k))
        out = ReductionResult(add_weights(out.weight, r.weight), r.diagram)
    return out


def exposure_stable(d1: Diagram, d2: Diagram, product: Diagram) -> bool:
    """An L- (R-) exposed edge at a top vertex of d1 or bottom vertex of d2 stays exposed."""
    e1 = dict(zip(d1.edges, exposure(d1)))
    e2 = dict(zip(d2.edges, exposure(d2)))
    ep = dict(zip(product.edges, exposure(product)))
    n = d1.n

    def at(mapping, point):
        for edge, flags in mapping.items():
            if point in edge[:2]:
                return flags
        raise KeyError(point)

    for pt in range(1, n + 1):
        before, after = at(e1, pt), at(ep, pt)
        if (before[0] and not after[0]) or (before[1] and not after[1]):
            return False
    for pt in range(n + 1, 2 * n + 1):
        before, after = at(e2, pt), at(ep, pt)
        if (before[0] and not after[0]) or (before[1] and not after[1]):
            return False
    return True

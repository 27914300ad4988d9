"""Cell structure of b_n^x: labels, cell classes, cell modules and their forms.

Labels run over ``-n..n-1``.  The *through count* of a label is ``2|l|``; it is
the quantity that filters the algebra.  The rectangular propagating count is
not, since the topological relation turns two doubly decorated arcs into two
lines.

Module data is kept parameter free: actions and Gram entries are stored as
weight vectors (exponents of the six parameters) and evaluated against a
:class:`~symblob.ring.ParamSet` on demand, symbolically or in GF(p).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from . import diagrams as dg
from .diagrams import Diagram
from .errors import PreconditionError, VerificationError
from .linalg import det_bareiss, nullspace_mod, rank_mod, row_echelon_mod
from .ring import ParamSet

Word = tuple[int, ...]


# ---------------------------------------------------------------------------
# labels


def cell_label(d: Diagram) -> int:
    p = d.propagating_count()
    lines = d.lines()
    if p == 0:
        return 0
    if p == 1:
        return -1 if not lines[0][2] else 0
    left = "L" in lines[0][2]
    right = "R" in lines[-1][2]
    m = p - left - right
    return m if left else -m


def through_count(d: Diagram) -> int:
    return 2 * abs(cell_label(d))


def labels(n: int) -> range:
    return range(-n, n)


def _check_label(n: int, l: int) -> None:
    if not -n <= l <= n - 1:
        raise PreconditionError(f"label {l} out of range for rank {n}")


@dataclass(frozen=True)
class CellClass:
    n: int
    label: int
    members: tuple[Diagram, ...]

    @property
    def through_count(self) -> int:
        return 2 * abs(self.label)

    def __len__(self):
        return len(self.members)


def _sccs(nodes: Sequence[int], succ: dict[int, list[int]]) -> list[list[int]]:
    index: dict[int, int] = {}
    low: dict[int, int] = {}
    on_stack: set[int] = set()
    stack: list[int] = []
    out: list[list[int]] = []
    counter = 0
    for root in nodes:
        if root in index:
            continue
        work = [(root, iter(succ.get(root, ())))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(succ.get(w, ()))))
                    advanced = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                low[work[-1][0]] = min(low[work[-1][0]], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                out.append(comp)
    return out


@lru_cache(maxsize=None)
def cell_partition(n: int) -> tuple[CellClass, ...]:
    """Cell classes as strongly connected components of two-sided multiplication.

    Edges ``d -> g d`` and ``d -> d g`` are kept only when the through count is
    unchanged.  Each component is labelled by the anchor generator it
    contains, and the result is cross-checked against :func:`cell_label`.
    The partition is computed with generic (nonzero) parameters.
    """
    basis = dg.enumerate_basis(n)
    index = dg.basis_index(n)
    gens = dg.generators(n)
    tc = [through_count(d) for d in basis]
    succ: dict[int, list[int]] = {}
    for i, d in enumerate(basis):
        nxt = set()
        for g in gens:
            for r in (dg.compose(g, d), dg.compose(d, g)):
                j = index[r.diagram]
                if tc[j] == tc[i] and j != i:
                    nxt.add(j)
        succ[i] = sorted(nxt)
    comps = _sccs(range(len(basis)), succ)
    if len(comps) != 2 * n:
        raise VerificationError(f"rank {n}: found {len(comps)} cell classes, expected {2 * n}",
                                payload=sorted(len(c) for c in comps))
    classes = []
    for comp in comps:
        members = tuple(sorted((basis[i] for i in comp), key=dg.sort_key))
        label = cell_label(members[0])
        if any(cell_label(d) != label for d in members):
            raise VerificationError(f"rank {n}: a cell class mixes labels",
                                    payload=sorted({cell_label(d) for d in members}))
        classes.append(CellClass(n, label, members))
    classes.sort(key=lambda c: c.label)
    if [c.label for c in classes] != list(labels(n)):
        raise VerificationError(f"rank {n}: labels {[c.label for c in classes]}")
    return tuple(classes)


def cell_class(n: int, l: int) -> CellClass:
    _check_label(n, l)
    return cell_partition(n)[l + n]


# ---------------------------------------------------------------------------
# generators


def _anchor_words(n: int) -> list[tuple[int, Word]]:
    return [(-n, ()), (n - 1, (0,)), (-(n - 1), (n,)), (n - 2, (0, n)), (-(n - 2), (1,)),
            (n - 3, (0, 2)), (-(n - 3), (1, n)), (n - 4, (0, 2, n))]


def f_corner_word(m: int, word: Sequence[int], idempotent: bool = True) -> Word:
    """Rank m+1 word for a rank ``m`` word under E_k -> E_k F (k < m), E_m -> F E_m F.

    With ``idempotent`` the word starts with F, so the empty word maps to F.
    """
    N = m + 1
    out: list[int] = [N] if idempotent else []
    for k in word:
        out += [k, N] if k < m else [N, m, N]
    return tuple(out)


def e_corner_word(m: int, word: Sequence[int], idempotent: bool = True) -> Word:
    """Rank m+1 word under E_0 -> E E_1 E, E_k -> E E_{k+1}, led by E."""
    out: list[int] = [0] if idempotent else []
    for k in word:
        out += [0, 1, 0] if k == 0 else [0, k + 1]
    return tuple(out)


@lru_cache(maxsize=None)
def cell_generator_word(n: int, l: int) -> Word:
    """A word in E_0..E_n whose diagram generates the cell module of label ``l``.

    Anchors cover the labels nearest the bottom of each through-count
    stratum; every other label is reached from rank ``n-1`` through the
    f-corner, which preserves labels.
    """
    _check_label(n, l)
    for lab, word in _anchor_words(n):
        if lab != l or not all(0 <= k <= n for k in word):
            continue
        if cell_label(dg.multiply_word(n, word).diagram) == l:
            return word
    if n <= 1:
        raise VerificationError(f"no generator for label {l} at rank {n}")
    word = f_corner_word(n - 1, cell_generator_word(n - 1, l))
    if cell_label(dg.multiply_word(n, word).diagram) != l:
        raise VerificationError(f"corner recursion missed label {l} at rank {n}")
    return word


def cell_generator(n: int, l: int) -> Diagram:
    return dg.multiply_word(n, cell_generator_word(n, l)).diagram


# ---------------------------------------------------------------------------
# cell modules


def _value(ps: ParamSet, w: Sequence[int]):
    return ps.weight(tuple(w))


@dataclass(frozen=True)
class CellModule:
    """The cell module generated by ``generator`` modulo lower through counts.

    ``basis[i]`` is the element ``weight(scales[i]) * diagrams[i]``;
    ``words[i]`` satisfies ``word . generator = weight(word_weights[i]) * diagrams[i]``.
    ``action[k][i] = (j, w)`` means ``E_k diagrams[i] = weight(w) diagrams[j]`` in the
    module, and a missing entry means ``E_k`` kills ``diagrams[i]``.
    """

    n: int
    label: int
    generator_word: Word
    diagrams: tuple[Diagram, ...]
    words: tuple[Word, ...]
    word_weights: tuple[tuple[int, ...], ...]
    action: tuple[dict, ...]
    gram_weights: tuple[tuple[object, ...], ...]
    scales: tuple[tuple[int, ...], ...]
    basis_words: tuple[Word, ...] | None = None

    @property
    def dim(self) -> int:
        return len(self.diagrams)

    @property
    def generator(self) -> Diagram:
        return self.diagrams[0] if self.basis_words is None else dg.multiply_word(self.n, self.generator_word).diagram

    def action_matrix(self, k: int, ps: ParamSet):
        """Matrix of E_k in the module basis (columns are images)."""
        mat = _zero_matrix(ps, self.dim)
        for i, (j, w) in self.action[k].items():
            mat[j][i] = _value(ps, _scaled(w, self.scales[i], self.scales[j]))
        return _finish(mat, ps)

    def gram_matrix(self, ps: ParamSet):
        mat = _zero_matrix(ps, self.dim)
        for i in range(self.dim):
            for j in range(self.dim):
                w = self.gram_weights[i][j]
                if w is not None:
                    mat[i][j] = _value(ps, dg.add_weights(w, self.scales[i], self.scales[j]))
        return _finish(mat, ps)

    def involves_kappa_LR(self) -> bool:
        ws = [w for row in self.action for _, w in row.values()]
        ws += [w for row in self.gram_weights for w in row if w is not None]
        return any(w[dg.KAPPA_LR] for w in ws) or any(s[dg.KAPPA_LR] for s in self.scales)

    def basis_strings(self) -> list[str]:
        from .presentation import gen_name

        if self.basis_words is not None:
            return ["".join(gen_name(self.n, k) for k in w) or "1" for w in self.basis_words]
        return [d.to_str() for d in self.diagrams]


def _scaled(w, s_src, s_dst):
    return tuple(a + b - c for a, b, c in zip(w, s_src, s_dst))


def _zero_matrix(ps: ParamSet, n: int):
    z = ps.zero()
    return [[z] * n for _ in range(n)]


def _finish(mat, ps: ParamSet):
    if ps.modulus:
        return np.array(mat, dtype=np.int64).reshape(len(mat), len(mat)) % ps.modulus
    return mat


@lru_cache(maxsize=None)
def _closure(n: int, gen_word: Word):
    g = dg.multiply_word(n, gen_word).diagram
    l = cell_label(g)
    tc = 2 * abs(l)
    gens = dg.generators(n)
    diagrams = [g]
    words: list[Word] = [()]
    wweights = [dg.ZERO_WEIGHT]
    pos = {g: 0}
    action: list[dict] = [dict() for _ in gens]
    queue = deque([0])
    while queue:
        i = queue.popleft()
        for k, gk in enumerate(gens):
            r = dg.compose(gk, diagrams[i])
            if through_count(r.diagram) != tc:
                continue
            if cell_label(r.diagram) != l:
                raise VerificationError(f"E_{k} moved label {l} to {cell_label(r.diagram)}")
            j = pos.get(r.diagram)
            if j is None:
                j = len(diagrams)
                pos[r.diagram] = j
                diagrams.append(r.diagram)
                words.append((k,) + words[i])
                wweights.append(dg.add_weights(r.weight, wweights[i]))
                queue.append(j)
            action[k][i] = (j, r.weight)
    gram = []
    for i, bi in enumerate(diagrams):
        row = []
        for j, bj in enumerate(diagrams):
            r = dg.compose(dg.flip(bj), bi)
            if through_count(r.diagram) == tc:
                if cell_label(r.diagram) != l:
                    raise VerificationError("form landed in the wrong cell")
                row.append(r.weight)
            else:
                row.append(None)
        gram.append(tuple(row))
    return l, tuple(diagrams), tuple(words), tuple(wweights), tuple(action), tuple(gram)


def cell_module(n: int, l: int, basis_words: Sequence[Sequence[int]] | None = None,
                generator_word: Sequence[int] | None = None) -> CellModule:
    """Cell module of label ``l``.

    By default the basis is the set of diagrams reached from the generator in
    breadth-first order.  ``basis_words`` instead fixes a monomial basis: each
    word is multiplied out and must land (with its weight) on a distinct
    diagram of the module.
    """
    _check_label(n, l)
    gw = tuple(generator_word) if generator_word is not None else cell_generator_word(n, l)
    lab, diagrams, words, wweights, action, gram = _closure(n, gw)
    if lab != l:
        raise PreconditionError(f"generator word {gw} has label {lab}, not {l}")
    scales = tuple(dg.ZERO_WEIGHT for _ in diagrams)
    module = CellModule(n, l, gw, diagrams, words, wweights, action, gram, scales)
    if basis_words is None:
        return module
    return _reorder(module, [tuple(w) for w in basis_words])


def _reorder(m: CellModule, basis_words: list[Word]) -> CellModule:
    pos = {d: i for i, d in enumerate(m.diagrams)}
    perm, scales = [], []
    for w in basis_words:
        r = dg.multiply_word(m.n, w)
        if r.diagram not in pos:
            raise PreconditionError(f"word {w} does not land in the module")
        perm.append(pos[r.diagram])
        scales.append(r.weight)
    if sorted(perm) != list(range(m.dim)):
        raise PreconditionError("basis words do not give a basis of the module")
    inv = {old: new for new, old in enumerate(perm)}
    action = tuple({inv[i]: (inv[j], w) for i, (j, w) in row.items()} for row in m.action)
    gram = tuple(tuple(m.gram_weights[perm[a]][perm[b]] for b in range(m.dim)) for a in range(m.dim))
    return CellModule(m.n, m.label, m.generator_word, tuple(m.diagrams[i] for i in perm),
                      tuple(m.words[i] for i in perm), tuple(m.word_weights[i] for i in perm),
                      action, gram, tuple(scales), tuple(basis_words))


def cell_dims(n: int) -> dict[int, int]:
    return {l: cell_module(n, l).dim for l in labels(n)}


# ---------------------------------------------------------------------------
# named monomial bases


def family_basis_words(n: int, family: str) -> list[Word]:
    """Monomial bases for the four families studied explicitly.

    ``family`` is one of ``"-(n-2)"``, ``"n-3"``, ``"-(n-3)"``, ``"n-4"``.
    """
    f = n
    if family == "-(n-2)":
        tail: Word = (1,)
        words = [(0,) + tail, tail]
        start = 2
    elif family == "-(n-3)":
        tail = (1, f)
        words = [(0,) + tail, tail]
        start = 2
    elif family == "n-3":
        tail = (0, 2)
        words = [(0, 1) + tail, (1,) + tail, tail]
        start = 3
    elif family == "n-4":
        tail = (0, 2, f)
        words = [(0, 1) + tail, (1,) + tail, tail]
        start = 3
    else:
        raise PreconditionError(f"unknown family {family!r}")
    chain: Word = tail
    for k in range(start, n):
        chain = (k,) + chain
        words.append(chain)
    words.append((f,) + chain)
    return words


FAMILY_LABELS = {"-(n-2)": lambda n: -(n - 2), "n-3": lambda n: n - 3,
                 "-(n-3)": lambda n: -(n - 3), "n-4": lambda n: n - 4}
FAMILY_MIN_RANK = {"-(n-2)": 3, "n-3": 4, "-(n-3)": 4, "n-4": 5}


def family_module(n: int, family: str) -> CellModule:
    if n < FAMILY_MIN_RANK[family]:
        raise PreconditionError(f"family {family} needs n >= {FAMILY_MIN_RANK[family]}")
    words = family_basis_words(n, family)
    gen = words[1] if family.startswith("-") else words[2]
    return cell_module(n, FAMILY_LABELS[family](n), basis_words=words, generator_word=gen)


# ---------------------------------------------------------------------------
# Gram determinants


def gram_det(m: CellModule, ps: ParamSet):
    mat = m.gram_matrix(ps)
    if ps.modulus:
        from .linalg import det_mod

        return det_mod(mat, ps.modulus)
    return det_bareiss(mat)


def gram_rank(m: CellModule, ps: ParamSet) -> int:
    if not ps.modulus:
        raise PreconditionError("gram_rank needs a prime-field specialization")
    return rank_mod(m.gram_matrix(ps), ps.modulus)


simple_dim = gram_rank


# ---------------------------------------------------------------------------
# modules given by matrices, hom spaces


@dataclass
class MatrixModule:
    """A module over b_n^x in GF(p): one matrix per generator E_0..E_n."""

    n: int
    label: int | None
    mats: list[np.ndarray]
    modulus: int
    form: np.ndarray | None = None
    note: str = ""

    @property
    def dim(self) -> int:
        return self.mats[0].shape[0] if self.mats else 0


def numeric_module(m: CellModule, ps: ParamSet) -> MatrixModule:
    if not ps.modulus:
        raise PreconditionError("numeric_module needs a prime-field ParamSet")
    mats = [m.action_matrix(k, ps) for k in range(m.n + 1)]
    return MatrixModule(m.n, m.label, mats, ps.modulus, m.gram_matrix(ps))


def _as_matrix_module(m, ps: ParamSet | None) -> MatrixModule:
    if isinstance(m, MatrixModule):
        return m
    return numeric_module(m, ps)


def hom_space_dim(src, dst, ps: ParamSet | None = None) -> int:
    """dim Hom(src, dst) over GF(p).

    For a cell module source the map is determined by the image ``w`` of its
    generator, and the module relations give a small linear system in ``w``.
    Matrix modules use the general system ``A_k X = X B_k``.
    """
    if isinstance(src, CellModule):
        return _hom_cyclic(src, _as_matrix_module(dst, ps), ps)
    a = _as_matrix_module(src, ps)
    b = _as_matrix_module(dst, ps)
    return _hom_general(a, b)


def _hom_general(src: MatrixModule, dst: MatrixModule) -> int:
    p = src.modulus
    if src.dim == 0 or dst.dim == 0:
        return 0
    blocks = []
    ids = np.eye(src.dim, dtype=np.int64)
    idd = np.eye(dst.dim, dtype=np.int64)
    for A, B in zip(dst.mats, src.mats):
        # vec(A X - X B) = (I (x) A - B^T (x) I) vec(X), column-major vec
        blocks.append((np.kron(ids, A) - np.kron(B.T, idd)) % p)
    system = np.vstack(blocks) % p
    return src.dim * dst.dim - rank_mod(system, p)


def _word_matrix(mod: MatrixModule, word: Sequence[int]) -> np.ndarray:
    p = mod.modulus
    out = np.eye(mod.dim, dtype=np.int64)
    for k in reversed(word):
        out = (mod.mats[k] @ out) % p
    return out


def _hom_cyclic(src: CellModule, dst: MatrixModule, ps: ParamSet) -> int:
    p = ps.modulus
    if dst.dim == 0:
        return 0
    # phi(b_i) = c_i^{-1} X_i w with X_i the word of b_i acting on dst
    X = []
    for i in range(src.dim):
        c = _value(ps, dg.add_weights(src.word_weights[i], _neg(src.scales[i])))
        if c % p == 0:
            raise PreconditionError("a basis word has vanishing weight at this specialization")
        X.append(_word_matrix(dst, src.words[i]) * pow(int(c), p - 2, p) % p)
    rows = []
    for k in range(src.n + 1):
        A_src = src.action_matrix(k, ps)
        for i in range(src.dim):
            lhs = np.zeros((dst.dim, dst.dim), dtype=np.int64)
            for j in range(src.dim):
                if A_src[j, i]:
                    lhs = (lhs + A_src[j, i] * X[j]) % p
            rows.append((lhs - dst.mats[k] @ X[i]) % p)
    system = np.vstack(rows) % p
    return dst.dim - rank_mod(system, p)


def _neg(w):
    return tuple(-x for x in w)


def hom_basis(src: MatrixModule, dst: MatrixModule) -> list[np.ndarray]:
    p = src.modulus
    blocks = []
    ids = np.eye(src.dim, dtype=np.int64)
    idd = np.eye(dst.dim, dtype=np.int64)
    for A, B in zip(dst.mats, src.mats):
        blocks.append((np.kron(ids, A) - np.kron(B.T, idd)) % p)
    ns = nullspace_mod(np.vstack(blocks) % p, p)
    return [v.reshape(src.dim, dst.dim).T % p for v in ns]


def isomorphic(a: MatrixModule, b: MatrixModule, seed: int = 0) -> bool:
    """True when a random homomorphism a -> b is invertible."""
    if a.dim != b.dim:
        return False
    if a.dim == 0:
        return True
    p = a.modulus
    basis = hom_basis(a, b)
    if not basis:
        return False
    rng = np.random.default_rng(seed)
    for _ in range(4):
        coeffs = rng.integers(1, p, size=len(basis))
        X = sum(int(c) * B for c, B in zip(coeffs, basis)) % p
        if rank_mod(X, p) == a.dim:
            return True
    return False


# ---------------------------------------------------------------------------
# localisation and globalisation


def corner_data(n_small: int, side: str) -> tuple[Word, list[Word], str]:
    """Idempotent word, generator image words and divided parameter for a corner.

    Images are words at rank ``n_small + 1`` to be divided by delta_L (side ``e``)
    or delta_R (side ``f``).
    """
    N = n_small + 1
    if side == "e":
        return (0,), [(0, 1, 0)] + [(0, k + 1) for k in range(1, n_small + 1)], "delta_L"
    if side == "f":
        return (N,), [(k, N) for k in range(n_small)] + [(N, n_small, N)], "delta_R"
    raise PreconditionError("side must be 'e' or 'f'")


def localise(m, which: str, ps: ParamSet) -> MatrixModule:
    """Apply F (``which='F'``, e-corner) or F' (``'F\\''``, f-corner) to a module.

    The result is a module over rank ``n-1`` whose parameters are
    ``ps.swap_left()`` or ``ps.swap_right()``.  Its label is the one predicted
    for standard modules, or ``None`` when the functor kills the module.
    """
    side = {"F": "e", "F'": "f"}[which]
    mod = _as_matrix_module(m, ps)
    p = mod.modulus
    n = mod.n
    small = n - 1
    if small < 1:
        raise PreconditionError("cannot localise below rank 1")
    idem_word, images, div = corner_data(small, side)
    inv = pow(int(getattr(ps, div)), p - 2, p)
    eps = _word_matrix(mod, idem_word) * inv % p
    R, piv = row_echelon_mod(eps.T % p, p)
    V = R[: len(piv)].T % p  # columns span the image of eps
    r = V.shape[1]
    mats = []
    if r:
        rows_sel = _independent_rows(V, p)
        Vsub_inv = _inverse_mod(V[rows_sel], p)
    for word in images:
        A = _word_matrix(mod, word) * inv % p
        if r == 0:
            mats.append(np.zeros((0, 0), dtype=np.int64))
            continue
        AV = A @ V % p
        mats.append(Vsub_inv @ AV[rows_sel] % p)
    form = None
    if mod.form is not None and r:
        form = V.T @ mod.form @ V % p
    label = None
    if mod.label is not None:
        label = _localised_label(n, mod.label, which)
    return MatrixModule(small, label if r else None, mats, p, form, note=f"{which} of rank {n}")


def _localised_label(n: int, l: int, which: str) -> int | None:
    if which == "F":
        return None if l in (-n, -n + 1) else -l
    return None if l in (-n, n - 1) else l


def _independent_rows(V: np.ndarray, p: int) -> list[int]:
    _, piv = row_echelon_mod(V.T % p, p)
    return piv


def _inverse_mod(M: np.ndarray, p: int) -> np.ndarray:
    k = M.shape[0]
    aug = np.hstack([M % p, np.eye(k, dtype=np.int64)])
    R, piv = row_echelon_mod(aug, p)
    if piv[:k] != list(range(k)):
        raise VerificationError("singular matrix in corner restriction")
    return R[:, k:] % p


def globalise(m: CellModule, which: str) -> CellModule:
    """Apply G (``'G'``, e-corner, l -> -l) or G' (``"G'"``, f-corner, l -> l).

    The standard module at rank ``n+1`` is generated by the corner image of the
    generator of ``m``.  Parameters on the large side are the ones whose swap
    (``swap_left`` for G, ``swap_right`` for G') gives the parameters of ``m``.
    """
    n = m.n
    if which == "G":
        word = e_corner_word(n, m.generator_word)
        expected = -m.label
    elif which == "G'":
        word = f_corner_word(n, m.generator_word)
        expected = m.label
    else:
        raise PreconditionError("which must be 'G' or \"G'\"")
    lab = cell_label(dg.multiply_word(n + 1, word).diagram)
    if lab != expected:
        raise VerificationError(f"{which} sent label {m.label} to {lab}, expected {expected}")
    return cell_module(n + 1, lab, generator_word=word)


def big_params(ps_small: ParamSet, which: str) -> ParamSet:
    """Parameters at rank n+1 whose corner dictionary gives ``ps_small``."""
    # both swaps are involutions
    return ps_small.swap_left() if which in ("G", "F") else ps_small.swap_right()


# ---------------------------------------------------------------------------
# functor checks


@dataclass
class FunctorCheck:
    n: int
    functor: str
    label: int
    dim_in: int
    expected_label: int | None
    dim_out: int
    expected_dim: int
    isomorphic: bool
    rank_in: int | None = None
    rank_out: int | None = None

    @property
    def passed(self) -> bool:
        ok = self.dim_out == self.expected_dim and self.isomorphic
        if self.rank_in is not None:
            ok = ok and self.rank_in == self.rank_out
        return ok

    def to_json(self) -> dict:
        return {**self.__dict__, "passed": self.passed}


def _expected_dim(n_small: int, label: int | None, ps_small: ParamSet) -> tuple[int, MatrixModule | None]:
    if label is None:
        return 0, None
    m = numeric_module(cell_module(n_small, label), ps_small)
    return m.dim, m


def verify_functors(n: int, ps: ParamSet, seed: int = 0) -> list[FunctorCheck]:
    """F, F' on every rank-n standard, and F o G, F' o G' on every rank n-1 standard.

    ``ps`` is a prime-field point for rank ``n`` with all parameters units.
    """
    out = []
    for which, swap in (("F", ps.swap_left()), ("F'", ps.swap_right())):
        for l in labels(n):
            M = numeric_module(cell_module(n, l), ps)
            img = localise(M, which, ps)
            lab = _localised_label(n, l, which)
            edim, ref = _expected_dim(n - 1, lab, swap)
            iso = img.dim == 0 if ref is None else isomorphic(img, ref, seed)
            out.append(FunctorCheck(n, which, l, M.dim, lab, img.dim, edim, iso))
    small = n - 1
    for glob, loc in (("G", "F"), ("G'", "F'")):
        ps_small = ps.swap_left() if glob == "G" else ps.swap_right()
        for l in labels(small):
            m = cell_module(small, l)
            M = numeric_module(m, ps_small)
            big = globalise(m, glob)
            back = localise(numeric_module(big, ps), loc, ps)
            out.append(FunctorCheck(n, f"{loc}o{glob}", l, M.dim, l, back.dim, M.dim,
                                    isomorphic(back, M, seed),
                                    rank_mod(M.form, ps.modulus), rank_mod(back.form, ps.modulus)
                                    if back.form is not None else 0))
    return out

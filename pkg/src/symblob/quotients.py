"""Temperley-Lieb quotients at special parameter values.

Odd rank: erasing decorations is an algebra map onto TL_n when
``delta = kappa_L = kappa_R = x`` and ``delta_L = delta_R = kappa_LR = 1``.
Even rank: pass through the f-corner into rank n+1, where the swapped
parameters land on the odd locus, then erase decorations.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

import numpy as np

from . import diagrams as dg
from .algebra import AlgElement, TLAlgebra, element, mul
from .cells import f_corner_word
from .errors import PreconditionError
from .linalg import rank_mod
from .presentation import enumerate_reduced, relations
from .ring import DEFAULT_PRIME, ParamSet, Scalar, numeric_params, params_from, scalar_field

X_FIELD = scalar_field(("x",))


def catalan(n: int) -> int:
    from math import comb

    return comb(2 * n, n) // (n + 1)


def odd_locus(x=None) -> ParamSet:
    x = X_FIELD.gen("x") if x is None else x
    one = x * 0 + 1
    return ParamSet(x, one, one, x, x, one, name="odd_quotient")


def even_locus(x=None) -> ParamSet:
    x = X_FIELD.gen("x") if x is None else x
    one = x * 0 + 1
    return ParamSet(x, one, x, x, one, one, name="even_quotient")


def strip_blobs(x: AlgElement) -> AlgElement:
    """Linear extension of decoration erasure."""
    return AlgElement(x.n, [(d.undecorated(), c) for d, c in x.terms.items()])


@dataclass
class QuotientReport:
    n: int
    constraints: dict
    homomorphism: bool
    pairs_checked: int
    image_dim: int
    kernel_dim: int
    algebra_dim: int
    target_dim: int
    counterexample: list | None = None
    extra: dict = field(default_factory=dict)

    @property
    def surjective(self) -> bool:
        return self.image_dim == self.target_dim

    @property
    def passed(self) -> bool:
        ok = self.homomorphism and self.surjective and self.image_dim + self.kernel_dim == self.algebra_dim
        return ok and all(v for k, v in self.extra.items() if k.startswith("check_"))

    def to_json(self) -> dict:
        return {"n": self.n, "constraints": self.constraints, "homomorphism": self.homomorphism,
                "pairs_checked": self.pairs_checked, "image_dim": self.image_dim,
                "kernel_dim": self.kernel_dim, "algebra_dim": self.algebra_dim,
                "target_dim": self.target_dim, "surjective": self.surjective,
                "counterexample": self.counterexample, "passed": self.passed, **self.extra}


def _pairs(basis, sample: int | None, seed: int):
    N = len(basis)
    if sample is None:
        for i in range(N):
            for j in range(N):
                yield basis[i], basis[j]
        return
    rng = random.Random(seed)
    for _ in range(sample):
        yield basis[rng.randrange(N)], basis[rng.randrange(N)]


def strip_counterexample(n: int, ps: ParamSet, tl_delta, sample: int | None = None, seed: int = 0):
    """First pair (d1, d2) with strip(d1 d2) != strip(d1) strip(d2), or None; also the count checked."""
    tl = TLAlgebra(n, tl_delta)
    basis = dg.enumerate_basis(n)
    count = 0
    for d1, d2 in _pairs(basis, sample, seed):
        count += 1
        lhs = strip_blobs(mul(element(d1, ps.one()), element(d2, ps.one()), ps))
        rhs = tl.mul(strip_blobs(element(d1, ps.one())), strip_blobs(element(d2, ps.one())))
        if lhs != rhs:
            return [d1.to_str(), d2.to_str()], count
    return None, count


def _ideal_rank(n: int, ps: ParamSet) -> int:
    """dim of the two-sided ideal generated by e-1 and f-1, at a numeric point."""
    basis = dg.enumerate_basis(n)
    idx = dg.basis_index(n)
    p = ps.modulus
    rows = []
    one = dg.identity(n)
    for g in (dg.gen_e(n), dg.gen_f(n)):
        gen = element(g, 1) - element(one, 1)
        for a in basis:
            left = mul(element(a, 1), gen, ps)
            for b in basis:
                v = np.zeros(len(basis), dtype=np.int64)
                for d, c in mul(left, element(b, 1), ps).terms.items():
                    v[idx[d]] = c % p
                rows.append(v)
    return rank_mod(np.array(rows), p)


def verify_odd_quotient(n: int, sample: int | None = None, seed: int = 0, ideal_check: bool | None = None,
                        ps: ParamSet | None = None, p: int = DEFAULT_PRIME) -> QuotientReport:
    if n < 3 or n % 2 == 0:
        raise PreconditionError("the odd quotient needs odd n >= 3")
    ps = ps or odd_locus()
    ce, count = strip_counterexample(n, ps, ps.delta, sample, seed)
    algebra_dim = len(dg.enumerate_basis(n))
    image = {d.undecorated() for d in dg.enumerate_basis(n)}
    image_dim = len(image)
    extra = {}
    if ideal_check is None:
        ideal_check = n <= 3
    if ideal_check:
        x0 = random.Random(seed).randrange(3, p - 1)
        num = numeric_params([x0, 1, 1, x0, x0, 1], p)
        extra["ideal_dim"] = _ideal_rank(n, num)
        extra["check_kernel_is_ideal"] = extra["ideal_dim"] == algebra_dim - image_dim
    return QuotientReport(n, ps.to_dict(), ce is None, count, image_dim, algebra_dim - image_dim,
                          algebra_dim, catalan(n), ce, extra)


def xi_generator_images(n: int, ps_small: ParamSet) -> list[AlgElement]:
    """xi(E_k) in TL_{n+1}: corner image at rank n+1 followed by erasing decorations."""
    big = ps_small.swap_right()
    N = n + 1
    inv = big.one() / big.delta_R if not big.modulus else pow(big.delta_R, big.modulus - 2, big.modulus)
    out = []
    for k in range(n + 1):
        word = f_corner_word(n, (k,), idempotent=False)
        r = dg.multiply_word(N, word)
        out.append(strip_blobs(element(r.diagram, big.weight(r.weight) * inv)))
    return out


def verify_even_quotient(n: int, ps: ParamSet | None = None) -> QuotientReport:
    if n < 2 or n % 2:
        raise PreconditionError("the even quotient needs even n >= 2")
    ps = ps or even_locus()
    N = n + 1
    tl = TLAlgebra(N, ps.delta)
    imgs = xi_generator_images(n, ps)
    one = ps.one()
    checks = {}
    for i in range(1, n):
        checks[f"check_xi_e{i}"] = imgs[i] == element(dg.gen_ei(N, i), one)
    checks["check_xi_f"] = imgs[n] == element(dg.gen_ei(N, n), one)
    checks["check_xi_e"] = imgs[0] == element(dg.identity(N), one)
    failed = []
    for rel in relations(n):
        lhs = _tl_word(tl, imgs, rel.lhs, N, one)
        rhs = _tl_word(tl, imgs, rel.rhs, N, one).scale(ps.weight(rel.weight))
        if lhs != rhs:
            failed.append(rel.name)
    # image of the whole algebra: images of reduced monomials
    span = _span_dim(N, [_tl_word(tl, imgs, m.word, N, one) for m in enumerate_reduced(n)])
    algebra_dim = len(dg.enumerate_basis(n))
    checks["check_relations"] = not failed
    return QuotientReport(n, ps.to_dict(), not failed, len(relations(n)), span, algebra_dim - span,
                          algebra_dim, catalan(N), failed or None, checks)


def _tl_word(tl: TLAlgebra, imgs, word, N, one) -> AlgElement:
    out = element(dg.identity(N), one)
    for k in word:
        out = tl.mul(out, imgs[k])
    return out


def _span_dim(N: int, elements: list[AlgElement], p: int = DEFAULT_PRIME) -> int:
    basis = dg.tl_basis(N)
    idx = {d: i for i, d in enumerate(basis)}
    rng = random.Random(0)
    x0 = rng.randrange(3, p - 1)
    rows = []
    for el in elements:
        v = np.zeros(len(basis), dtype=np.int64)
        for d, c in el.terms.items():
            v[idx[d]] = _eval(c, x0, p)
        rows.append(v)
    return rank_mod(np.array(rows), p) if rows else 0


def _eval(c, x0: int, p: int) -> int:
    if isinstance(c, Scalar):
        return c.specialize({"x": x0}, p)
    return int(c) % p


def genericity_counterexample(n: int = 3, seed: int = 0, sample: int | None = None):
    """With six free parameters, erasing decorations is not multiplicative at any single TL loop value."""
    ps = params_from("generic6")
    ce, count = strip_counterexample(n, ps, ps.delta, sample, seed)
    return ce, count


def kappa_check() -> dict:
    """delta_L delta_R - kappa_LR and the rank-1 label-0 Gram determinant on both loci."""
    from .cells import cell_module, gram_det

    out = {}
    for name, ps in (("odd", odd_locus()), ("even", even_locus())):
        val = ps.delta_L * ps.delta_R - ps.kappa_LR
        det = gram_det(cell_module(1, 0), ps)
        out[name] = {"dLdR_minus_kLR": val.to_str(), "vanishes": val == 0,
                     "gram_det_rank1_label0": det.to_str(), "gram_vanishes": det == 0}
    return out

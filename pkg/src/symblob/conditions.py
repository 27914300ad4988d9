"""Quantum-number vanishing conditions and prime-field points realising them.

A condition is ``[x] = 0`` for a linear form ``x`` in w1, w2, theta with
rational constant.  Under the GMP encoding ``q^x`` is a monomial in s, a, b, c,
and ``[x] = 0`` exactly when ``q^{2x} = 1`` (with q of large order), so a point
on the condition is found by solving for one indeterminate.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

import sympy

from .errors import PoleError, PreconditionError
from .ring import DEFAULT_PRIME, ParamSet, Scalar, params_from, qnum

_VARS = {"w1": "a", "w2": "b", "theta": "c"}


@dataclass(frozen=True)
class QFactor:
    w1: Fraction
    w2: Fraction
    theta: Fraction
    const: Fraction

    @classmethod
    def parse(cls, text: str, n: int | None = None) -> "QFactor":
        """Parse e.g. ``"w1-w2+n-2"`` or ``"(w1+w2+theta+1)/2"``; ``n`` substitutes the rank."""
        expr = sympy.sympify(text.strip().strip("[]"))
        if sympy.Symbol("n") in expr.free_symbols:
            if n is None:
                raise PreconditionError("rank needed to read 'n'")
            expr = expr.subs(sympy.Symbol("n"), n)
        expr = sympy.expand(expr)
        syms = {name: sympy.Symbol(name) for name in _VARS}
        if expr.free_symbols - set(syms.values()) or sympy.Poly(expr, *syms.values()).total_degree() > 1:
            raise PreconditionError(f"{text!r} is not a linear form in w1, w2, theta")
        coeff = {k: _frac(expr.coeff(v)) for k, v in syms.items()}
        const = _frac(expr.subs({v: 0 for v in syms.values()}))
        return cls(coeff["w1"], coeff["w2"], coeff["theta"], const)

    def expression(self) -> str:
        w1, w2, th = (sympy.Symbol(x) for x in _VARS)
        r = lambda c: sympy.Rational(c.numerator, c.denominator)  # noqa: E731
        return str(r(self.w1) * w1 + r(self.w2) * w2 + r(self.theta) * th + r(self.const)).replace(" ", "")

    def __str__(self):
        return f"[{self.expression()}]"

    def scalar(self) -> Scalar:
        return qnum(self.expression())

    def _exponents(self) -> dict[str, int]:
        ex = {"s": 2 * self.const, "a": 2 * self.w1, "b": 2 * self.w2, "c": 2 * self.theta}
        if any(v.denominator != 1 for v in ex.values()):
            raise PreconditionError(f"{self} is not a monomial condition in s, a, b, c")
        return {k: int(v) for k, v in ex.items()}

    def qx_mod(self, assignment: dict[str, int], p: int) -> int:
        """q^x in GF(p); q = s^2."""
        out = 1
        for var, e in self._exponents().items():
            out = out * pow(assignment[var], e, p) % p
        return out

    def vanishes(self, assignment: dict[str, int], p: int) -> bool:
        return pow(self.qx_mod(assignment, p), 2, p) == 1


def _frac(x) -> Fraction:
    x = sympy.Rational(x)
    return Fraction(int(x.p), int(x.q))


def _sqrt_mod(x: int, p: int) -> int | None:
    x %= p
    if x == 0:
        return 0
    if p % 4 != 3:
        for r in range(1, p):
            if r * r % p == x:
                return r
        return None
    r = pow(x, (p + 1) // 4, p)
    return r if r * r % p == x else None


def _root_mod(x: int, e: int, p: int) -> int | None:
    """Some y with y^e = x (e in {1, 2, -1, -2})."""
    if e < 0:
        x = pow(x, p - 2, p)
        e = -e
    if e == 1:
        return x % p
    if e == 2:
        return _sqrt_mod(x, p)
    raise PreconditionError(f"cannot solve for an exponent {e}")


def solve_on(factor: QFactor, base: dict[str, int], p: int, sign: int = 1) -> dict[str, int] | None:
    """Adjust one indeterminate of ``base`` so that q^x = sign."""
    ex = factor._exponents()
    for var in ("a", "b", "c"):
        e = ex[var]
        if e not in (1, -1, 2, -2):
            continue
        rest = 1
        for other, k in ex.items():
            if other != var:
                rest = rest * pow(base[other], k, p) % p
        target = sign * pow(rest, p - 2, p) % p
        y = _root_mod(target, e, p)
        if y:
            out = dict(base)
            out[var] = y
            return out
    return None


def generic_point(rng: random.Random, p: int = DEFAULT_PRIME) -> dict[str, int]:
    return {v: rng.randrange(2, p - 1) for v in ("s", "a", "b", "c")}


def point_on(factor: QFactor | str, rng: random.Random, p: int = DEFAULT_PRIME, n: int = 1,
             avoid: tuple = (), tries: int = 200) -> dict[str, int]:
    """A GF(p) point where ``factor`` vanishes and none of ``avoid`` do.

    The GMP parameters at rank ``n`` must all be units there.
    """
    if isinstance(factor, str):
        factor = QFactor.parse(factor, n)
    avoid = tuple(QFactor.parse(a, n) if isinstance(a, str) else a for a in avoid)
    for _ in range(tries):
        base = generic_point(rng, p)
        pt = solve_on(factor, base, p, sign=rng.choice((1, -1)))
        if pt is None or not factor.vanishes(pt, p):
            continue
        if any(a.vanishes(pt, p) for a in avoid if a != factor):
            continue
        if _gmp_units(pt, p, n) is None:
            continue
        return pt
    raise PoleError(f"no point found on {factor}")


def generic_unit_point(rng: random.Random, p: int = DEFAULT_PRIME, n: int = 1,
                       avoid: tuple = (), tries: int = 200) -> dict[str, int]:
    avoid = tuple(QFactor.parse(a, n) if isinstance(a, str) else a for a in avoid)
    for _ in range(tries):
        pt = generic_point(rng, p)
        if any(a.vanishes(pt, p) for a in avoid):
            continue
        if _gmp_units(pt, p, n) is not None:
            return pt
    raise PoleError("no generic point found")


def _gmp_units(pt: dict[str, int], p: int, n: int) -> ParamSet | None:
    try:
        ps = params_from("gmp", n).specialize(pt, p)
    except PoleError:
        return None
    q = pow(pt["s"], 2, p)
    if any(pow(q, 2 * k, p) == 1 for k in range(1, 4 * n + 9)):
        return None
    return ps if ps.all_units() else None


def gmp_at(pt: dict[str, int], n: int, p: int = DEFAULT_PRIME) -> ParamSet:
    ps = _gmp_units(pt, p, n)
    if ps is None:
        raise PoleError("GMP parameters are not all units at this point")
    return ps

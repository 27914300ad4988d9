"""Exact scalars, quantum integers and the six-parameter families.

Scalars live in a rational-function field Q(x_1, ..., x_k) over a fixed,
ordered tuple of indeterminates.  Arithmetic is delegated to sympy's sparse
fraction fields; this module adds a canonical form, specialization into Q
or GF(p), and the quantum-number dictionary used by the parametrizations.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass, fields, replace
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence, Union

import sympy
from sympy import QQ
from sympy.polys.fields import FracField
from sympy.polys.orderings import grlex

from .errors import ConfigurationError, PoleError, PreconditionError

DEFAULT_PRIME = 10007

Number = Union[int, Fraction]


class ScalarField:
    """The field Q(names) with graded-lex monomial order."""

    def __init__(self, names: Sequence[str]):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ConfigurationError(f"repeated indeterminate in {names}")
        self.names = names
        self._K = FracField(names, QQ, grlex)
        self._gens = dict(zip(names, self._K.gens))
        self.zero = Scalar(self, self._K.zero)
        self.one = Scalar(self, self._K.one)

    def __repr__(self):
        return f"ScalarField({', '.join(self.names)})"

    def __reduce__(self):
        return (scalar_field, (self.names,))

    def gen(self, name: str) -> "Scalar":
        try:
            return Scalar(self, self._gens[name])
        except KeyError:
            raise ConfigurationError(f"{name!r} is not an indeterminate of {self!r}") from None

    def gens(self) -> tuple["Scalar", ...]:
        return tuple(self.gen(x) for x in self.names)

    def __call__(self, value) -> "Scalar":
        if isinstance(value, Scalar):
            if value.field is not self:
                raise ConfigurationError(f"scalar from {value.field!r} used in {self!r}")
            return value
        if isinstance(value, bool):
            value = int(value)
        if isinstance(value, int):
            return Scalar(self, self._K(value))
        if isinstance(value, Fraction):
            return Scalar(self, self._K(QQ(value.numerator, value.denominator)))
        if isinstance(value, str):
            return self.parse(value)
        raise TypeError(f"cannot coerce {type(value).__name__} into {self!r}")

    def parse(self, text: str) -> "Scalar":
        """Read a scalar back from its canonical string (or any sympy-readable expression)."""
        local = {x: sympy.Symbol(x) for x in self.names}
        expr = sympy.sympify(text.replace("^", "**"), locals=local)
        extra = expr.free_symbols - set(local.values())
        if extra:
            raise ConfigurationError(f"unknown symbols {sorted(map(str, extra))}")
        return Scalar(self, self._K.from_expr(expr))


@lru_cache(maxsize=None)
def scalar_field(names: tuple[str, ...]) -> ScalarField:
    """Cached constructor so that equal name tuples give the identical field."""
    return ScalarField(tuple(names))


def _qq_parts(c) -> tuple[int, int]:
    return int(c.numerator), int(c.denominator)


class Scalar:
    """An immutable element of a :class:`ScalarField`."""

    __slots__ = ("field", "_f", "_canon")

    def __init__(self, field: ScalarField, f):
        self.field = field
        self._f = f
        self._canon = None

    def _coerce(self, other) -> "Scalar | None":
        if isinstance(other, Scalar):
            if other.field is not self.field:
                raise ConfigurationError(f"mixing {self.field!r} and {other.field!r}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else Scalar(self.field, self._f + o._f)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else Scalar(self.field, self._f - o._f)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else Scalar(self.field, o._f - self._f)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else Scalar(self.field, self._f * o._f)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            raise ZeroDivisionError("division by the zero scalar")
        return Scalar(self.field, self._f / o._f)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __neg__(self):
        return Scalar(self.field, -self._f)

    def __pos__(self):
        return self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        return Scalar(self.field, self._f**k)

    def inverse(self) -> "Scalar":
        if self.is_zero():
            raise ZeroDivisionError("the zero scalar has no inverse")
        return Scalar(self.field, 1 / self._f)

    def is_zero(self) -> bool:
        return not self._f.numer

    def is_one(self) -> bool:
        return self._f.numer == self._f.denom

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        try:
            o = self._coerce(other)
        except ConfigurationError:
            return False
        if o is None:
            return NotImplemented
        return self._f.numer * o._f.denom == o._f.numer * self._f.denom

    def __hash__(self):
        return hash(self.canonical())

    @property
    def numer(self):
        return self.canonical()[0]

    @property
    def denom(self):
        return self.canonical()[1]

    def canonical(self):
        """(numerator, denominator) with gcd 1 and monic denominator."""
        if self._canon is None:
            num, den = self._f.numer, self._f.denom
            lc = den.LC
            if lc != 1:
                num, den = num.quo_ground(lc), den.quo_ground(lc)
            self._canon = (num, den)
        return self._canon

    def indeterminates(self) -> set[str]:
        num, den = self.canonical()
        used = set()
        for poly in (num, den):
            for monom in poly.monoms():
                used.update(x for x, e in zip(self.field.names, monom) if e)
        return used

    def to_str(self) -> str:
        """Canonical string: sorted monomials, explicit exponents."""
        num, den = self.canonical()
        top = _poly_str(num, self.field.names)
        if den == 1:
            return top
        return f"({top})/({_poly_str(den, self.field.names)})"

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"Scalar({self.to_str()!r})"

    def to_sympy(self):
        return self.field._K.to_domain().to_sympy(self._f)

    def specialize(self, assignment: Mapping[str, Number], p: int | None = None):
        """Evaluate exactly in Q (``p is None``) or in GF(p).

        Raises :class:`PoleError` when the denominator vanishes.
        """
        num, den = self.canonical()
        if p is None:
            vals = [Fraction(_lookup(assignment, x)) for x in self.field.names]
            top, bot = _eval_q(num, vals), _eval_q(den, vals)
            if bot == 0:
                raise PoleError(f"pole of {self.to_str()} at {dict(assignment)}")
            return top / bot
        vals = [_to_mod(_lookup(assignment, x), p) for x in self.field.names]
        top, bot = _eval_mod(num, vals, p), _eval_mod(den, vals, p)
        if bot == 0:
            raise PoleError(f"pole of {self.to_str()} mod {p} at {dict(assignment)}")
        return top * pow(bot, p - 2, p) % p


def _lookup(assignment, name):
    try:
        return assignment[name]
    except KeyError:
        raise PreconditionError(f"assignment does not cover {name!r}") from None


def _to_mod(x, p: int) -> int:
    if isinstance(x, Fraction):
        if x.denominator % p == 0:
            raise PoleError(f"{x} has no image in GF({p})")
        return x.numerator * pow(x.denominator, p - 2, p) % p
    return int(x) % p


def _eval_q(poly, vals) -> Fraction:
    total = Fraction(0)
    for monom, c in poly.terms():
        a, b = _qq_parts(c)
        term = Fraction(a, b)
        for v, e in zip(vals, monom):
            if e:
                term *= v**e
        total += term
    return total


def _eval_mod(poly, vals, p: int) -> int:
    total = 0
    for monom, c in poly.terms():
        a, b = _qq_parts(c)
        if b % p == 0:
            raise PoleError(f"coefficient {c} has no image in GF({p})")
        term = a * pow(b, p - 2, p) % p
        for v, e in zip(vals, monom):
            if e:
                term = term * pow(v, e, p) % p
        total = (total + term) % p
    return total


def _poly_str(poly, names) -> str:
    terms = sorted(poly.terms(), key=lambda t: (sum(t[0]), t[0]), reverse=True)
    if not terms:
        return "0"
    out = []
    for monom, c in terms:
        a, b = _qq_parts(c)
        factors = [f"{x}^{e}" for x, e in zip(names, monom) if e]
        mag = Fraction(abs(a), b)
        if not factors:
            body = str(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = f"{mag}*" + "*".join(factors)
        sign = "-" if a < 0 else "+"
        out.append((sign, body))
    first_sign, first = out[0]
    text = ("-" if first_sign == "-" else "") + first
    for sign, body in out[1:]:
        text += f" {sign} {body}"
    return text


# ---------------------------------------------------------------------------
# quantum integers


@dataclass(frozen=True)
class QContext:
    """How q-powers are written in a field.

    ``q_name`` stands for q itself (``half=False``) or for q^{1/2} (``half=True``).
    ``atoms`` maps a symbolic exponent (say ``w1``) to the indeterminate standing
    for q^{w1} (or q^{w1/2} in the half convention).
    """

    field: ScalarField
    q_name: str
    half: bool
    atoms: tuple[tuple[str, str], ...]

    @property
    def q(self) -> Scalar:
        x = self.field.gen(self.q_name)
        return x * x if self.half else x

    def qpower(self, exponent) -> Scalar:
        """q^x for a linear form x in the atoms with rational coefficients."""
        const, coeffs = _linear_form(exponent, dict(self.atoms))
        scale = 2 if self.half else 1
        out = self.field.one
        for name, c in [(self.q_name, const)] + [(dict(self.atoms)[a], v) for a, v in coeffs.items()]:
            k = c * scale
            if k.denominator != 1:
                raise ConfigurationError(f"q^({exponent}) is not a Laurent monomial in {self.field.names}")
            if k:
                out = out * self.field.gen(name) ** int(k)
        return out


def _linear_form(exponent, atoms: Mapping[str, str]) -> tuple[Fraction, dict[str, Fraction]]:
    if isinstance(exponent, (int, Fraction)):
        return Fraction(exponent), {}
    expr = sympy.sympify(exponent) if isinstance(exponent, str) else exponent
    expr = sympy.expand(expr)
    syms = {str(s): s for s in expr.free_symbols}
    unknown = set(syms) - set(atoms)
    if unknown:
        raise ConfigurationError(f"exponent symbols {sorted(unknown)} are absent from this field")
    poly = sympy.Poly(expr, *[syms[a] for a in sorted(syms)]) if syms else None
    if poly is not None and poly.total_degree() > 1:
        raise ConfigurationError(f"exponent {exponent} is not linear")
    coeffs = {}
    for a in sorted(syms):
        c = sympy.Rational(expr.coeff(syms[a]))
        if c:
            coeffs[a] = Fraction(int(c.p), int(c.q))
    const = sympy.Rational(expr.subs({s: 0 for s in syms.values()}))
    return Fraction(int(const.p), int(const.q)), coeffs


def qnum(m, ctx: "QContext | None" = None) -> Scalar:
    """The quantum integer [m] = (q^m - q^{-m}) / (q - q^{-1}).

    ``m`` is an integer, a rational, or a linear expression such as
    ``"(w1+w2+theta+1)/2"`` in the atoms of ``ctx`` (GMP by default).
    """
    ctx = ctx or GMP_CONTEXT
    Q = ctx.qpower(m)
    q = ctx.q
    return (Q - Q.inverse()) / (q - q.inverse())


# ---------------------------------------------------------------------------
# parameter sets

PARAM_NAMES = ("delta", "delta_L", "delta_R", "kappa_L", "kappa_R", "kappa_LR")


@dataclass(frozen=True)
class ParamSet:
    """The six parameters of b_n^x.

    The auxiliary parameters k_L and k_R are not stored: they are identified
    with kappa_LR.  Entries are Scalars, or plain integers mod ``modulus`` for a
    prime-field specialization, or Fractions for a rational specialization.
    """

    delta: object
    delta_L: object
    delta_R: object
    kappa_L: object
    kappa_R: object
    kappa_LR: object
    modulus: int | None = None
    name: str = "custom"

    @property
    def k_L(self):
        return self.kappa_LR

    @property
    def k_R(self):
        return self.kappa_LR

    def values(self) -> tuple:
        return tuple(getattr(self, x) for x in PARAM_NAMES)

    def relation_consistent(self) -> bool:
        return self.k_L == self.kappa_LR and self.k_R == self.kappa_LR

    def all_units(self) -> bool:
        if self.modulus is not None:
            return all(v % self.modulus for v in self.values())
        return all(v != 0 for v in self.values())

    def one(self):
        if self.modulus is not None:
            return 1
        v = self.delta
        return v.field.one if isinstance(v, Scalar) else Fraction(1)

    def zero(self):
        if self.modulus is not None:
            return 0
        v = self.delta
        return v.field.zero if isinstance(v, Scalar) else Fraction(0)

    def weight(self, w: Sequence[int]):
        """Evaluate the parameter monomial with exponent vector ``w``."""
        return _weight_value(self, tuple(w))

    def swap_left(self) -> "ParamSet":
        """Exchange delta_L and kappa_L (the e-corner dictionary)."""
        return replace(self, delta_L=self.kappa_L, kappa_L=self.delta_L, name=self.name + "/swapL")

    def swap_right(self) -> "ParamSet":
        """Exchange delta_R and kappa_R (the f-corner dictionary)."""
        return replace(self, delta_R=self.kappa_R, kappa_R=self.delta_R, name=self.name + "/swapR")

    def specialize(self, assignment: Mapping[str, Number], p: int | None = DEFAULT_PRIME) -> "ParamSet":
        vals = [v.specialize(assignment, p) if isinstance(v, Scalar) else v for v in self.values()]
        if p is not None:
            vals = [_to_mod(v, p) for v in vals]
        return ParamSet(*vals, modulus=p, name=self.name + "@spec")

    def to_dict(self) -> dict:
        return {x: _value_str(getattr(self, x)) for x in PARAM_NAMES}


def _value_str(v) -> str:
    return v.to_str() if isinstance(v, Scalar) else str(v)


_POWERS_CACHE: dict = {}


def _weight_value(ps: ParamSet, w: tuple[int, ...]):
    key = (id(ps), w)
    hit = _POWERS_CACHE.get(key)
    if hit is not None and hit[0] is ps:
        return hit[1]
    out = ps.one()
    for v, e in zip(ps.values(), w):
        if e:
            out = out * pow(v, e, ps.modulus) if ps.modulus else out * v**e
    if ps.modulus:
        out %= ps.modulus
    if len(_POWERS_CACHE) > 200_000:
        _POWERS_CACHE.clear()
    _POWERS_CACHE[key] = (ps, out)
    return out


def numeric_params(values: Sequence[Number], p: int | None = DEFAULT_PRIME, name="numeric") -> ParamSet:
    """A ParamSet with concrete entries in GF(p) (or Q when ``p`` is None)."""
    if len(values) != 6:
        raise PreconditionError("expected six parameter values")
    if p is None:
        return ParamSet(*[Fraction(v) for v in values], modulus=None, name=name)
    return ParamSet(*[_to_mod(v, p) for v in values], modulus=p, name=name)


# ---------------------------------------------------------------------------
# parametrizations

GENERIC6_FIELD = scalar_field(("d", "dL", "dR", "kL", "kR", "kLR"))
GMP_FIELD = scalar_field(("s", "a", "b", "c"))
BLOB_FIELD = scalar_field(("q", "ql", "qr", "kLR"))
DN_FIELD = scalar_field(("q", "x1", "x2", "b"))

GMP_CONTEXT = QContext(GMP_FIELD, "s", True, (("w1", "a"), ("w2", "b"), ("theta", "c")))
BLOB_CONTEXT = QContext(BLOB_FIELD, "q", False, (("l", "ql"), ("r", "qr")))
DN_CONTEXT = QContext(DN_FIELD, "q", False, (("omega1", "x1"), ("omega2", "x2")))


class Parametrization(str, enum.Enum):
    GENERIC6 = "generic6"
    BLOB = "blob"
    DN = "dn"
    GMP = "gmp"


def gmp_kappa_LR(n: int) -> Scalar:
    if n % 2 == 0:
        return qnum("(w1+w2+theta+1)/2") * qnum("(w1+w2-theta+1)/2")
    return -qnum("(w1-w2+theta)/2") * qnum("(w1-w2-theta)/2")


@lru_cache(maxsize=None)
def params_from(p: Parametrization | str, n: int = 1) -> ParamSet:
    """The ParamSet of a named parametrization at rank ``n``."""
    p = Parametrization(p)
    if p is Parametrization.GENERIC6:
        return ParamSet(*GENERIC6_FIELD.gens(), name="generic6")
    if p is Parametrization.BLOB:
        c = BLOB_CONTEXT
        return ParamSet(qnum(2, c), qnum("l", c), qnum("r", c), qnum("l-1", c), qnum("r-1", c),
                        BLOB_FIELD.gen("kLR"), name="blob")
    if p is Parametrization.DN:
        c = DN_CONTEXT
        one = DN_FIELD.one
        return ParamSet(qnum(2, c), qnum("omega1", c) / qnum("omega1+1", c),
                        qnum("omega2", c) / qnum("omega2+1", c), one, one, DN_FIELD.gen("b"), name="dn")
    if n < 1:
        raise PreconditionError("rank must be positive")
    return ParamSet(qnum(2), qnum("w1"), qnum("w2"), qnum("w1+1"), qnum("w2+1"), gmp_kappa_LR(n),
                    name=f"gmp{'even' if n % 2 == 0 else 'odd'}")


# ---------------------------------------------------------------------------
# rescalings


class RescaleWay(enum.IntEnum):
    """Generator shifts e -> e/alpha, f -> f/beta.

    1: (delta_L, delta_R); 2: (kappa_L, kappa_R); 3: (kappa_L, delta_R); 4: (delta_L, kappa_R).
    """

    WAY1 = 1
    WAY2 = 2
    WAY3 = 3
    WAY4 = 4


def rescale_factors(ps: ParamSet, way: RescaleWay | int):
    way = RescaleWay(way)
    left = ps.delta_L if way in (RescaleWay.WAY1, RescaleWay.WAY4) else ps.kappa_L
    right = ps.delta_R if way in (RescaleWay.WAY1, RescaleWay.WAY3) else ps.kappa_R
    return left, right


def _div(x, y, modulus):
    if modulus:
        if y % modulus == 0:
            raise PreconditionError("rescaling by a non-invertible parameter")
        return x * pow(y, modulus - 2, modulus) % modulus
    if y == 0:
        raise PreconditionError("rescaling by a non-invertible parameter")
    return x / y


def scale_generators(ps: ParamSet, alpha, beta, name: str | None = None) -> ParamSet:
    """Parameters seen by e/alpha and f/beta."""
    m = ps.modulus
    return ParamSet(
        ps.delta,
        _div(ps.delta_L, alpha, m),
        _div(ps.delta_R, beta, m),
        _div(ps.kappa_L, alpha, m),
        _div(ps.kappa_R, beta, m),
        _div(ps.kappa_LR, alpha * beta % m if m else alpha * beta, m),
        modulus=m,
        name=name or ps.name + "/scaled",
    )


def rescale(ps: ParamSet, way: RescaleWay | int) -> ParamSet:
    alpha, beta = rescale_factors(ps, way)
    return scale_generators(ps, alpha, beta, name=f"{ps.name}/way{int(way)}")


def unscale(ps: ParamSet, alpha, beta) -> ParamSet:
    """Inverse of :func:`scale_generators`."""
    m = ps.modulus
    inv_a = _div(ps.one(), alpha, m)
    inv_b = _div(ps.one(), beta, m)
    return scale_generators(ps, inv_a, inv_b, name=ps.name + "/unscaled")


# ---------------------------------------------------------------------------
# random specializations


def random_assignment(field: ScalarField, rng: random.Random, p: int = DEFAULT_PRIME) -> dict[str, int]:
    """Uniform nonzero values in GF(p) for each indeterminate."""
    return {x: rng.randrange(2, p - 1) for x in field.names}


def random_unit_params(ps: ParamSet, rng: random.Random, p: int = DEFAULT_PRIME, tries: int = 50) -> ParamSet:
    """Specialize ``ps`` at a random point where every parameter is a unit."""
    field = next(v.field for v in ps.values() if isinstance(v, Scalar))
    for _ in range(tries):
        try:
            spec = ps.specialize(random_assignment(field, rng, p), p)
        except PoleError:
            continue
        if spec.all_units():
            return spec
    raise PoleError("no pole-free unit specialization found")

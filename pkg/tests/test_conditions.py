import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from symblob.conditions import QFactor, generic_unit_point, gmp_at, point_on
from symblob.errors import PoleError, PreconditionError
from symblob.ring import qnum

P = 10007


def test_parse_and_expression():
    f = QFactor.parse("w1-w2+n-2", 5)
    assert f == QFactor(Fraction(1), Fraction(-1), Fraction(0), Fraction(3))
    assert QFactor.parse(f.expression()) == f
    assert str(QFactor.parse("[w1+w2+theta+1]/2".replace("[", "(").replace("]", ")"))).startswith("[")


def test_parse_rejects():
    with pytest.raises(PreconditionError):
        QFactor.parse("w1*w2")
    with pytest.raises(PreconditionError):
        QFactor.parse("w1+n")
    with pytest.raises(PreconditionError):
        QFactor.parse("w1+x")


def test_scalar_is_quantum_number():
    assert QFactor.parse("w1+1").scalar() == qnum("w1+1")


@given(st.sampled_from(["w1-1", "w2-1", "w1+w2-n+2", "-w1+w2+n-2", "w1-w2+n-2", "w1+w2+n-2",
                        "(w1+w2+theta+1)/2", "(w1-w2-theta-1)/2"]),
       st.integers(0, 10 ** 6), st.integers(2, 6))
def test_point_on_vanishes(cond, seed, n):
    f = QFactor.parse(cond, n)
    if n % 2 == 0 and cond == "(w1+w2+theta+1)/2":
        # a factor of kappa_LR at even rank: no point with all parameters units
        with pytest.raises(PoleError):
            point_on(f, random.Random(seed), P, n=n, tries=20)
        return
    pt = point_on(f, random.Random(seed), P, n=n)
    assert f.vanishes(pt, P)
    # the quantum number itself is zero there
    assert f.scalar().specialize(pt, P) == 0
    assert gmp_at(pt, n, P).all_units()


@given(st.integers(0, 10 ** 6))
def test_generic_point_avoids(seed):
    avoid = ("w1-1", "w2-1")
    pt = generic_unit_point(random.Random(seed), P, n=3, avoid=avoid)
    assert not any(QFactor.parse(a).vanishes(pt, P) for a in avoid)


def test_half_integer_exponent_rejected():
    with pytest.raises(PreconditionError):
        QFactor.parse("w1/4").qx_mod({"s": 2, "a": 3, "b": 5, "c": 7}, P)


def test_gmp_at_rejects_small_order():
    with pytest.raises(PoleError):
        gmp_at({"s": 1, "a": 3, "b": 5, "c": 7}, 2, P)

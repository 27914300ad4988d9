import numpy as np
import sympy
from hypothesis import given
from hypothesis import strategies as st
from sympy import GF
from sympy.polys.matrices import DomainMatrix

from symblob.linalg import det_bareiss, det_mod, nullspace_mod, rank_mod
from symblob.ring import GENERIC6_FIELD

P = 10007

square = st.integers(1, 5).flatmap(
    lambda k: st.lists(st.lists(st.integers(-4, 4), min_size=k, max_size=k), min_size=k, max_size=k))
rect = st.tuples(st.integers(1, 5), st.integers(1, 5)).flatmap(
    lambda s: st.lists(st.lists(st.integers(-3, 3), min_size=s[1], max_size=s[1]), min_size=s[0], max_size=s[0]))


@given(square)
def test_integer_det_matches_sympy(M):
    assert det_bareiss(M) == sympy.Matrix(M).det()


@given(square)
def test_det_mod_matches_sympy(M):
    assert det_mod(np.array(M), P) == int(sympy.Matrix(M).det()) % P


@given(rect)
def test_rank_and_nullspace_mod(M):
    ref = DomainMatrix([[GF(P)(x) for x in row] for row in M], (len(M), len(M[0])), GF(P)).rank()
    A = np.array(M, dtype=np.int64)
    assert rank_mod(A, P) == ref
    N = nullspace_mod(A, P)
    assert len(N) == A.shape[1] - ref
    for v in N:
        assert not ((A @ v) % P).any()


def test_symbolic_det_matches_sympy():
    d, dL, dR, kL, kR, kLR = GENERIC6_FIELD.gens()
    M = [[dL * kL, kL, 0], [kL, d, 1 / dR], [0, 1 / dR, kR + kLR]]
    ours = det_bareiss(M)
    ref = sympy.Matrix([[x.to_sympy() if hasattr(x, "to_sympy") else x for x in row] for row in M]).det()
    assert sympy.simplify(ours.to_sympy() - ref) == 0

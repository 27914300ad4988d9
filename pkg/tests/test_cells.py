import random

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from symblob import cells as C
from symblob import diagrams as dg
from symblob.errors import PreconditionError
from symblob.linalg import det_mod
from symblob.presentation import relations
from symblob.ring import numeric_params, params_from, random_unit_params

G6 = params_from("generic6")
P = 10007

CELL_DIMS = {
    1: {-1: 1, 0: 2},
    2: {-2: 1, -1: 1, 0: 4, 1: 1},
    3: {-3: 1, -2: 1, -1: 4, 0: 8, 1: 1, 2: 1},
    4: {-4: 1, -3: 1, -2: 5, -1: 5, 0: 16, 1: 5, 2: 1, 3: 1},
    5: {-5: 1, -4: 1, -3: 6, -2: 6, -1: 16, 0: 32, 1: 6, 2: 6, 3: 1, 4: 1},
}
BASIS_COUNTS = {1: 5, 2: 19, 3: 84, 4: 335, 5: 1428}


def _unit_point(seed, n=1):
    return random_unit_params(G6, random.Random(seed), P)


@pytest.mark.parametrize("n", sorted(CELL_DIMS))
def test_cell_dims_frozen(n):
    assert C.cell_dims(n) == CELL_DIMS[n]


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_partition_sizes_are_squares(n):
    parts = C.cell_partition(n)
    assert [c.label for c in parts] == list(C.labels(n))
    assert sum(len(c) for c in parts) == BASIS_COUNTS[n]
    for c in parts:
        assert len(c) == CELL_DIMS[n][c.label] ** 2
        assert all(C.cell_label(d) == c.label for d in c.members)
        assert all(C.through_count(d) == c.through_count for d in c.members)


def test_generator_words_rank5():
    words = {l: C.cell_generator_word(5, l) for l in C.labels(5)}
    assert words == {-5: (), -4: (5,), -3: (1,), -2: (1, 5), -1: (5, 1, 5, 5, 4, 5),
                     0: (5, 0, 5, 2, 5, 5, 4, 5), 1: (0, 2, 5), 2: (0, 2), 3: (0, 5), 4: (0,)}


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_generators_lie_in_their_class(n):
    for l in C.labels(n):
        assert C.cell_label(C.cell_generator(n, l)) == l


def test_anchor_labels():
    n = 4
    assert C.cell_generator(n, -n) == dg.identity(n)
    assert C.cell_generator(n, n - 1) == dg.gen_e(n)
    assert C.cell_generator(n, -(n - 1)) == dg.gen_f(n)


def test_label_out_of_range():
    with pytest.raises(PreconditionError):
        C.cell_module(3, 3)
    with pytest.raises(PreconditionError):
        C.cell_module(3, -4)


def test_family_basis_minus_n_minus_2():
    m = C.family_module(4, "-(n-2)")
    assert m.label == -2
    assert m.basis_strings() == ["EE1", "E1", "E2E1", "E3E2E1", "FE3E2E1"]


def test_family_bases_rank5():
    assert C.family_module(5, "n-3").basis_strings() == ["EE1EE2", "E1EE2", "EE2", "E3EE2", "E4E3EE2",
                                                         "FE4E3EE2"]
    m = C.family_module(5, "-(n-3)")
    assert m.generator_word == (1, 5)
    assert m.basis_strings()[:2] == ["EE1F", "E1F"]
    assert m.basis_strings()[-1] == "FE4E3E2E1F"
    m = C.family_module(5, "n-4")
    assert m.generator_word == (0, 2, 5)
    assert m.basis_strings()[0] == "EE1EE2F"


def test_family_rank_floor():
    with pytest.raises(PreconditionError):
        C.family_module(4, "n-4")
    with pytest.raises(PreconditionError):
        C.family_module(2, "-(n-2)")


def test_family_gram_tridiagonal_shape():
    d, dL, dR, kL, kR, _ = G6.values()
    one, zero = G6.one(), G6.zero()
    want = [[dL * kL, kL, zero, zero, zero],
            [kL, d, one, zero, zero],
            [zero, one, d, one, zero],
            [zero, zero, one, d, kR],
            [zero, zero, zero, kR, dR * kR]]
    assert C.family_module(4, "-(n-2)").gram_matrix(G6) == want


def test_rank1_label0():
    m = C.cell_module(1, 0)
    assert m.words == ((), (1,))
    d, dL, dR, kL, kR, kLR = G6.values()
    assert m.gram_matrix(G6) == [[dL, kLR], [kLR, dR * kLR]]
    assert C.gram_det(m, G6) == kLR * (dL * dR - kLR)


def test_rank1_label0_simple_dim_drops():
    # delta_L delta_R = kappa_LR kills one dimension of the head
    ps = numeric_params([5, 3, 4, 7, 11, 12], P)
    assert C.simple_dim(C.cell_module(1, 0), ps) == 1
    ps = numeric_params([5, 3, 4, 7, 11, 13], P)
    assert C.simple_dim(C.cell_module(1, 0), ps) == 2


@pytest.mark.parametrize("n", [2, 3, 4])
def test_gram_symmetric(n):
    for l in C.labels(n):
        G = C.cell_module(n, l).gram_matrix(G6)
        assert all(G[i][j] == G[j][i] for i in range(len(G)) for j in range(len(G)))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_kappa_LR_only_at_label_zero(n):
    for l in C.labels(n):
        if l != 0:
            assert not C.cell_module(n, l).involves_kappa_LR()


@pytest.mark.parametrize("n", [2, 3])
def test_module_relations_hold(n):
    ps = _unit_point(n)
    for l in C.labels(n):
        m = C.cell_module(n, l)
        mats = [m.action_matrix(k, ps) for k in range(n + 1)]
        for rel in relations(n):
            def word(w):
                out = np.eye(m.dim, dtype=np.int64)
                for k in reversed(w):
                    out = mats[k] @ out % P
                return out
            w = ps.weight(rel.weight)
            assert np.array_equal(word(rel.lhs), word(rel.rhs) * w % P), (l, rel.name)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_form_is_invariant(n):
    ps = _unit_point(10 + n)
    for l in C.labels(n):
        m = C.cell_module(n, l)
        G = m.gram_matrix(ps)
        for k in range(n + 1):
            A = m.action_matrix(k, ps)
            assert np.array_equal(A.T @ G % P, G @ A % P), (l, k)


@given(st.permutations(list(range(5))), st.integers(0, 10 ** 6))
def test_det_sign_under_basis_permutation(perm, seed):
    words = C.family_basis_words(4, "-(n-2)")
    ps = _unit_point(seed)
    base = C.family_module(4, "-(n-2)")
    m = C.cell_module(4, -2, basis_words=[words[i] for i in perm], generator_word=(1,))
    a, b = C.gram_det(base, ps), C.gram_det(m, ps)
    assert b == a
    assert sorted(m.basis_strings()) == sorted(base.basis_strings())


def test_bad_basis_words():
    with pytest.raises(PreconditionError):
        C.cell_module(4, -2, basis_words=[(0, 1), (1,)], generator_word=(1,))


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_one_dimensional_standards(n):
    d, dL, dR, kL, kR, _ = G6.values()
    z = G6.zero()
    cases = {-n: {}, n - 1: {0: dL}, -(n - 1): {n: dR}, n - 2: {0: dL, n: dR}}
    for l, nonzero in cases.items():
        if n == 2 and l == 0:
            continue
        m = C.cell_module(n, l)
        assert m.dim == 1
        for k in range(n + 1):
            assert m.action_matrix(k, G6)[0][0] == nonzero.get(k, z), (l, k)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_identity_hom(n):
    ps = _unit_point(n)
    for l in C.labels(n):
        m = C.cell_module(n, l)
        assert C.hom_space_dim(m, m, ps) >= 1


@pytest.mark.parametrize("n", [3, 4])
def test_generic_homs_vanish_off_diagonal(n):
    ps = _unit_point(20 + n)
    mods = {l: C.cell_module(n, l) for l in C.labels(n)}
    for a in mods:
        for b in mods:
            if a != b:
                assert C.hom_space_dim(mods[b], mods[a], ps) == 0, (b, a)


def test_cyclic_hom_matches_general_system():
    ps = _unit_point(7)
    n = 3
    for a in C.labels(n):
        for b in C.labels(n):
            src, dst = C.cell_module(n, b), C.cell_module(n, a)
            general = C._hom_general(C.numeric_module(src, ps), C.numeric_module(dst, ps))
            assert C.hom_space_dim(src, dst, ps) == general


@pytest.mark.parametrize("n", [2, 3])
def test_functor_round_trips(n):
    from symblob.conditions import gmp_at, generic_unit_point

    ps = gmp_at(generic_unit_point(random.Random(n), P, n), n, P)
    checks = C.verify_functors(n, ps)
    assert checks and all(c.passed for c in checks)
    assert {c.functor for c in checks} == {"F", "F'", "FoG", "F'oG'"}


def test_localised_labels():
    n = 4
    assert C._localised_label(n, -n, "F") is None
    assert C._localised_label(n, -n + 1, "F") is None
    assert C._localised_label(n, 2, "F") == -2
    assert C._localised_label(n, n - 1, "F'") is None
    assert C._localised_label(n, -1, "F'") == -1


@pytest.mark.parametrize("n", [1, 2, 3])
def test_globalise_labels(n):
    for l in C.labels(n):
        m = C.cell_module(n, l)
        assert C.globalise(m, "G").label == -l
        assert C.globalise(m, "G'").label == l


def test_gram_det_mod_agrees_with_symbolic():
    m = C.cell_module(3, -1)
    rng = random.Random(3)
    vals = [rng.randrange(2, P) for _ in range(6)]
    num = numeric_params(vals, P)
    sym = C.gram_det(m, G6)
    assert det_mod(m.gram_matrix(num), P) == sym.specialize(dict(zip(("d", "dL", "dR", "kL", "kR", "kLR"), vals)), P)

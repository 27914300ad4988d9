import json
import random
from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from symblob import diagrams as dg
from symblob.algebra import (AlgElement, StructureTable, dimension, element, involution, mul, one,
                             tl_algebra, verify_corner_relations, word_element)
from symblob.errors import PreconditionError
from symblob.ring import params_from, random_unit_params

G6 = params_from("generic6")


def test_dimensions():
    assert dimension(1) == 5
    assert dimension(2) == 19
    assert dimension(3) == 84


def test_relations_in_the_algebra():
    n = 4
    e = lambda *w: word_element(n, w, G6)  # noqa: E731
    assert e(1, 2, 1) == e(1)
    assert e(2, 1, 2) == e(2)
    assert e(1, 3) == e(3, 1)
    x = e(0, 2, 4)
    assert mul(one(n, G6), x, G6) == x


def test_rank_mismatch():
    with pytest.raises(PreconditionError):
        mul(one(2, G6), one(3, G6), G6)


def test_element_arithmetic():
    d = dg.gen_e(2)
    x = element(d, 3)
    assert (x - x).is_zero()
    assert (x + x).coefficient(d) == 6
    assert x.scale(0).is_zero()


@pytest.mark.parametrize("n", [1, 2])
def test_associativity_exhaustive(n):
    t = StructureTable(n)
    N = len(t.basis)
    for i, j, k in product(range(N), repeat=3):
        w1, a = t.entry(i, j)
        w2, left = t.entry(a, k)
        w3, b = t.entry(j, k)
        w4, right = t.entry(i, b)
        assert left == right and dg.add_weights(w1, w2) == dg.add_weights(w3, w4)


@pytest.mark.parametrize("n", [3, 4])
def test_associativity_sampled(n):
    rng = random.Random(n)
    basis = dg.enumerate_basis(n)
    for _ in range(1000):
        x, y, z = (element(rng.choice(basis), 1) for _ in range(3))
        assert mul(mul(x, y, G6), z, G6) == mul(x, mul(y, z, G6), G6)


b3 = dg.enumerate_basis(3)


@given(st.lists(st.tuples(st.integers(0, len(b3) - 1), st.integers(-3, 3)), min_size=1, max_size=3),
       st.lists(st.tuples(st.integers(0, len(b3) - 1), st.integers(-3, 3)), min_size=1, max_size=3))
def test_involution_antimultiplicative(xs, ys):
    x = AlgElement(3, [(b3[i], c) for i, c in xs])
    y = AlgElement(3, [(b3[i], c) for i, c in ys])
    assert involution(mul(x, y, G6)) == mul(involution(y), involution(x), G6)
    assert involution(involution(x)) == x


@pytest.mark.parametrize("n", [1, 2, 3])
def test_kappa_LR_only_without_propagating_lines(n):
    t = StructureTable(n)
    for i, j in product(range(len(t.basis)), repeat=2):
        w, k = t.entry(i, j)
        a, b, c = t.basis[i], t.basis[j], t.basis[k]
        from symblob.cells import through_count

        if through_count(a) and through_count(b) and through_count(c) == min(through_count(a), through_count(b)):
            assert w[dg.KAPPA_LR] == 0


@pytest.mark.parametrize("n", [2, 3])
@pytest.mark.parametrize("side", ["e", "f"])
def test_corner_relations(n, side):
    assert verify_corner_relations(n, side, G6) == []


def test_corner_relations_numeric():
    ps = random_unit_params(G6, random.Random(1))
    assert verify_corner_relations(3, "e", ps) == []


def test_tl_subalgebra():
    d = params_from("generic6").delta
    tl = tl_algebra(3, d)
    assert tl.dimension() == 5
    U1, U2 = (element(tl.U(i), 1) for i in (1, 2))
    assert tl.mul(tl.mul(U1, U2), U1) == U1
    assert tl.mul(U1, U1) == U1.scale(d)
    with pytest.raises(PreconditionError):
        tl.mul_diagrams(dg.gen_e(3), dg.gen_e(3))


def test_structure_cache(tmp_path):
    t = StructureTable(2, tmp_path)
    vals = {(i, j): t.entry(i, j) for i in range(19) for j in range(19)}
    t.save()
    again = StructureTable(2, tmp_path)
    assert len(again) == 361
    assert all(again.entry(*k) == v for k, v in vals.items())
    path = next(tmp_path.iterdir())
    data = json.loads(path.read_text())
    data["header"]["version"] = "0.0.0"
    path.write_text(json.dumps(data))
    assert len(StructureTable(2, tmp_path)) == 0
    path.write_text("not json")
    assert len(StructureTable(2, tmp_path)) == 0

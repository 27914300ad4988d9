import pytest

from symblob.errors import PreconditionError
from symblob.quotients import (catalan, genericity_counterexample, kappa_check, strip_blobs, verify_even_quotient,
                               verify_odd_quotient, xi_generator_images)
from symblob import diagrams as dg
from symblob.algebra import element


def test_catalan():
    assert [catalan(n) for n in range(1, 7)] == [1, 2, 5, 14, 42, 132]


def test_odd_quotient_rank3():
    r = verify_odd_quotient(3)
    assert r.homomorphism and r.pairs_checked == 84 ** 2
    assert (r.image_dim, r.kernel_dim) == (5, 79)
    assert r.extra["check_kernel_is_ideal"]
    assert r.passed


@pytest.mark.slow
def test_odd_quotient_rank5_sampled():
    r = verify_odd_quotient(5, sample=200, seed=1)
    assert r.passed and r.image_dim == 42


@pytest.mark.parametrize("n, image", [(2, 5), (4, 42)])
def test_even_quotient(n, image):
    r = verify_even_quotient(n)
    assert r.passed
    assert r.image_dim == image == catalan(n + 1)


def test_even_quotient_images():
    imgs = xi_generator_images(2, __import__("symblob.quotients", fromlist=["even_locus"]).even_locus())
    assert imgs[0] == element(dg.identity(3), imgs[0].terms[dg.identity(3)])


def test_parity_preconditions():
    with pytest.raises(PreconditionError):
        verify_odd_quotient(4)
    with pytest.raises(PreconditionError):
        verify_even_quotient(3)


def test_generic_parameters_break_the_quotient():
    ce, count = genericity_counterexample()
    assert ce is not None and count >= 1


def test_kappa_check():
    k = kappa_check()
    assert k["odd"]["vanishes"] and k["odd"]["gram_vanishes"]
    assert not k["even"]["vanishes"]


def test_strip_is_linear():
    d = dg.gen_e(3)
    x = element(d, 2) + element(dg.identity(3), 3)
    assert strip_blobs(x) == element(d.undecorated(), 2) + element(dg.identity(3), 3)

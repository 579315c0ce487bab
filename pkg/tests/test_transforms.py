import pytest

from tqf.arith import prime_divisors, valuation
from tqf.forms import TernaryForm, aut_count, divisor, invariants, is_equivalent, reduce, theta_series
from tqf.genera import get_inventory
from tqf.local import anisotropic_primes
from tqf.transforms import (TransformError, has_lehman_pattern, lehman_normal_form, phi_2, phi_p, watson,
                            watson_lattice)

T = TernaryForm


def _level(f):
    return 4 * f.discriminant // divisor(f)


@pytest.mark.parametrize("f,p,g,h", [(T(1, 1, 3, 0, 0, -1), 3, 1, 2), (T(1, 1, 1, 0, 0, -1), 3, 1, 1)])
def test_lehman_normal_form_examples(f, p, g, h):
    lnf = lehman_normal_form(f, p)
    assert (lnf.g, lnf.h) == (g, h)
    assert has_lehman_pattern(lnf.form, p, g, h)
    assert f.transform(lnf.U) == lnf.form
    assert is_equivalent(lnf.form, f) is not None
    a, b, c, r, s, t = lnf.letters
    assert a % p and c % p


def test_lehman_normal_form_fixed_point():
    f = lehman_normal_form(T(1, 1, 3, 0, 0, -1), 3).form
    assert lehman_normal_form(f, 3).form == f


def test_lehman_rejects_primes_off_the_level():
    with pytest.raises(TransformError):
        lehman_normal_form(T(1, 1, 1, 0, 0, 0), 3)


def test_phi_3_examples():
    f, g = T(1, 1, 3, 0, 0, -1), T(1, 1, 1, 0, 0, -1)
    assert is_equivalent(phi_p(f, 3), g) is not None
    assert is_equivalent(phi_p(g, 3), f) is not None
    assert reduce(phi_p(phi_p(f, 3), 3)) == reduce(f)


def test_phi_transfers_representations():
    f = T(1, 1, 3, 0, 0, -1)
    a, b = theta_series(f, 180), theta_series(phi_p(f, 3), 60)
    assert all(a[3 * n] == b[n] for n in range(61))


def test_phi_2_examples():
    assert is_equivalent(phi_2(T(1, 1, 3, 0, 0, -1)), T(3, 4, 4, -4, 0, 0)) is not None
    # x^2 + y^2 + z^2 has d = 4N^2, outside the domain; level 4 has a single class
    with pytest.raises(TransformError):
        phi_2(T(1, 1, 1, 0, 0, 0))
    with pytest.raises(TransformError):
        phi_2(T(3, 4, 4, -4, 0, 0))


LEVELS = [3, 5, 15, 21, 35]


@pytest.mark.parametrize("N", LEVELS)
def test_phi_p_on_every_class(N):
    inv = get_inventory(N)
    images = {}
    for rec in inv.classes:
        f = rec.form
        for p in prime_divisors(N):
            g, h = 1, valuation(f.discriminant, p)
            img = phi_p(f, p)
            assert _level(img) == 4 * N
            assert img.discriminant == p ** (3 * g - 2 * h) * f.discriminant
            assert aut_count(img) == rec.aut
            assert anisotropic_primes(img) == anisotropic_primes(f)
            images.setdefault(p, set()).add(img)
            if h == 2:
                a, b = theta_series(f, 50 * p), theta_series(img, 50)
                assert all(a[p * n] == b[n] for n in range(51))
    # bijection on classes
    assert all(len(v) == len(inv.classes) for v in images.values())


@pytest.mark.parametrize("N", [3, 5, 15])
def test_watson_inverts_phi_2(N):
    inv = get_inventory(N)
    for rec in inv.classes:
        f = rec.form
        Nr = N * N // f.discriminant if (N * N) % f.discriminant == 0 else None
        if Nr is None or N % Nr:
            continue
        g = phi_2(f)
        assert g.discriminant == 16 * f.discriminant
        assert aut_count(g) == rec.aut and anisotropic_primes(g) == anisotropic_primes(f)
        back = watson(g, 4)
        assert reduce(back) == f


def test_watson_examples():
    f = T(8 * 1, 8 * 2, 3, 8 * 1, 0, 8 * 1)
    assert watson(f, 4) == T(2, 4, 3, 4, 0, 2)
    assert is_equivalent(watson(T(3, 4, 4, -4, 0, 0), 4), T(1, 1, 3, 0, 0, -1)) is not None
    g = T(1, 1, 1, 0, 0, 0)
    assert watson(g, 1) == g
    assert len(watson_lattice(g, 4)) == 3


def test_watson_preserves_aut_on_16N2_classes():
    inv = get_inventory(15)
    for rec in inv.classes:
        if rec.form.discriminant % 16 == 0 and 15 % (16 * 225 // rec.form.discriminant) == 0:
            img = watson(rec.form, 4)
            assert aut_count(img) == rec.aut
            assert invariants(img).level == 60

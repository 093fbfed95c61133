import random

import pytest
from hypothesis import given, settings, strategies as st

from rncgalois import forms
from rncgalois.errors import FieldTooLargeError
from rncgalois.field import GF
from rncgalois.forms import BinaryForm, Divisor, ProjPoint, iter_points

F7 = GF(7)
F11 = GF(11)
F13 = GF(13)


def F(handle, *coeffs):
    return BinaryForm(handle, len(coeffs) - 1, list(coeffs))


def brute_eval(coeffs, a, c, p):
    d = len(coeffs) - 1
    return sum(coeffs[i] * pow(a, d - i, p) * pow(c, i, p) for i in range(d + 1)) % p


def test_evaluate_examples():
    assert forms.evaluate(F(F7, 1, 0, -1), ProjPoint(F7, 1, 1)) == 0
    assert forms.evaluate(F(F7, 1, 0, 0, 0), ProjPoint(F7, 0, 1)) == 0
    assert forms.evaluate(F(F13, 1, 0, 1), ProjPoint(F13, 5, 1)) == 0


@settings(max_examples=50)
@given(st.lists(st.integers(0, 12), min_size=1, max_size=7),
       st.integers(0, 12), st.integers(0, 12))
def test_evaluate_against_bruteforce(coeffs, a, c):
    if a == 0 and c == 0:
        c = 1
    form = BinaryForm(F13, len(coeffs) - 1, coeffs)
    pt = ProjPoint(F13, a, c)
    assert forms.evaluate(form, pt).val == brute_eval(coeffs, pt.a, pt.c, 13)


def test_substitute_examples():
    ident = ((1, 0), (0, 1))
    swap = ((0, 1), (1, 0))
    assert forms.substitute(F(F7, 1, 0, 0, 0), ident).coeffs == (1, 0, 0, 0)
    assert forms.substitute(F(F7, 1, 0, 0), swap).coeffs == (0, 0, 1)
    # (x - y)^3 under x -> x + y collapses to x^3
    shear = ((1, 1), (0, 1))
    got = forms.substitute(F(F7, 1, -3, 3, -1), shear)
    assert got.coeffs == (1, 0, 0, 0)


@settings(max_examples=30)
@given(st.lists(st.integers(0, 10), min_size=2, max_size=6),
       st.lists(st.integers(0, 10), min_size=4, max_size=4),
       st.lists(st.integers(0, 10), min_size=4, max_size=4))
def test_substitute_monoid_action(coeffs, m1, m2):
    form = BinaryForm(F11, len(coeffs) - 1, coeffs)
    M = ((m1[0], m1[1]), (m1[2], m1[3]))
    N = ((m2[0], m2[1]), (m2[2], m2[3]))
    a, b, c, d = (F11.element(v) for v in m1)
    e, f, g, h = (F11.element(v) for v in m2)
    MN = ((a * e + b * g, a * f + b * h), (c * e + d * g, c * f + d * h))
    assert forms.substitute(form, MN) == forms.substitute(
        forms.substitute(form, M), N
    )


def test_gcd_examples():
    assert forms.gcd(F(F7, 1, 0, 0, 0), F(F7, 0, 0, 0, 1)).degree == 0
    A = F(F7, 1, -1) * F(F7, 1, 0)
    B = F(F7, 1, -1) * F(F7, 0, 1)
    assert forms.gcd(A, B) == F(F7, 1, -1)
    # shared power of y (the [1:0]-root edge): y^2 x vs y^3
    yx = F(F7, 1, 0) * F(F7, 0, 1) * F(F7, 0, 1)
    y3 = F(F7, 0, 1) ** 3
    g = forms.gcd(yx, y3)
    assert g.degree == 2 and g.coeffs == (0, 0, 1)


def test_resultant_examples():
    assert forms.resultant(F(F7, 1, 0, 0), F(F7, 0, 0, 1)) == 1
    A = F(F7, 1, -1) * F(F7, 1, 0)
    B = F(F7, 1, -1) * F(F7, 0, 1)
    assert forms.resultant(A, B) == 0
    assert forms.resultant(F(F7, 1, -1), F(F7, 1, 1)) == 2


@settings(max_examples=40)
@given(st.lists(st.integers(0, 12), min_size=2, max_size=6),
       st.lists(st.integers(0, 12), min_size=2, max_size=6))
def test_resultant_vanishes_iff_common_factor(ca, cb):
    A = BinaryForm(F13, len(ca) - 1, ca)
    B = BinaryForm(F13, len(cb) - 1, cb)
    if A.is_zero() or B.is_zero():
        return
    assert (forms.resultant(A, B) == 0) == (forms.gcd(A, B).degree >= 1)


def test_engineered_common_factor_resultant():
    rng = random.Random(4)
    for _ in range(20):
        shared = F(F13, 1, rng.randrange(13))
        A = shared * F(F13, 1, rng.randrange(13), rng.randrange(13))
        B = shared * F(F13, 1, rng.randrange(13), rng.randrange(13))
        assert forms.resultant(A, B) == 0


def test_wronskian_examples():
    W = forms.wronskian(F(F7, 1, 0, 0), F(F7, 0, 0, 1))
    assert W.coeffs == (0, 4, 0)
    A = F(F7, 3, 1, 4)
    assert forms.wronskian(A, A).is_zero()
    assert forms.wronskian(F(F7, 1, 0), F(F7, 0, 1)).coeffs == (1,)


@settings(max_examples=30)
@given(st.lists(st.integers(0, 6), min_size=3, max_size=6),
       st.lists(st.integers(0, 6), min_size=3, max_size=6))
def test_wronskian_antisymmetry(ca, cb):
    if len(ca) != len(cb):
        return
    A = BinaryForm(F7, len(ca) - 1, ca)
    B = BinaryForm(F7, len(cb) - 1, cb)
    W1 = forms.wronskian(A, B)
    W2 = forms.wronskian(B, A)
    assert W1 + W2 == BinaryForm.zero(F7, W1.degree)


def test_roots_examples():
    f = F(F7, 1, 0) ** 3 * F(F7, 0, 1)
    D = forms.roots(f)
    assert D.entries == Divisor(
        F7, [(ProjPoint(F7, 0, 1), 3), (ProjPoint(F7, 1, 0), 1)]
    ).entries
    D = forms.roots(F(F13, 1, 0, 1))
    assert D.degree == 2 and all(m == 1 for _, m in D.entries)
    assert {pt.key() for pt, _ in D.entries} == {
        ProjPoint(F13, 5, 1).key(), ProjPoint(F13, 8, 1).key()
    }
    assert forms.roots(F(F7, 1, 0, 1)).degree == 0


def test_roots_field_too_large():
    big = GF(1048583)
    with pytest.raises(FieldTooLargeError):
        forms.roots(BinaryForm(big, 1, [1, 1]))


def test_form_from_divisor_examples():
    D = Divisor.single(ProjPoint(F13, 1, 1), 3)
    assert forms.form_from_divisor(D, 3).coeffs == (1, 10, 3, 12)
    n = 5
    D = Divisor.single(ProjPoint(F13, 1, 0), n)
    assert forms.form_from_divisor(D, n).coeffs == (0,) * n + (1,)
    with pytest.raises(ValueError):
        forms.form_from_divisor(D, n + 1)


def test_roots_form_roundtrip():
    rng = random.Random(11)
    pts = list(iter_points(F11))
    for _ in range(40):
        support = rng.sample(pts, rng.randrange(1, 4))
        D = Divisor(F11, [(p, rng.randrange(1, 3)) for p in support])
        form = forms.form_from_divisor(D, D.degree)
        assert forms.roots(form) == D
        # and the reverse normalization on split forms
        again = forms.form_from_divisor(forms.roots(form), D.degree)
        assert again == form.monic()


def test_is_split_matches_roots():
    rng = random.Random(3)
    for _ in range(60):
        coeffs = [rng.randrange(13) for _ in range(rng.randrange(2, 7))]
        form = BinaryForm(F13, len(coeffs) - 1, coeffs)
        if form.is_zero():
            continue
        assert forms.is_split(form) == (forms.roots(form).degree == form.degree)


def test_divide_exact():
    A = F(F13, 1, 3, 5) * F(F13, 2, 7)
    assert forms.divide_exact(A, F(F13, 2, 7)) == F(F13, 1, 3, 5)
    with pytest.raises(ValueError):
        forms.divide_exact(F(F13, 1, 0, 0), F(F13, 1, 1))

import random

import pytest

from rncgalois import forms, proj
from rncgalois.field import GF
from rncgalois.forms import BinaryForm, Divisor, ProjPoint, iter_points
from rncgalois.proj import (
    MoebiusMap,
    Pencil,
    RationalMap,
    iter_pgl2,
    moebius_from_three_points,
    pluecker,
    projection_map,
    subspace_from_map,
    veronese_pullback,
)

F7 = GF(7)
F11 = GF(11)
F13 = GF(13)


def test_pullback_dictionary():
    assert veronese_pullback(F7, [1, 0, 0, 0], 3).coeffs == (1, 0, 0, 0)
    # L for the point [1:1], n = 3: binomial row with alternating signs
    got = veronese_pullback(F13, [1, -3, 3, -1], 3)
    assert got == forms.form_from_divisor(
        Divisor.single(ProjPoint(F13, 1, 1), 3), 3
    )


def test_pullback_is_power_of_linear_form():
    # nu^* of the binomial hyperplane row equals (cx - ay)^n, all points
    n = 3
    for pt in iter_points(F7):
        row = forms.form_from_divisor(Divisor.single(pt, n), n)
        pulled = veronese_pullback(F7, list(row.coeffs), n)
        assert pulled == forms.form_from_divisor(Divisor.single(pt, n), n)
        # zero exactly on the point, to order n
        assert forms.roots(pulled) == Divisor.single(pt, n)


def test_projection_map_monomial_pencil():
    W = Pencil(F13, 3, [[1, 0, 0, 0], [0, 0, 0, 1]])
    m, f, base = projection_map(W)
    assert m == 3 and base.degree == 0
    assert {f.p.coeffs, f.q.coeffs} == {(1, 0, 0, 0), (0, 0, 0, 1)}


def test_projection_subspace_roundtrip():
    rng = random.Random(9)
    for _ in range(50):
        while True:
            P = BinaryForm(F13, 4, [rng.randrange(13) for _ in range(5)])
            Q = BinaryForm(F13, 4, [rng.randrange(13) for _ in range(5)])
            if P.is_zero() or Q.is_zero():
                continue
            if forms.gcd(P, Q).degree == 0:
                break
        f = RationalMap(P, Q)
        W = subspace_from_map(f)
        m, g, base = projection_map(W)
        assert m == 4 and base.degree == 0
        # same map up to the canonical scaling already applied
        assert {g.p.coeffs, g.q.coeffs} <= {
            r for r in (W.row_forms()[0].coeffs, W.row_forms()[1].coeffs)
        } or forms.gcd(g.p, f.p * 1).degree >= 0  # degrees agree
        assert subspace_from_map(g) == W


def test_degree_plus_base_equals_n():
    rng = random.Random(21)
    pts = list(iter_points(F11))
    for _ in range(30):
        n = rng.randrange(3, 6)
        rows = [[rng.randrange(11) for _ in range(n + 1)] for _ in range(2)]
        try:
            W = Pencil(F11, n, rows)
        except ValueError:
            continue
        F0, F1 = W.row_forms()
        g = forms.gcd(F0, F1)
        m, f, base = projection_map(W)
        assert m + g.degree == n
        assert base.degree <= g.degree


def test_moebius_from_three_points():
    pts = (ProjPoint(F13, 1, 0), ProjPoint(F13, 0, 1), ProjPoint(F13, 1, 1))
    assert moebius_from_three_points(pts, pts).is_identity()
    swapped = (pts[1], pts[0], pts[2])
    sig = moebius_from_three_points(pts, swapped)
    assert sig.m == (0, 1, 1, 0)
    rng = random.Random(2)
    allpts = list(iter_points(F13))
    for _ in range(30):
        src = tuple(rng.sample(allpts, 3))
        dst = tuple(rng.sample(allpts, 3))
        sig = moebius_from_three_points(src, dst)
        assert tuple(sig.apply(s) for s in src) == dst
    with pytest.raises(ValueError):
        moebius_from_three_points((pts[0], pts[0], pts[1]), pts)


def test_moebius_group_structure():
    rng = random.Random(5)
    maps = []
    for _ in range(6):
        while True:
            try:
                maps.append(MoebiusMap(F13, [rng.randrange(13) for _ in range(4)]))
                break
            except ValueError:
                continue
    for a in maps:
        assert (a @ a.inverse()).is_identity()
        for b in maps:
            for c in maps:
                assert ((a @ b) @ c) == (a @ (b @ c))


def test_conjugation_preserves_order():
    z = GF(13).element(pow(2, 12 // 4, 13))  # order-4 scalar
    base = MoebiusMap.diagonal(F13, z)
    rng = random.Random(8)
    for _ in range(10):
        while True:
            try:
                M = MoebiusMap(F13, [rng.randrange(13) for _ in range(4)])
                break
            except ValueError:
                continue
        assert (M @ base @ M.inverse()).order() == base.order()


def test_pencil_rref_canonical():
    W1 = Pencil(F13, 3, [[1, 0, 0, 0], [0, 0, 0, 1]])
    W2 = Pencil(F13, 3, [[3, 0, 0, 5], [0, 0, 0, 2]])
    assert W1 == W2
    with pytest.raises(ValueError):
        Pencil(F13, 3, [[1, 0, 0, 0], [2, 0, 0, 0]])


def test_pluecker_injective_and_invariant():
    W = Pencil(F7, 2, [[1, 0, 0], [0, 1, 0]])
    assert pluecker(W).vec == (1, 0, 0)
    rng = random.Random(12)
    seen = {}
    for _ in range(100):
        rows = [[rng.randrange(7) for _ in range(5)] for _ in range(2)]
        try:
            W = Pencil(F7, 4, rows)
        except ValueError:
            continue
        key = pluecker(W).vec
        if key in seen:
            assert seen[key] == W
        seen[key] = W
        # invariance under row shuffles of equivalent generating sets
        r0, r1 = W.rows
        mixed = [
            [F7.element(3 * a + 2 * b).val for a, b in zip(r0, r1)],
            [F7.element(5 * b).val for b in r1],
        ]
        try:
            W2 = Pencil(F7, 4, mixed)
        except ValueError:
            continue
        if W2 == W:
            assert pluecker(W2).vec == key


def test_iter_pgl2_count_and_order():
    elems = list(iter_pgl2(F7))
    assert len(elems) == 7**3 - 7
    assert len({m.m for m in elems}) == len(elems)
    assert elems[0].m[0] == 0  # canonical packed order starts in the a=0 block

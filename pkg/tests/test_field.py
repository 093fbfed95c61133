import pytest
from hypothesis import given, settings, strategies as st

from rncgalois.errors import FieldMismatchError, NoRootOfUnityError
from rncgalois.field import (
    GF,
    alpha_class_representatives,
    embedding,
    in_squares_coset,
    is_square,
    parse_element,
    primitive_root_of_unity,
    sqrt,
)

F7 = GF(7)
F13 = GF(13)
F61 = GF(61)


def test_basic_arithmetic_examples():
    assert F13.element(2).inverse() == 7
    assert F13.element(3) ** 3 == pow(3, 3, 13)
    assert F13.element(12) + 1 == 0
    assert F13.element(5) / 5 == 1
    with pytest.raises(ZeroDivisionError):
        F13.element(1) / 0
    with pytest.raises(FieldMismatchError):
        F13.element(1) + F7.element(1)


@given(st.integers(0, 12), st.integers(0, 12), st.integers(0, 12))
def test_field_axioms_prime(a, b, c):
    ea, eb, ec = F13.element(a), F13.element(b), F13.element(c)
    assert (ea + eb) * ec == ea * ec + eb * ec
    assert ea * (eb * ec) == (ea * eb) * ec
    assert ea + (-ea) == 0
    if a % 13:
        assert ea * ea.inverse() == 1


@settings(max_examples=40)
@given(st.integers(0, 48), st.integers(0, 48))
def test_field_axioms_extension(a, b):
    F49 = GF(7, 2)
    ea, eb = F49.element(a), F49.element(b)
    assert ea + eb == eb + ea
    assert ea * eb == eb * ea
    if a:
        assert ea * ea.inverse() == 1
        assert ea ** 48 == 1  # Fermat/Lagrange


def test_modulus_is_smallest_irreducible():
    # over F_7 the first monic quadratic with no root is x^2 + 1
    assert GF(7, 2).modulus == (1, 0, 1)
    # packed search order: over F_5, x^2 + 2 is the first irreducible
    for low in range(2):
        poly_has_root = any((x * x + low) % 5 == 0 for x in range(5))
        assert poly_has_root
    assert GF(5, 2).modulus == (2, 0, 1)


def test_handle_determinism_and_cache():
    assert GF(13, 2) is GF(13, 2)
    assert GF(13, 2).modulus == GF(13, 2).modulus


def test_handle_validation():
    with pytest.raises(ValueError):
        GF(4)
    with pytest.raises(ValueError):
        GF(2)
    with pytest.raises(ValueError):
        GF(13, 0)


def test_primitive_root_of_unity_examples():
    # independent oracle: scan integers for the smallest element of order 3
    expected = next(
        z for z in range(2, 13)
        if pow(z, 3, 13) == 1 and pow(z, 1, 13) != 1
    )
    assert primitive_root_of_unity(F13, 3) == expected == 3
    z4 = primitive_root_of_unity(F13, 4)
    assert z4 * z4 == 12
    assert sorted({(z4**j).val for j in range(4)}) == sorted(
        {pow(z4.val, j, 13) for j in range(4)}
    )
    with pytest.raises(NoRootOfUnityError):
        primitive_root_of_unity(F13, 5)


@pytest.mark.parametrize("n", [2, 3, 4, 6, 12])
def test_primitive_root_powers_distinct(n):
    z = primitive_root_of_unity(F13, n)
    powers = {(z**j).val for j in range(n)}
    assert len(powers) == n


def test_is_square_and_sqrt():
    assert is_square(F61.element(5)) is True  # 5^30 = 1 mod 61
    assert pow(5, 30, 61) == 1
    assert is_square(F7.element(3)) is False
    assert pow(3, 3, 7) == 6
    assert sqrt(F13.element(1)) == 1
    r = sqrt(F13.element(4))
    assert r * r == 4 and r.val <= (13 - r.val)
    with pytest.raises(ValueError):
        sqrt(F7.element(3))


def test_sqrt_large_prime_path():
    # Tonelli-Shanks branch: a prime just above the table limit
    p = 1048583
    F = GF(p)
    a = F.element(12345) ** 2
    r = sqrt(a)
    assert r * r == a
    assert r.val <= p - r.val


def test_alpha_class_representatives():
    reps3 = alpha_class_representatives(F13, 3)
    assert [r.val for r in reps3] == [1, 2]  # generator of F_13^* is 2
    assert [r.val for r in alpha_class_representatives(F13, 4)] == [1]
    # pairwise quotients are not in the subgroup; arbitrary units reduce in
    a, b = reps3
    assert not in_squares_coset(b / a, 3)
    for v in range(1, 13):
        e = F13.element(v)
        assert sum(in_squares_coset(e / r, 3) for r in reps3) == 1


def test_alpha_class_count_never_exceeds_two():
    for p in (5, 13, 17, 29):
        for m in (1, 2, 3, 4, 5, 6):
            assert len(alpha_class_representatives(GF(p), m)) in (1, 2)


def test_extension_element_roundtrip():
    F169 = GF(13, 2)
    e = F169.element([5, 7])
    assert e.repr_vector() == (5, 7)
    assert parse_element(F169, e.serialize()) == e
    assert parse_element(F13, "6") == F13.element(6)


def test_embedding_is_ring_hom():
    F169 = GF(13, 2)
    emb = embedding(F13, F169)
    for a in range(13):
        for b in range(13):
            ea, eb = F13.element(a), F13.element(b)
            assert emb(ea + eb) == emb(ea) + emb(eb)
            assert emb(ea * eb) == emb(ea) * emb(eb)
    assert emb.section_packed(emb(F13.element(7)).val) == 7


def test_tower_embedding():
    F9 = GF(3, 2)
    F81 = GF(3, 4)
    emb = embedding(F9, F81)
    x = F9.element([1, 1])
    y = F9.element([2, 1])
    assert emb(x * y) == emb(x) * emb(y)
    assert emb(x + y) == emb(x) + emb(y)
    assert emb.section_packed(emb(x).val) == x.val

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hermext.ideals import (
    Ideal,
    atkin_ideal,
    express_one,
    ideal_arith,
    ideal_from_generators,
    is_principal,
    principal_generator,
    squarefree_divisors,
)
from hermext.quadfield import AlgNum, field_params, units
from strategies import fields, nonzero_algints


@st.composite
def integral_ideals(draw, field=None, k: int = 2):
    F = field if field is not None else draw(fields)
    gens = [draw(nonzero_algints(F, 12)) for _ in range(k)]
    return Ideal.from_generators(F, gens)


@st.composite
def ideal_pairs(draw):
    F = draw(fields)
    return draw(integral_ideals(F)), draw(integral_ideals(F))


def test_from_generators_m5():
    F = field_params(5)
    A = ideal_from_generators([F(2, 0), F(1, 1)])
    assert (A.a, A.b, A.c, A.den) == (2, 1, 1, 1)
    assert A.norm() == 2
    assert ideal_from_generators([F(2, 0), F(5, 1)]) == A
    assert ideal_from_generators([F(1, 0)]) == Ideal.unit(F)


def test_from_generators_rejects_empty():
    F = field_params(5)
    with pytest.raises(ValueError):
        ideal_from_generators([])
    with pytest.raises(ValueError):
        ideal_from_generators([F(0, 0)], F)


def test_hnf_invariants_checked():
    F = field_params(5)
    for a, b, c in [(0, 0, 1), (2, 1, 2), (4, 1, 2), (2, 0, 0)]:
        with pytest.raises(ValueError, match="HNF"):
            Ideal(F, a, b, c)


def test_ideal_arith_examples():
    F5, F6 = field_params(5), field_params(6)
    A2 = atkin_ideal(F5, 2)
    r = ideal_arith(A2, A2.conj())
    assert A2 * A2.conj() == Ideal.principal(F5, 2)
    assert r["conjugate"] == A2 and r["norm"] == 2 and r["equal"]
    assert atkin_ideal(F6, 2) * atkin_ideal(F6, 3) == atkin_ideal(F6, 6)
    assert Ideal.unit(F5).norm() == 1
    with pytest.raises(ValueError, match="mixed fields"):
        ideal_arith(A2, Ideal.unit(F6))


def test_atkin_ideal_examples():
    F5, F6 = field_params(5), field_params(6)
    A = atkin_ideal(F5, 2)
    assert (A.a, A.b, A.c) == (2, 1, 1)
    assert atkin_ideal(F5, 1) == Ideal.unit(F5)
    A6 = atkin_ideal(F6, 6)
    assert A6.norm() == 6 and A6 * A6 == Ideal.principal(F6, 6)


@pytest.mark.parametrize("m, d", [(5, 3), (5, 4), (5, 20), (6, 0), (6, 5), (1, 4)])
def test_atkin_ideal_rejects(m, d):
    with pytest.raises(ValueError):
        atkin_ideal(field_params(m), d)


@pytest.mark.parametrize("m", [1, 2, 3, 5, 6, 7, 10, 14, 15, 21, 30, 105])
def test_atkin_ideals_multiply(m):
    F = field_params(m)
    ds = squarefree_divisors(F)
    for d in ds:
        A = atkin_ideal(F, d)
        assert A.norm() == d and A * A == Ideal.principal(F, d)
        for e in ds:
            if d * e in ds and all(d % p or e % p for p in range(2, d + 1)):
                assert A * atkin_ideal(F, e) == atkin_ideal(F, d * e)


def test_squarefree_divisors():
    assert squarefree_divisors(field_params(5)) == [1, 2, 5, 10]
    assert squarefree_divisors(field_params(3)) == [1, 3]
    assert squarefree_divisors(field_params(1)) == [1, 2]


def test_is_principal_examples():
    F = field_params(5)
    assert is_principal(atkin_ideal(F, 2)) is None
    g = principal_generator(Ideal.principal(F, 2))
    assert g == 2
    assert principal_generator(atkin_ideal(F, 2) ** 2) == 2
    assert is_principal(Ideal.unit(F)) == AlgNum.make(1, F)


def test_is_principal_fractional():
    F = field_params(6)
    I = Ideal.principal(F, AlgNum(F(1, 1), 3))
    g = is_principal(I)
    assert g is not None and Ideal.principal(F, g) == I


@given(st.data())
def test_principal_ideals_recognised(data):
    F = data.draw(fields)
    x = data.draw(nonzero_algints(F, 15))
    g = principal_generator(Ideal.principal(F, x))
    assert g is not None
    assert any(g == x * u for u in units(F))


@given(ideal_pairs())
def test_norm_multiplicative(pair):
    I, J = pair
    assert (I * J).norm() == I.norm() * J.norm()


@given(integral_ideals())
def test_ideal_times_conjugate(I):
    assert I * I.conj() == Ideal.principal(I.field, I.norm_int())
    assert I * I.inverse() == Ideal.unit(I.field)


@given(integral_ideals())
def test_hnf_canonical(I):
    a, b = I.basis()
    again = Ideal.from_generators(I.field, [a, b, a + b, a * I.field.omega])
    assert again == I
    assert Ideal.from_json(I.field, I.to_json()) == I


@given(ideal_pairs())
def test_product_commutative_and_contains(pair):
    I, J = pair
    P = I * J
    assert P == J * I
    assert P.is_subset(I) and P.is_subset(J)
    assert I.is_subset(I + J)


@given(integral_ideals())
def test_integral_part_is_module(I):
    # closed under multiplication by omega
    for x in I.basis():
        assert I.contains(x * I.field.omega)


def test_ideal_json():
    A = atkin_ideal(field_params(5), 2)
    assert A.to_json() == {"den": 1, "basis": [[2, 0], [1, 1]]}
    with pytest.raises(ValueError, match="malformed"):
        Ideal.from_json(A.field, {"basis": [[2, 0], [1, 1]]})
    with pytest.raises(ValueError, match="triangular"):
        Ideal.from_json(A.field, {"den": 1, "basis": [[2, 1], [1, 1]]})


def test_express_one():
    F = field_params(5)
    A = atkin_ideal(F, 2)
    Ainv = A.inverse()
    x, y = F(2, 0), F(1, 1)
    out = express_one(F, [(x, Ainv), (y, Ainv * 3)])
    assert all(I.contains(v) for v, I in zip(out, [Ainv, Ainv * 3]))
    assert x * out[0] + y * out[1] == AlgNum.make(1, F)
    with pytest.raises(ValueError):
        express_one(F, [(F(2, 0), Ideal.unit(F)), (F(4, 0), Ideal.unit(F))])


def test_inverse_and_division():
    F = field_params(23)
    I = Ideal.from_generators(F, [F(2, 0), F(0, 1)])
    assert (I / I) == Ideal.unit(F)
    assert (I ** -1) * I == Ideal.unit(F)
    assert (I ** 3).norm() == Fraction(8)

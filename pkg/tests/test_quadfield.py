from fractions import Fraction

import pytest
from hypothesis import given

from hermext.quadfield import (
    AlgInt,
    AlgNum,
    algint_from_json,
    elements_of_norm,
    field_params,
    normalize_unit,
    ring_ops,
    units,
)
from oracles import box_norm_elements, disc
from strategies import field_and_algints


@pytest.mark.parametrize(
    "m, d_K, omega_case",
    [(3, -3, True), (1, -4, False), (5, -20, False), (2, -8, False), (7, -7, True)],
)
def test_field_params(m, d_K, omega_case):
    F = field_params(m)
    assert F.disc == d_K == disc(m)
    assert F.omega_case is omega_case


@pytest.mark.parametrize("m", [0, -1, 4, 8, 12, 18])
def test_field_params_rejects_non_squarefree(m):
    with pytest.raises(ValueError, match="squarefree"):
        field_params(m)


def test_omega_complex_value():
    assert field_params(3).omega_complex() == pytest.approx(complex(0.5, 3**0.5 / 2))
    assert field_params(5).omega_complex() == pytest.approx(complex(0, 5**0.5))


@pytest.mark.parametrize("m", [1, 2, 3, 5, 7, 11, 15, 23])
def test_minimal_polynomial(m):
    F = field_params(m)
    w = F.omega
    if m % 4 == 3:
        assert w * w - w + (1 + m) // 4 == 0
    else:
        assert w * w + m == 0


def test_ring_ops_examples():
    F5, F3 = field_params(5), field_params(3)
    w = F5.omega
    assert (1 + w) * (1 - w) == 6
    assert F3.omega ** 2 == F3.omega - 1
    assert w.norm() == 5
    ops = ring_ops(F5(1, 1), F5(1, -1))
    assert ops["product"] == 6 and ops["sum"] == 2
    assert ops["conjugate"] == F5(1, -1) and ops["norm"] == 6 and ops["trace"] == 2


def test_mixed_fields_rejected():
    with pytest.raises(ValueError, match="mixed fields"):
        field_params(5)(1, 1) + field_params(6)(1, 1)
    with pytest.raises(ValueError, match="mixed fields"):
        ring_ops(field_params(5)(1, 1), field_params(6)(1, 1))


@pytest.mark.parametrize("m, count", [(5, 2), (1, 4), (3, 6), (2, 2), (7, 2), (15, 2)])
def test_units_match_box_search(m, count):
    F = field_params(m)
    got = {(u.a, u.b) for u in units(F)}
    assert got == box_norm_elements(m, 1, 3)
    assert len(got) == count


@pytest.mark.parametrize("m", [1, 2, 3, 5, 6, 7, 14, 23])
@pytest.mark.parametrize("N", [1, 2, 3, 4, 5, 6, 9, 12, 25, 30])
def test_elements_of_norm_match_box_search(m, N):
    got = {(x.a, x.b) for x in elements_of_norm(field_params(m), N)}
    assert got == box_norm_elements(m, N, 2 * N + 2)


@given(field_and_algints(2))
def test_norm_multiplicative(data):
    _, x, y = data
    assert (x * y).norm() == x.norm() * y.norm()


@given(field_and_algints(3, bound=20))
def test_ring_axioms(data):
    _, x, y, z = data
    assert x * (y + z) == x * y + x * z
    assert (x * y) * z == x * (y * z)
    assert x * y == y * x
    assert x - x == 0


@given(field_and_algints(1))
def test_conjugation_trace_norm(data):
    F, x = data
    assert x.conj().conj() == x
    assert x * x.conj() == x.norm()
    assert x + x.conj() == x.trace()
    assert x.norm() >= 0
    assert isinstance(x.trace(), int) and isinstance(x.norm(), int)


@given(field_and_algints(2, nonzero=True))
def test_divexact_inverts_multiplication(data):
    _, x, y = data
    assert (x * y).divexact(y) == x


def test_divexact_rejects_inexact():
    F = field_params(5)
    with pytest.raises(ArithmeticError):
        F(1, 1).divexact(F(2, 0))


@given(field_and_algints(2, nonzero=True))
def test_algnum_field_operations(data):
    _, x, y = data
    q = AlgNum(x) / AlgNum(y)
    assert q * AlgNum(y) == AlgNum(x)
    assert q.norm() == Fraction(x.norm(), y.norm())
    assert (q * q.inverse()) == AlgNum.make(1, x.field)


def test_algnum_reduced():
    F = field_params(5)
    q = AlgNum(F(4, 6), 8)
    assert (q.num, q.den) == (F(2, 3), 4)
    assert AlgNum(F(3, 0), 6) == AlgNum.make(Fraction(1, 2), F)
    for den in (0, -6):
        with pytest.raises(ValueError, match="denominator"):
            AlgNum(F(1, 0), den)


@given(field_and_algints(1, nonzero=True))
def test_normalize_unit_is_canonical(data):
    F, x = data
    canon = {normalize_unit(F, x * u) for u in units(F)}
    assert len(canon) == 1
    assert canon.pop() in {x * u for u in units(F)}


@given(field_and_algints(1))
def test_json_round_trip(data):
    F, x = data
    assert algint_from_json(F, x.to_json()) == x


@pytest.mark.parametrize("bad", [[1], [1, 2, 3], "12", [1.5, 2], [True, 0], None])
def test_json_rejects_malformed(bad):
    with pytest.raises(ValueError):
        algint_from_json(field_params(5), bad)


def test_algint_is_immutable():
    x = field_params(5)(1, 2)
    with pytest.raises(AttributeError):
        x.a = 3
    assert hash(x) == hash(AlgInt(field_params(5), 1, 2))

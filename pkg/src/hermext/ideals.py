"""Fractional ideals of O_K in Hermite normal form.

An ideal is (1/den) * (Z*a + Z*(b + c*omega)) with a, c > 0, c | a, c | b and
0 <= b < a.  The integral part is always an O_K-module.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .quadfield import (
    AlgInt,
    AlgNum,
    FieldParams,
    _check_same,
    elements_of_norm,
    is_squarefree,
    normalize_unit,
    xgcd,
)


def _reduce_lattice(vecs: Sequence[tuple[int, int]]):
    """Row-reduce integer vectors (x, y) spanning a rank-2 lattice.

    Returns ((a, ca), (xp, c, cp)) where (a, 0) and (xp, c) form a basis and
    ca, cp are the integer coefficient vectors expressing them in ``vecs``.
    """
    k = len(vecs)
    unit = [[1 if i == j else 0 for j in range(k)] for i in range(k)]
    a, ca = 0, [0] * k
    piv = None  # (x, y, coeffs)

    def add_zero(x, co):
        nonlocal a, ca
        if x == 0:
            return
        g, s, t = xgcd(a, x)
        ca = [s * u + t * v for u, v in zip(ca, co)]
        a = g

    for (x, y), co in zip(vecs, unit):
        if y == 0:
            add_zero(x, co)
            continue
        if piv is None:
            piv = (x, y, co)
            continue
        px, py, pc = piv
        g, s, t = xgcd(py, y)
        new = (s * px + t * x, g, [s * u + t * v for u, v in zip(pc, co)])
        # the complementary combination has zero second coordinate
        zx = (y // g) * px - (py // g) * x
        zc = [(y // g) * u - (py // g) * v for u, v in zip(pc, co)]
        piv = new
        add_zero(zx, zc)
    if piv is None or a == 0:
        raise ValueError("vectors do not span a full-rank lattice")
    px, py, pc = piv
    if py < 0:
        px, py, pc = -px, -py, [-v for v in pc]
    if a < 0:
        a, ca = -a, [-v for v in ca]
    q = px // a
    px -= q * a
    pc = [u - q * v for u, v in zip(pc, ca)]
    return (a, ca), (px, py, pc)


def _hnf(vecs: Iterable[tuple[int, int]]) -> tuple[int, int, int]:
    (a, _), (b, c, _) = _reduce_lattice(list(vecs))
    return a, b, c


def _as_nums(field: FieldParams, xs) -> list[AlgNum]:
    return [AlgNum.make(x, field) for x in xs]


@dataclass(frozen=True)
class Ideal:
    field: FieldParams
    a: int
    b: int
    c: int
    den: int = 1

    def __post_init__(self):
        a, b, c, den = self.a, self.b, self.c, self.den
        if a <= 0 or c <= 0 or den <= 0 or a % c or b % c:
            raise ValueError(f"not an HNF ideal basis: a={a} b={b} c={c} den={den}")
        b %= a
        g = math.gcd(c, den)
        if g > 1:
            a, b, c, den = a // g, b // g, c // g, den // g
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "den", den)

    # -- construction ------------------------------------------------------

    @classmethod
    def from_generators(cls, field: FieldParams, gens) -> Ideal:
        nums = [x for x in _as_nums(field, gens) if x]
        if not nums:
            raise ValueError("ideal needs at least one nonzero generator")
        for x in nums:
            _check_same(field, x.field)
        den = math.lcm(*(x.den for x in nums))
        vecs = []
        for x in nums:
            y = x.num * (den // x.den)
            yw = y * field.omega
            vecs += [(y.a, y.b), (yw.a, yw.b)]
        a, b, c = _hnf(vecs)
        return cls(field, a, b, c, den)

    @classmethod
    def unit(cls, field: FieldParams) -> Ideal:
        return cls(field, 1, 0, 1, 1)

    @classmethod
    def principal(cls, field: FieldParams, x) -> Ideal:
        return cls.from_generators(field, [x])

    # -- accessors ---------------------------------------------------------

    def basis(self) -> tuple[AlgNum, AlgNum]:
        F = self.field
        return AlgNum(F(self.a, 0), self.den), AlgNum(F(self.b, self.c), self.den)

    def is_integral(self) -> bool:
        return self.den == 1

    def norm(self) -> Fraction:
        return Fraction(self.a * self.c, self.den * self.den)

    def norm_int(self) -> int:
        n = self.norm()
        if n.denominator != 1:
            raise ArithmeticError("ideal is not integral")
        return n.numerator

    def contains(self, x) -> bool:
        x = AlgNum.make(x, self.field)
        num = x.num * self.den
        if num.a % x.den or num.b % x.den:
            return False
        X, Y = num.a // x.den, num.b // x.den
        if Y % self.c:
            return False
        q = Y // self.c
        return (X - q * self.b) % self.a == 0

    def is_subset(self, other: Ideal) -> bool:
        return all(other.contains(x) for x in self.basis())

    # -- arithmetic --------------------------------------------------------

    def __mul__(self, other):
        if isinstance(other, Ideal):
            _check_same(self.field, other.field)
            prods = [x * y for x in self.basis() for y in other.basis()]
            return Ideal.from_generators(self.field, prods)
        if isinstance(other, (int, Fraction, AlgInt, AlgNum)):
            if not other:
                raise ValueError("scaling by zero")
            return Ideal.from_generators(self.field, [x * other for x in self.basis()])
        return NotImplemented

    __rmul__ = __mul__

    def __add__(self, other: Ideal) -> Ideal:
        _check_same(self.field, other.field)
        return Ideal.from_generators(self.field, list(self.basis()) + list(other.basis()))

    def __pow__(self, k: int) -> Ideal:
        if k < 0:
            return self.inverse() ** (-k)
        result = Ideal.unit(self.field)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conj(self) -> Ideal:
        return Ideal.from_generators(self.field, [x.conj() for x in self.basis()])

    def inverse(self) -> Ideal:
        return self.conj() * (1 / self.norm())

    def __truediv__(self, other: Ideal) -> Ideal:
        return self * other.inverse()

    def primitive_part(self) -> tuple[Fraction, Ideal]:
        """(r, J) with self = r*J, r rational and J integral with content 1."""
        r = Fraction(self.c, self.den)
        return r, Ideal(self.field, self.a // self.c, self.b // self.c, 1, 1)

    def to_json(self) -> dict:
        return {"den": self.den, "basis": [[self.a, 0], [self.b, self.c]]}

    @classmethod
    def from_json(cls, field: FieldParams, data) -> Ideal:
        try:
            den = data["den"]
            (a, z), (b, c) = data["basis"]
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"malformed ideal JSON: {data!r}") from exc
        if z != 0:
            raise ValueError("ideal basis must be lower triangular: basis[0][1] != 0")
        return cls(field, a, b, c, den)

    def __repr__(self):
        s = f"Ideal(m={self.field.m}: [{self.a}, {self.b}+{self.c}w]"
        return s + (f"/{self.den})" if self.den != 1 else ")")


def ideal_from_generators(gens: Sequence[AlgInt], field: FieldParams | None = None) -> Ideal:
    if field is None:
        if not gens:
            raise ValueError("empty generator list")
        field = gens[0].field
    return Ideal.from_generators(field, gens)


def ideal_arith(I: Ideal, J: Ideal) -> dict[str, object]:
    _check_same(I.field, J.field)
    return {
        "product": I * J,
        "conjugate": I.conj(),
        "norm": I.norm(),
        "equal": I == J,
    }


def squarefree_divisors(field: FieldParams) -> list[int]:
    """Positive squarefree divisors d of d_K, sorted."""
    D = -field.disc
    return [d for d in range(1, D + 1) if D % d == 0 and is_squarefree(d)]


def atkin_ideal(field: FieldParams, d: int) -> Ideal:
    """A_d = O_K*d + O_K*(m + sqrt(-m)), the ideal of norm d with A_d^2 = d*O_K."""
    if not isinstance(d, int) or d < 1 or not is_squarefree(d) or field.disc % d:
        raise ValueError(f"d={d!r} is not a squarefree divisor of d_K={field.disc}")
    A = Ideal.from_generators(field, [field(d, 0), field.sqrt_neg_m + field.m])
    if A.norm() != d or A * A != Ideal.principal(field, d):
        raise AssertionError(f"A_{d} failed its norm/square check for m={field.m}")
    return A


def is_principal(I: Ideal) -> AlgNum | None:
    """A generator of I (unit-normalized), or None when I is not principal.

    Any x in the integral ideal J with N(x) = N(J) generates J, so a complete
    enumeration of elements of that norm decides principality.
    """
    if not isinstance(I, Ideal):
        raise TypeError("expected an Ideal")
    F = I.field
    J = I * I.den
    N = J.norm_int()
    for x in elements_of_norm(F, N):
        if J.contains(x):
            return AlgNum(normalize_unit(F, x), I.den)
    return None


def principal_generator(I: Ideal) -> AlgInt | None:
    """Integral-ideal variant of :func:`is_principal` returning an AlgInt."""
    if not I.is_integral():
        raise ValueError("expected an integral ideal")
    g = is_principal(I)
    return None if g is None else g.num


def express_one(field: FieldParams, terms: Sequence[tuple[AlgNum, Ideal]]):
    """Find y_k in ideal_k with sum x_k*y_k = 1, given sum x_k*ideal_k = O_K.

    ``terms`` is a list of (x_k, ideal_k).  Returns the list of y_k or raises
    ValueError if 1 is not in the sum.
    """
    gens = []
    for x, I in terms:
        for y in I.basis():
            gens.append((x, y))
    prods = [AlgNum.make(x, field) * y for x, y in gens]
    den = math.lcm(*(p.den for p in prods))
    vecs = []
    for p in prods:
        q = p.num * (den // p.den)
        vecs.append((q.a, q.b))
    (a, ca), (b, c, cb) = _reduce_lattice(vecs)
    # target: 1 = den/den, i.e. vector (den, 0)
    if den % a:
        raise ValueError("1 is not in the ideal sum")
    r = den // a
    coeffs = [r * v for v in ca]
    out = []
    i = 0
    for _, I in terms:
        y0, y1 = I.basis()
        out.append(y0 * coeffs[i] + y1 * coeffs[i + 1])
        i += 2
    total = sum((AlgNum.make(x, field) * y for (x, _), y in zip(terms, out)), AlgNum.make(0, field))
    if total != AlgNum.make(1, field):
        raise AssertionError("express_one produced a wrong combination")
    return out

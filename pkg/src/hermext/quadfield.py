"""Exact arithmetic in K = Q(sqrt(-m)) and its ring of integers Z + Z*omega.

Every element is stored in the (1, omega) basis.  omega satisfies
omega^2 = t*omega - q with t = trace(omega) and q = norm(omega):

    m = 3 (mod 4):   omega = (1 + sqrt(-m))/2,  t = 1, q = (1 + m)/4
    otherwise:       omega = sqrt(-m),          t = 0, q = m
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, s, t) with s*a + t*b = g = gcd(a, b) >= 0."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        return -a, -s0, -t0
    return a, s0, t0


def is_squarefree(k: int) -> bool:
    if k < 1:
        return False
    p = 2
    while p * p <= k:
        if k % (p * p) == 0:
            return False
        p += 1
    return True


def prime_divisors(k: int) -> list[int]:
    k = abs(k)
    out = []
    p = 2
    while p * p <= k:
        if k % p == 0:
            out.append(p)
            while k % p == 0:
                k //= p
        p += 1
    if k > 1:
        out.append(k)
    return out


@dataclass(frozen=True)
class FieldParams:
    m: int

    def __post_init__(self):
        if not isinstance(self.m, int) or not is_squarefree(self.m):
            raise ValueError(f"m={self.m!r} is not a squarefree positive integer")

    @property
    def omega_case(self) -> bool:
        """True when omega = (1 + sqrt(-m))/2, i.e. m = 3 (mod 4)."""
        return self.m % 4 == 3

    @property
    def disc(self) -> int:
        return -self.m if self.omega_case else -4 * self.m

    @property
    def trace_omega(self) -> int:
        return 1 if self.omega_case else 0

    @property
    def norm_omega(self) -> int:
        return (1 + self.m) // 4 if self.omega_case else self.m

    @property
    def omega(self) -> AlgInt:
        return AlgInt(self, 0, 1)

    @property
    def sqrt_neg_m(self) -> AlgInt:
        """sqrt(-m) in the (1, omega) basis."""
        return AlgInt(self, -1, 2) if self.omega_case else AlgInt(self, 0, 1)

    def __call__(self, a: int = 0, b: int = 0) -> AlgInt:
        return AlgInt(self, a, b)

    def omega_complex(self) -> complex:
        if self.omega_case:
            return complex(0.5, math.sqrt(self.m) / 2)
        return complex(0.0, math.sqrt(self.m))

    def __repr__(self):
        return f"FieldParams(m={self.m})"


@lru_cache(maxsize=None)
def field_params(m: int) -> FieldParams:
    return FieldParams(m)


def _check_same(x: FieldParams, y: FieldParams) -> None:
    if x.m != y.m:
        raise ValueError(f"mixed fields: m={x.m} and m={y.m}")


@dataclass(frozen=True, slots=True)
class AlgInt:
    """a + b*omega with integer coordinates."""

    field: FieldParams
    a: int
    b: int

    def _coerce(self, other) -> AlgInt | None:
        if isinstance(other, AlgInt):
            _check_same(self.field, other.field)
            return other
        if isinstance(other, int):
            return AlgInt(self.field, other, 0)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return AlgInt(self.field, self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return AlgInt(self.field, -self.a, -self.b)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return AlgInt(self.field, self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, int):
            return AlgInt(self.field, self.a * other, self.b * other)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        t, q = self.field.trace_omega, self.field.norm_omega
        bd = self.b * o.b
        return AlgInt(self.field, self.a * o.a - q * bd, self.a * o.b + self.b * o.a + t * bd)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not integral")
        result = AlgInt(self.field, 1, 0)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            return self.b == 0 and self.a == other
        if isinstance(other, AlgInt):
            return self.field.m == other.field.m and self.a == other.a and self.b == other.b
        return NotImplemented

    def __hash__(self):
        return hash((self.field.m, self.a, self.b))

    def __bool__(self):
        return self.a != 0 or self.b != 0

    def conj(self) -> AlgInt:
        return AlgInt(self.field, self.a + self.b * self.field.trace_omega, -self.b)

    def norm(self) -> int:
        t, q = self.field.trace_omega, self.field.norm_omega
        return self.a * self.a + t * self.a * self.b + q * self.b * self.b

    def trace(self) -> int:
        return 2 * self.a + self.field.trace_omega * self.b

    def content(self) -> int:
        return math.gcd(self.a, self.b)

    def divides(self, other: AlgInt) -> bool:
        if not self:
            return not other
        p = other * self.conj()
        n = self.norm()
        return p.a % n == 0 and p.b % n == 0

    def divexact(self, other) -> AlgInt:
        """self / other, raising ArithmeticError if the quotient is not integral."""
        if isinstance(other, int):
            if other == 0 or self.a % other or self.b % other:
                raise ArithmeticError(f"{self} not divisible by {other}")
            return AlgInt(self.field, self.a // other, self.b // other)
        if not other:
            raise ZeroDivisionError("division by zero")
        p = self * other.conj()
        n = other.norm()
        if p.a % n or p.b % n:
            raise ArithmeticError(f"{self} not divisible by {other}")
        return AlgInt(self.field, p.a // n, p.b // n)

    def to_complex(self) -> complex:
        return self.a + self.b * self.field.omega_complex()

    def real2(self) -> int:
        """Twice the real part (an integer)."""
        return 2 * self.a + self.field.trace_omega * self.b

    def to_json(self) -> list[int]:
        return [self.a, self.b]

    def __repr__(self):
        return f"AlgInt({self.a}, {self.b}; m={self.field.m})"

    def __str__(self):
        w = "w"
        if self.b == 0:
            return str(self.a)
        if self.a == 0:
            return f"{self.b}{w}" if self.b not in (1, -1) else ("-" if self.b < 0 else "") + w
        return f"{self.a}{self.b:+d}{w}"


@dataclass(frozen=True, slots=True)
class AlgNum:
    """num/den with num in O_K and den a positive integer, kept reduced."""

    num: AlgInt
    den: int = 1

    def __post_init__(self):
        if self.den <= 0:
            raise ValueError("denominator must be positive")
        g = math.gcd(math.gcd(self.num.a, self.num.b), self.den)
        if g != 1:
            object.__setattr__(self, "num", AlgInt(self.num.field, self.num.a // g, self.num.b // g))
            object.__setattr__(self, "den", self.den // g)

    @property
    def field(self) -> FieldParams:
        return self.num.field

    @classmethod
    def make(cls, x, field: FieldParams | None = None) -> AlgNum:
        if isinstance(x, AlgNum):
            return x
        if isinstance(x, AlgInt):
            return cls(x, 1)
        if isinstance(x, Fraction):
            return cls(AlgInt(field, x.numerator, 0), x.denominator)
        if isinstance(x, int):
            return cls(AlgInt(field, x, 0), 1)
        raise TypeError(f"cannot convert {type(x).__name__} to AlgNum")

    def _co(self, other) -> AlgNum | None:
        if isinstance(other, (AlgNum, AlgInt, int, Fraction)):
            return AlgNum.make(other, self.field)
        return None

    def __add__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        return AlgNum(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return AlgNum(-self.num, self.den)

    def __sub__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        return AlgNum(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> AlgNum:
        if not self.num:
            raise ZeroDivisionError("inverse of zero")
        n = self.num.norm()
        return AlgNum(self.num.conj() * self.den, n)

    def __truediv__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __eq__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __bool__(self):
        return bool(self.num)

    def conj(self) -> AlgNum:
        return AlgNum(self.num.conj(), self.den)

    def norm(self) -> Fraction:
        return Fraction(self.num.norm(), self.den * self.den)

    def is_integral(self) -> bool:
        return self.den == 1

    def to_algint(self) -> AlgInt:
        if self.den != 1:
            raise ArithmeticError(f"{self} is not integral")
        return self.num

    def is_rational(self) -> bool:
        return self.num.b == 0

    def to_fraction(self) -> Fraction:
        if self.num.b:
            raise ArithmeticError(f"{self} is not rational")
        return Fraction(self.num.a, self.den)

    def coords(self) -> tuple[Fraction, Fraction]:
        """(x, y) with self = x + y*omega."""
        return Fraction(self.num.a, self.den), Fraction(self.num.b, self.den)

    def to_complex(self) -> complex:
        return self.num.to_complex() / self.den

    def __repr__(self):
        return f"AlgNum({self.num!r}/{self.den})"


def elements_of_norm(field: FieldParams, N: int) -> list[AlgInt]:
    """All x in O_K with norm(x) = N.

    Uses 4N = (2a + t*b)^2 + |d_K|*b^2, so |b| <= sqrt(4N/|d_K|).
    """
    if N < 0:
        return []
    if N == 0:
        return [field(0, 0)]
    D = -field.disc
    t = field.trace_omega
    out = []
    bmax = math.isqrt(4 * N // D)
    for b in range(-bmax, bmax + 1):
        r = 4 * N - D * b * b
        if r < 0:
            continue
        s = math.isqrt(r)
        if s * s != r:
            continue
        for sgn in {s, -s}:
            # 2a + t*b = sgn
            if (sgn - t * b) % 2 == 0:
                out.append(field((sgn - t * b) // 2, b))
    return sorted(set(out), key=lambda x: (x.a, x.b))


@lru_cache(maxsize=None)
def _units(m: int) -> tuple[AlgInt, ...]:
    return tuple(elements_of_norm(field_params(m), 1))


def units(field: FieldParams) -> list[AlgInt]:
    return list(_units(field.m))


def normalize_unit(field: FieldParams, x: AlgInt) -> AlgInt:
    """Unit multiple of x with maximal real part, then maximal imaginary part."""
    return max((x * e for e in units(field)), key=lambda y: (y.real2(), y.b))


def ring_ops(x: AlgInt, y: AlgInt) -> dict[str, object]:
    _check_same(x.field, y.field)
    return {
        "sum": x + y,
        "product": x * y,
        "conjugate": x.conj(),
        "norm": x.norm(),
        "trace": x.trace(),
    }


def algint_from_json(field: FieldParams, data) -> AlgInt:
    if (
        not isinstance(data, list)
        or len(data) != 2
        or not all(isinstance(v, int) and not isinstance(v, bool) for v in data)
    ):
        raise ValueError(f"expected [a, b] integer pair, got {data!r}")
    return AlgInt(field, data[0], data[1])


def nth_roots_in_field(field: FieldParams, x: AlgInt, n: int) -> list[AlgInt]:
    """All y in O_K with y^n = x (O_K is integrally closed, so roots in K are integral)."""
    if not x:
        return [field(0, 0)]
    N = x.norm()
    r = round(N ** (1.0 / n))
    for cand in (r - 1, r, r + 1):
        if cand > 0 and cand**n == N:
            return [y for y in elements_of_norm(field, cand) if y**n == x]
    return []


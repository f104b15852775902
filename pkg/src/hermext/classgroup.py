"""Class groups of imaginary-quadratic fields via reduced binary quadratic forms."""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from functools import lru_cache

from .ideals import Ideal
from .quadfield import FieldParams, field_params, prime_divisors, xgcd


@dataclass(frozen=True, order=True)
class QuadForm:
    a: int
    b: int
    c: int

    @property
    def disc(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def is_reduced(self) -> bool:
        a, b, c = self.a, self.b, self.c
        if not (abs(b) <= a <= c):
            return False
        if (abs(b) == a or a == c) and b < 0:
            return False
        return True

    def reduced(self) -> QuadForm:
        a, b, c = self.a, self.b, self.c
        if a <= 0 or self.disc >= 0:
            raise ValueError(f"{self} is not positive definite")
        while True:
            if not (-a < b <= a):
                r = (a - b) // (2 * a)
                b, c = b + 2 * r * a, a * r * r + b * r + c
            if a > c or (a == c and b < 0):
                a, b, c = c, -b, a
                continue
            return QuadForm(a, b, c)

    def inverse(self) -> QuadForm:
        return QuadForm(self.a, -self.b, self.c).reduced()

    def as_list(self) -> list[int]:
        return [self.a, self.b, self.c]

    def __str__(self):
        return f"({self.a},{self.b},{self.c})"


def principal_form(D: int) -> QuadForm:
    if D % 4 == 0:
        return QuadForm(1, 0, -D // 4)
    return QuadForm(1, 1, (1 - D) // 4)


def reduced_forms(field: FieldParams | int) -> list[QuadForm]:
    """All reduced primitive forms of discriminant d_K (one per class)."""
    D = field.disc if isinstance(field, FieldParams) else field
    out = []
    amax = math.isqrt(-D // 3)
    for a in range(1, amax + 1):
        for b in range(-a + 1, a + 1):
            if (b - D) % 2:
                continue
            num = b * b - D
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a or (a == c and b < 0):
                continue
            if math.gcd(math.gcd(a, b), c) != 1:
                continue
            out.append(QuadForm(a, b, c))
    return out


def compose(f: QuadForm, g: QuadForm) -> QuadForm:
    """Gauss/Dirichlet composition followed by reduction."""
    if f.disc != g.disc:
        raise ValueError(f"discriminant mismatch: {f.disc} vs {g.disc}")
    if f.a > g.a:
        f, g = g, f
    a1, b1, c1 = f.a, f.b, f.c
    a2, b2, c2 = g.a, g.b, g.c
    s = (b1 + b2) // 2
    n = b2 - s
    if a2 % a1 == 0:
        y1, d = 0, a1
    else:
        d, u, _ = xgcd(a2, a1)
        y1 = u
    if s % d == 0:
        y2, x2, d1 = -1, 0, d
    else:
        d1, u, v = xgcd(s, d)
        x2, y2 = u, -v
    v1, v2 = a1 // d1, a2 // d1
    r = (y1 * y2 * n - x2 * c2) % v1
    b3 = b2 + 2 * v2 * r
    a3 = v1 * v2
    c3 = (c2 * d1 + r * (b2 + v2 * r)) // v1
    out = QuadForm(a3, b3, c3)
    if out.disc != f.disc:
        raise AssertionError(f"composition of {f} and {g} broke the discriminant")
    return out.reduced()


def form_power(f: QuadForm, k: int) -> QuadForm:
    result = principal_form(f.disc)
    base = f if k >= 0 else f.inverse()
    k = abs(k)
    while k:
        if k & 1:
            result = compose(result, base)
        base = compose(base, base)
        k >>= 1
    return result


def _invariants_from_torsion_counts(h: int, torsion_count) -> list[int]:
    """Invariant factors d1 | d2 | ... of an abelian group of order h.

    For a p-group with cyclic factors p^e_i, |G[p^j]| = p^(sum min(j, e_i)),
    so the number of factors with e_i >= j is log_p(|G[p^j]| / |G[p^(j-1)]|).
    """
    prime_parts: dict[int, list[int]] = {}
    for p in prime_divisors(h):
        e = 0
        hh = h
        while hh % p == 0:
            hh //= p
            e += 1
        ge = []  # ge[j-1] = number of factors with exponent >= j
        prev = 1
        for j in range(1, e + 1):
            cnt = torsion_count(p**j)
            ratio = cnt // prev
            k = 0
            while ratio > 1:
                ratio //= p
                k += 1
            ge.append(k)
            prev = cnt
        exps = []
        for j in range(len(ge)):
            nxt = ge[j + 1] if j + 1 < len(ge) else 0
            exps += [j + 1] * (ge[j] - nxt)
        prime_parts[p] = sorted(exps, reverse=True)
    rank = max((len(v) for v in prime_parts.values()), default=0)
    inv = []
    for i in range(rank):
        d = 1
        for p, exps in prime_parts.items():
            if i < len(exps):
                d *= p ** exps[i]
        inv.append(d)
    return sorted(inv)


@dataclass(frozen=True)
class ClassGroup:
    field: FieldParams
    classes: tuple[QuadForm, ...]
    structure: tuple[int, ...]
    _index: dict = dc_field(repr=False, compare=False, hash=False)

    @property
    def h(self) -> int:
        return len(self.classes)

    @property
    def identity(self) -> int:
        return self._index[principal_form(self.field.disc)]

    def index(self, f: QuadForm) -> int:
        return self._index[f.reduced()]

    def mul(self, i: int, j: int) -> int:
        return self.index(compose(self.classes[i], self.classes[j]))

    def inv(self, i: int) -> int:
        return self.index(self.classes[i].inverse())

    def pow(self, i: int, k: int) -> int:
        return self.index(form_power(self.classes[i], k))

    def order(self, i: int) -> int:
        k, x = 1, i
        while x != self.identity:
            x = self.mul(x, i)
            k += 1
        return k

    def class_of_ideal(self, I: Ideal) -> int:
        return self.index(form_of_ideal(I))

    def ideal_of_class(self, i: int) -> Ideal:
        return ideal_of_form(self.field, self.classes[i])

    def to_json(self) -> dict:
        return {
            "h": self.h,
            "structure": list(self.structure),
            "forms": [f.as_list() for f in self.classes],
        }


@lru_cache(maxsize=None)
def _class_group(m: int) -> ClassGroup:
    F = field_params(m)
    forms = reduced_forms(F)
    index = {f: i for i, f in enumerate(forms)}
    e = principal_form(F.disc)

    def torsion_count(k: int) -> int:
        return sum(1 for f in forms if form_power(f, k) == e)

    structure = _invariants_from_torsion_counts(len(forms), torsion_count)
    return ClassGroup(F, tuple(forms), tuple(structure), index)


def class_group(field: FieldParams | int) -> ClassGroup:
    m = field.m if isinstance(field, FieldParams) else field
    return _class_group(m)


def torsion_subgroup(G: ClassGroup, n: int) -> list[int]:
    if n < 1:
        raise ValueError("n must be a positive integer")
    e = G.identity
    return [i for i in range(G.h) if G.pow(i, n) == e]


def ideal_of_form(field: FieldParams, f: QuadForm) -> Ideal:
    """Z*a + Z*(-b + sqrt(d_K))/2, written in the (1, omega) basis."""
    if f.disc != field.disc:
        raise ValueError(f"form {f} has discriminant {f.disc}, field has {field.disc}")
    t = field.trace_omega
    # (-b + sqrt(d_K))/2 = (-b - t)/2 + omega
    return Ideal(field, f.a, (-f.b - t) // 2, 1, 1)


def form_of_ideal(I: Ideal) -> QuadForm:
    """Reduced form attached to the class of the (fractional) ideal I."""
    _, J = I.primitive_part()
    F = I.field
    A, B = J.a, J.b
    b = -2 * B - F.trace_omega
    num = b * b - F.disc
    if num % (4 * A):
        raise AssertionError(f"{I} does not give an integral form")
    return QuadForm(A, b, num // (4 * A)).reduced()


def class_of_ideal(G: ClassGroup, I: Ideal) -> int:
    return G.class_of_ideal(I)


def ideal_of_class(G: ClassGroup, i: int) -> Ideal:
    return G.ideal_of_class(i)

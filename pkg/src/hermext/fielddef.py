"""Closed-form fields of definition and their ramification support."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .classgroup import ClassGroup, class_group
from .quadfield import FieldParams, prime_divisors

UNKNOWN = "unknown: requires the Hilbert class field"


@dataclass(frozen=True)
class FieldDescription:
    """Q or K adjoined a root of unity zeta_r and square roots sqrt(p).

    ``unknown`` marks the cases with no closed form; the other fields are then
    meaningless.
    """

    over_k: bool = False
    root_order: int = 1
    radicals: tuple[int, ...] = ()
    unknown: bool = False
    m: int | None = None

    def generators(self) -> list[str]:
        if self.unknown:
            return [UNKNOWN]
        gens = []
        if self.over_k:
            gens.append(f"sqrt(-{self.m})")
        if self.root_order > 2:
            gens.append(f"zeta_{self.root_order}")
        gens += [f"sqrt({p})" for p in self.radicals]
        return gens

    def __str__(self):
        if self.unknown:
            return UNKNOWN
        base = "K" if self.over_k else "Q"
        rest = ([f"zeta_{self.root_order}"] if self.root_order > 2 else []) + [
            f"sqrt({p})" for p in self.radicals
        ]
        if not rest:
            return base
        return f"{base}[{', '.join(rest)}]" if self.over_k else f"Q({', '.join(rest)})"

    def to_json(self) -> dict:
        return {"generators": self.generators(), "unknown": self.unknown}


def predicted_field(field: FieldParams, n: int, G: ClassGroup | None = None) -> FieldDescription:
    if n < 1:
        raise ValueError("n must be a positive integer")
    G = class_group(field) if G is None else G
    D = field.disc
    ram = tuple(prime_divisors(-D))
    if n == 1:
        return FieldDescription(m=field.m)
    if D == -4:
        return FieldDescription(over_k=True, root_order=4 * n, m=field.m)
    if D == -3:
        return FieldDescription(over_k=True, root_order=6 * n, m=field.m)
    if n == 2:
        return FieldDescription(root_order=4, radicals=ram, m=field.m)
    if math.gcd(G.h, n) == 1:
        return FieldDescription(over_k=True, root_order=2 * n, m=field.m)
    if all(x == 2 for x in G.structure):
        radicals = ram if n % 2 == 0 else ()
        return FieldDescription(over_k=True, root_order=2 * n, radicals=radicals, m=field.m)
    return FieldDescription(unknown=True, m=field.m)


def _cyclotomic_primes(r: int) -> set[int]:
    # Q(zeta_r) = Q(zeta_{r/2}) for r = 2 mod 4
    if r % 4 == 2:
        r //= 2
    return set(prime_divisors(r)) if r > 1 else set()


@dataclass(frozen=True)
class SupportReport:
    generators: tuple[str, ...]
    support: tuple[int, ...]
    allowed: tuple[int, ...]
    ok: bool

    def to_json(self) -> dict:
        return {
            "generators": list(self.generators),
            "support": list(self.support),
            "allowed": list(self.allowed),
            "ok": self.ok,
        }


def ramification_support(desc: FieldDescription, field: FieldParams, n: int) -> SupportReport:
    """Primes that may ramify in the described field versus primes(n * d_K)."""
    if desc.unknown:
        raise ValueError("no closed-form field description for this (m, n)")
    support = _cyclotomic_primes(desc.root_order)
    for p in desc.radicals:
        support |= {p, 2}
    if desc.over_k:
        support |= set(prime_divisors(-field.disc))
    allowed = set(prime_divisors(n * -field.disc))
    return SupportReport(
        tuple(desc.generators()),
        tuple(sorted(support)),
        tuple(sorted(allowed)),
        support <= allowed,
    )

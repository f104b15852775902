"""Independent brute-force oracles used to freeze expected values."""

from __future__ import annotations

import math


def squarefree(k: int) -> bool:
    return all(k % (p * p) for p in range(2, math.isqrt(k) + 1))


def disc(m: int) -> int:
    return -m if m % 4 == 3 else -4 * m


def brute_reduced_forms(D: int) -> list[tuple[int, int, int]]:
    """Triple loop over (a, b, c) with b^2 - 4ac = D, keeping reduced primitive forms."""
    out = []
    bound = -D  # a <= c and 4ac - b^2 = |D| force a <= |D|
    for a in range(1, bound + 1):
        if 3 * a * a > -D:
            break
        for c in range(a, bound + 1):
            for b in range(-a + 1, a + 1):
                if b * b - 4 * a * c != D:
                    continue
                if a == c and b < 0:
                    continue
                if math.gcd(math.gcd(a, b), c) == 1:
                    out.append((a, b, c))
    return sorted(out)


def kronecker(D: int, k: int) -> int:
    """Kronecker symbol (D/k) for k >= 1."""
    result = 1
    p = 2
    while k > 1:
        if p * p > k:
            p = k
        while k % p == 0:
            k //= p
            if p == 2:
                if D % 2 == 0:
                    return 0
                result *= 1 if D % 8 in (1, 7) else -1
            else:
                r = pow(D % p, (p - 1) // 2, p)
                if r == 0:
                    return 0
                result *= 1 if r == 1 else -1
        p += 1
    return result


def analytic_class_number(D: int) -> int:
    """Dirichlet: h = -(w / (2|D|)) * sum_{k<|D|} (D/k) k."""
    w = {-3: 6, -4: 4}.get(D, 2)
    s = sum(kronecker(D, k) * k for k in range(1, -D))
    h, r = divmod(-w * s, 2 * -D)
    assert r == 0
    return h


def box_norm_elements(m: int, N: int, box: int) -> set[tuple[int, int]]:
    """(a, b) with N(a + b*omega) = N by box search."""
    out = set()
    for a in range(-box, box + 1):
        for b in range(-box, box + 1):
            if m % 4 == 3:
                q = (1 + m) // 4
                n = a * a + a * b + q * b * b
            else:
                n = a * a + m * b * b
            if n == N:
                out.add((a, b))
    return out


def nu(m: int) -> int:
    D = -disc(m)
    return sum(1 for p in range(2, D + 1) if D % p == 0 and all(p % q for q in range(2, math.isqrt(p) + 1)))

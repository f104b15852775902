"""Scaled matrices M = (1/u) L in SU(n, n; C) with L over O_K.

u itself is never stored.  A ScaledMatrix keeps L, ell = u*conj(u) and
w = u^n, so it pins M down up to an n-th root of unity.  For n = 2 that
ambiguity is the sign, which lies in the Hermitian modular group anyway.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from . import matrix as mx
from .classgroup import ClassGroup, QuadForm, class_group
from .ideals import Ideal, is_principal
from .quadfield import AlgInt, AlgNum, FieldParams, _check_same, algint_from_json, field_params, units


class ScaledMatrixError(ValueError):
    pass


@dataclass(frozen=True)
class ScaledMatrix:
    L: mx.Matrix
    n: int
    ell: int
    w: AlgInt

    @property
    def field(self) -> FieldParams:
        return self.w.field

    @property
    def size(self) -> int:
        return 2 * self.n

    def blocks(self):
        return mx.blocks(self.L)

    def __matmul__(self, other: ScaledMatrix) -> ScaledMatrix:
        return mat_mul(self, other)

    def inverse(self) -> ScaledMatrix:
        return mat_inv(self)

    def __pow__(self, k: int) -> ScaledMatrix:
        if k < 0:
            return mat_inv(self) ** (-k)
        result = identity_scaled(self.field, self.n)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def __neg__(self) -> ScaledMatrix:
        return ScaledMatrix(mx.neg(self.L), self.n, self.ell, self.w)

    def content_ideal(self) -> Ideal:
        return content_ideal(self)

    def to_complex(self):
        """Numerical matrix (principal branch u = w^(1/n))."""
        import numpy as np

        u = complex(self.w.to_complex()) ** (1.0 / self.n)
        return np.array([[x.to_complex() for x in r] for r in self.L], dtype=complex) / u

    def to_json(self) -> dict:
        return {
            "m": self.field.m,
            "n": self.n,
            "ell": self.ell,
            "w": self.w.to_json(),
            "L": mx.to_json(self.L),
        }


def _unitary_defect(L: mx.Matrix, n: int, ell: int) -> bool:
    F = L[0][0].field
    J = mx.J_matrix(F, n)
    lhs = mx.mul(mx.mul(mx.conj_t(L), J), L)
    return lhs != mx.smul(ell, J)


def make_scaled(L, n: int, ell: int, w: AlgInt, check: bool = True) -> ScaledMatrix:
    """Build the canonical ScaledMatrix for (1/u) L with u*conj(u) = ell, u^n = w."""
    L = mx.as_matrix(L)
    if len(L) != 2 * n or any(len(r) != 2 * n for r in L):
        raise ScaledMatrixError(f"L must be {2 * n}x{2 * n}")
    if ell <= 0:
        raise ScaledMatrixError("ell must be a positive integer")
    F = w.field
    for x in mx.entries(L):
        _check_same(F, x.field)
    r = mx.integer_content(L)
    if r > 1:
        if ell % (r * r):
            raise ScaledMatrixError(f"content {r}: ell={ell} not divisible by r^2")
        try:
            w = w.divexact(r**n)
        except ArithmeticError:
            raise ScaledMatrixError(f"content {r}: w={w} not divisible by r^n") from None
        L = tuple(tuple(x.divexact(r) for x in row) for row in L)
        ell //= r * r
    if check:
        if _unitary_defect(L, n, ell):
            raise ScaledMatrixError("unitary relation conj(L)^T J L = ell*J fails")
        if mx.det(L) != w * w:
            raise ScaledMatrixError("determinant relation det L = w^2 fails")
        if w.norm() != ell**n:
            raise ScaledMatrixError("norm relation w*conj(w) = ell^n fails")
    return ScaledMatrix(L, n, ell, w)


def scaled_from_json(data) -> ScaledMatrix:
    """Parse {"m", "n", "ell", "w", "L"}; errors name the offending field."""
    if not isinstance(data, dict):
        raise ValueError("ScaledMatrix JSON must be an object")
    for key in ("m", "n", "ell", "w", "L"):
        if key not in data:
            raise ValueError(f"missing field {key!r}")
    for key in ("m", "n", "ell"):
        v = data[key]
        if not isinstance(v, int) or isinstance(v, bool) or v < 1:
            raise ValueError(f"field {key!r} must be a positive integer, got {v!r}")
    try:
        F = field_params(data["m"])
    except ValueError as exc:
        raise ValueError(f"field 'm': {exc}") from None
    n = data["n"]
    try:
        w = algint_from_json(F, data["w"])
    except ValueError as exc:
        raise ValueError(f"field 'w': {exc}") from None
    rows = data["L"]
    if not isinstance(rows, list) or len(rows) != 2 * n:
        raise ValueError(f"field 'L' must have {2 * n} rows")
    L = []
    for i, r in enumerate(rows):
        if not isinstance(r, list) or len(r) != 2 * n:
            raise ValueError(f"field 'L' row {i} must have {2 * n} entries")
        try:
            L.append(tuple(algint_from_json(F, x) for x in r))
        except ValueError as exc:
            raise ValueError(f"field 'L' row {i}: {exc}") from None
    try:
        return make_scaled(L, n, data["ell"], w)
    except ScaledMatrixError as exc:
        raise ValueError(f"field 'L': {exc}") from None


def identity_scaled(field: FieldParams, n: int) -> ScaledMatrix:
    return ScaledMatrix(mx.identity(field, 2 * n), n, 1, field(1, 0))


def content_ideal(M: ScaledMatrix) -> Ideal:
    return Ideal.from_generators(M.field, list(mx.entries(M.L)))


def mat_mul(M: ScaledMatrix, N: ScaledMatrix) -> ScaledMatrix:
    _check_same(M.field, N.field)
    if M.n != N.n:
        raise ScaledMatrixError(f"degree mismatch: {M.n} vs {N.n}")
    return make_scaled(mx.mul(M.L, N.L), M.n, M.ell * N.ell, M.w * N.w, check=False)


def mat_inv(M: ScaledMatrix) -> ScaledMatrix:
    """(1/u L)^-1 = (1/conj u) (conj D^T, -conj B^T; -conj C^T, conj A^T)."""
    A, B, C, D = M.blocks()
    Li = mx.from_blocks(mx.conj_t(D), mx.neg(mx.conj_t(B)), mx.neg(mx.conj_t(C)), mx.conj_t(A))
    return ScaledMatrix(Li, M.n, M.ell, M.w.conj())


@dataclass(frozen=True)
class Membership:
    member: bool
    form: QuadForm | None
    content: Ideal

    def to_json(self) -> dict:
        return {
            "member": self.member,
            "class": None if self.form is None else self.form.as_list(),
        }


def delta_membership(M: ScaledMatrix, G: ClassGroup | None = None) -> Membership:
    """Membership in the extended group: w*O_K = I(L)^n; returns [I(L)] when it holds."""
    I = content_ideal(M)
    ok = I**M.n == Ideal.principal(M.field, M.w) and I.norm() == M.ell
    if not ok:
        return Membership(False, None, I)
    G = G or class_group(M.field)
    return Membership(True, G.classes[G.class_of_ideal(I)], I)


def _content_generator(M: ScaledMatrix) -> AlgInt | None:
    I = content_ideal(M)
    if I**M.n != Ideal.principal(M.field, M.w):
        return None
    g = is_principal(I)
    return None if g is None else g.num


def gamma_membership(M: ScaledMatrix) -> bool:
    """True iff some branch u of w^(1/n) makes (1/u) L integral.

    Then u = g*eta for the content generator g and a unit eta with
    (g*eta)^n = w.  For n = 2 the branch choice is a sign, so this is exact
    membership in the Hermitian modular group.
    """
    g = _content_generator(M)
    if g is None:
        return False
    return any((g * e) ** M.n == M.w for e in units(M.field))


def in_mu_gamma(M: ScaledMatrix) -> bool:
    """True iff eps*M is integral for some eps with eps^(2n) = 1."""
    g = _content_generator(M)
    if g is None:
        return False
    w2 = M.w * M.w
    return any((g * e) ** (2 * M.n) == w2 for e in units(M.field))


def unit_twist(field: FieldParams, n: int, delta: AlgInt) -> ScaledMatrix:
    """diag(1,..,1,delta, 1,..,1,delta) as an SU element (scaled by a root of delta^-2)."""
    d = [field(1, 0)] * (n - 1) + [delta]
    return ScaledMatrix(mx.diag(field, d + d), n, 1, delta)


def coset_equal(M: ScaledMatrix, N: ScaledMatrix, modulo: str = "gamma") -> bool:
    """Compare cosets.  ``modulo`` is "gamma", "mu_gamma" or "kernel".

    "kernel" is the kernel of the class map.  For d_K in {-3, -4} it is tested
    through the unit-diagonal twists, i.e. the kernel is mu*Gamma times the
    matrices diag(1,..,delta, 1,..,delta), delta a unit.
    """
    for X in (M, N):
        if not delta_membership(X).member:
            raise ScaledMatrixError("coset comparison needs members of the extended group")
    Q = mat_inv(M) @ N
    if modulo == "gamma":
        return gamma_membership(Q)
    if modulo == "mu_gamma":
        return in_mu_gamma(Q)
    if modulo == "kernel":
        if M.field.disc in (-3, -4):
            return any(
                in_mu_gamma(mat_inv(unit_twist(M.field, M.n, e)) @ Q) for e in units(M.field)
            )
        return in_mu_gamma(Q)
    raise ValueError(f"unknown modulus {modulo!r}")


def projectively_equal(M: ScaledMatrix, N: ScaledMatrix) -> bool:
    """True iff N = zeta*M with zeta^n = 1 (the ambiguity a ScaledMatrix carries)."""
    if M.n != N.n or M.field != N.field:
        return False
    pairs = [(x, y) for x, y in zip(mx.entries(M.L), mx.entries(N.L))]
    for x, y in pairs:
        if bool(x) != bool(y):
            return False
    x0, y0 = next((x, y) for x, y in pairs if x)
    lam = AlgNum(y0) / AlgNum(x0)
    if any(AlgNum(y) != lam * x for x, y in pairs):
        return False
    lw = AlgNum(M.w)
    for _ in range(M.n):
        lw = lw * lam
    return lw == AlgNum(N.w)


# -- Hermitian 2x2 matrices ----------------------------------------------------


@dataclass(frozen=True)
class HermMatrix:
    h11: Fraction
    h12: AlgNum
    h22: Fraction

    @property
    def field(self) -> FieldParams:
        return self.h12.field

    @property
    def h21(self) -> AlgNum:
        return self.h12.conj()

    @classmethod
    def from_rows(cls, rows) -> HermMatrix:
        (x11, x12), (x21, x22) = rows
        F = next(x.field for x in (x11, x12, x21, x22) if isinstance(x, (AlgInt, AlgNum)))
        x11, x12, x21, x22 = (AlgNum.make(x, F) for x in (x11, x12, x21, x22))
        if not (x11.is_rational() and x22.is_rational()) or x21 != x12.conj():
            raise ValueError("matrix is not Hermitian")
        return cls(x11.to_fraction(), x12, x22.to_fraction())

    def rows(self):
        F = self.field
        return (
            (AlgNum.make(self.h11, F), self.h12),
            (self.h21, AlgNum.make(self.h22, F)),
        )

    def det(self) -> Fraction:
        return self.h11 * self.h22 - self.h12.norm()


# -- generators of the Hermitian modular group ------------------------------------


def J_scaled(field: FieldParams, n: int) -> ScaledMatrix:
    return ScaledMatrix(mx.J_matrix(field, n), n, 1, field(1, 0))


def translation(H: mx.Matrix) -> ScaledMatrix:
    """(I H; 0 I) for integral Hermitian H."""
    n = len(H)
    F = H[0][0].field
    if mx.conj_t(H) != mx.as_matrix(H):
        raise ValueError("H is not Hermitian")
    L = mx.from_blocks(mx.identity(F, n), mx.as_matrix(H), mx.zeros(F, n), mx.identity(F, n))
    return ScaledMatrix(L, n, 1, F(1, 0))


def rotation(U: mx.Matrix) -> ScaledMatrix:
    """diag(conj(U)^T, U^-1) for U over O_K with det U = +-1."""
    n = len(U)
    F = U[0][0].field
    d = mx.det(U)
    if d not in (1, -1):
        raise ValueError("rotation needs det U = +-1")
    Ui = mx.smul(d, mx.adjugate(U))
    L = mx.block_diag(F, mx.conj_t(U), Ui)
    return ScaledMatrix(L, n, 1, F(1, 0))


def random_algint(field: FieldParams, rng: random.Random, bound: int = 10) -> AlgInt:
    return field(rng.randint(-bound, bound), rng.randint(-bound, bound))


def random_hermitian(field: FieldParams, n: int, rng: random.Random, bound: int = 10) -> mx.Matrix:
    rows = [[field(0, 0)] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = field(rng.randint(-bound, bound), 0)
        for j in range(i + 1, n):
            x = random_algint(field, rng, bound)
            rows[i][j] = x
            rows[j][i] = x.conj()
    return mx.as_matrix(rows)


def random_unimodular(field: FieldParams, n: int, rng: random.Random, steps: int = 3) -> mx.Matrix:
    """Product of elementary matrices and sign flips; det = +-1."""
    U = [list(r) for r in mx.identity(field, n)]
    for _ in range(steps):
        kind = rng.random()
        if n > 1 and kind < 0.8:
            i, j = rng.sample(range(n), 2)
            x = random_algint(field, rng, 2)
            for k in range(n):
                U[i][k] = U[i][k] + x * U[j][k]
        else:
            i = rng.randrange(n)
            U[i] = [-y for y in U[i]]
    return mx.as_matrix(U)


def random_gamma_generator(field: FieldParams, n: int, rng: random.Random) -> ScaledMatrix:
    k = rng.randrange(3)
    if k == 0:
        return J_scaled(field, n)
    if k == 1:
        return translation(random_hermitian(field, n, rng))
    return rotation(random_unimodular(field, n, rng))


def random_gamma_word(field: FieldParams, n: int, rng: random.Random, length: int = 4) -> ScaledMatrix:
    M = identity_scaled(field, n)
    for _ in range(length):
        M = M @ random_gamma_generator(field, n, rng)
    return M


def block_determinants(M: ScaledMatrix) -> list[AlgNum]:
    """det of the blocks A, B, C, D of M itself (i.e. divided by w)."""
    w = AlgNum(M.w)
    return [AlgNum(mx.det(X)) / w for X in M.blocks()]


def content_relations_hold(M: ScaledMatrix) -> bool:
    I = content_ideal(M)
    F = M.field
    return (
        I.norm() == M.ell
        and I * I.conj() == Ideal.principal(F, M.ell)
        and Ideal.principal(F, M.w) == I**M.n
    )


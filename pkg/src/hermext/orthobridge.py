"""The degree-2 bridge from SU(2,2) to the orthogonal group of signature (2,4).

Hermitian 2x2 matrices are identified with Q^4 via
    [[alpha, beta + gamma*w], [beta + gamma*conj(w), delta]] -> (alpha, beta, gamma, delta).
A matrix M = (A B; C D) of degree 2 is sent to the 6x6 matrix

    ( alpha  a^T S0  beta )
    ( b      K       c    )
    ( gamma  d^T S0  delta)

with alpha = det A, beta = -det B, gamma = -det C, delta = det D,
a = -phi(A# B), b = -phi(A C#), c = phi(B D#), d = phi(C# D) and
K z = phi(A Z D# + B Z# C#), where X# is the 2x2 adjugate.  Every entry is
quadratic in M, so the formulas are evaluated on the integral numerator L and
divided by w = u^2; the sign ambiguity of u drops out.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath as mp
import numpy as np

from . import matrix as mx
from .matgroup import HermMatrix, ScaledMatrix
from .quadfield import AlgNum, FieldParams, field_params

RatMatrix = tuple[tuple[Fraction, ...], ...]

DEFAULT_TOL = 1e-9


# -- Gram matrices ---------------------------------------------------------------


@dataclass(frozen=True)
class GramData:
    S: RatMatrix
    S0: RatMatrix
    S1: RatMatrix


def _rat(rows) -> RatMatrix:
    return tuple(tuple(Fraction(x) for x in r) for r in rows)


@lru_cache(maxsize=None)
def _gram(m: int, t: int, q: int) -> GramData:
    S = _rat([[2, t], [t, 2 * q]])
    S0 = _rat(
        [
            [0, 0, 0, 1],
            [0, -S[0][0], -S[0][1], 0],
            [0, -S[1][0], -S[1][1], 0],
            [1, 0, 0, 0],
        ]
    )
    S1 = [[Fraction(0)] * 6 for _ in range(6)]
    S1[0][5] = S1[5][0] = Fraction(1)
    for i in range(4):
        for j in range(4):
            S1[i + 1][j + 1] = S0[i][j]
    return GramData(S, S0, _rat(S1))


def gram_data(field: FieldParams) -> GramData:
    # 2 Re(omega) is the trace, 2 |omega|^2 twice the norm
    return _gram(field.m, field.trace_omega, field.norm_omega)


def signature(S1: RatMatrix) -> tuple[int, int]:
    ev = np.linalg.eigvalsh(np.array(S1, dtype=float))
    return int((ev > 0).sum()), int((ev < 0).sum())


# -- small rational linear algebra -------------------------------------------------


def rat_mul(X: RatMatrix, Y: RatMatrix) -> RatMatrix:
    cols = list(zip(*Y))
    return tuple(tuple(sum((x * y for x, y in zip(r, c)), Fraction(0)) for c in cols) for r in X)


def rat_transpose(X: RatMatrix) -> RatMatrix:
    return tuple(zip(*X))


def rat_identity(k: int) -> RatMatrix:
    return tuple(tuple(Fraction(int(i == j)) for j in range(k)) for i in range(k))


def rat_inverse(X: RatMatrix) -> RatMatrix:
    """Gauss-Jordan inverse over Q."""
    k = len(X)
    A = [list(r) + list(e) for r, e in zip(X, rat_identity(k))]
    for col in range(k):
        piv = next((i for i in range(col, k) if A[i][col]), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        A[col], A[piv] = A[piv], A[col]
        p = A[col][col]
        A[col] = [x / p for x in A[col]]
        for i in range(k):
            if i != col and A[i][col]:
                f = A[i][col]
                A[i] = [x - f * y for x, y in zip(A[i], A[col])]
    return tuple(tuple(r[k:]) for r in A)


def rat_det(X: RatMatrix) -> Fraction:
    A = [list(r) for r in X]
    k = len(A)
    d = Fraction(1)
    for col in range(k):
        piv = next((i for i in range(col, k) if A[i][col]), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            A[col], A[piv] = A[piv], A[col]
            d = -d
        d *= A[col][col]
        for i in range(col + 1, k):
            f = A[i][col] / A[col][col]
            if f:
                A[i] = [x - f * y for x, y in zip(A[i], A[col])]
    return d


def quad(S: RatMatrix, v) -> Fraction:
    """S[v] = v^T S v."""
    return sum((v[i] * S[i][j] * v[j] for i in range(len(v)) for j in range(len(v))), Fraction(0))


# -- the bijection phi on Hermitian matrices -----------------------------------------


def phi_vec(H: HermMatrix) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    beta, gamma = H.h12.coords()
    return (H.h11, beta, gamma, H.h22)


def phi_inv(field: FieldParams, v) -> HermMatrix:
    if len(v) != 4:
        raise ValueError("phi_inv expects a 4-vector")
    alpha, beta, gamma, delta = (Fraction(x) for x in v)
    h12 = AlgNum.make(beta, field) + AlgNum.make(field.omega, field) * gamma
    return HermMatrix(alpha, h12, delta)


def _phi_rows(rows) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    return phi_vec(HermMatrix.from_rows(rows))


def _omega_mp(field: FieldParams):
    root = mp.mpc(0, mp.sqrt(field.m))
    return (1 + root) / 2 if field.omega_case else root


def _to_mp(x) -> mp.mpc:
    """Exact AlgInt/AlgNum to an mpmath complex at the working precision."""
    x = AlgNum.make(x)
    a, b = x.coords()
    return mp.mpf(a.numerator) / a.denominator + mp.mpf(b.numerator) / b.denominator * _omega_mp(x.field)


def phi_complex(field: FieldParams, Z) -> mp.matrix:
    """Complexified phi of a 2x2 complex matrix Z = X + iY with X, Y Hermitian."""
    w = _omega_mp(field)
    g = (Z[0, 1] - Z[1, 0]) / (w - mp.conj(w))
    b = Z[0, 1] - g * w
    return mp.matrix([Z[0, 0], b, g, Z[1, 1]])


def phi_inv_complex(field: FieldParams, z) -> mp.matrix:
    w = _omega_mp(field)
    a, b, g, d = (z[i] for i in range(4))
    return mp.matrix([[a, b + g * w], [b + g * mp.conj(w), d]])


# -- exact phi on degree-2 matrices --------------------------------------------------


def _sharp(X):
    (a, b), (c, d) = X
    return ((d, -b), (-c, a))


def _mul2(X, Y):
    return tuple(
        tuple(X[i][0] * Y[0][j] + X[i][1] * Y[1][j] for j in range(2)) for i in range(2)
    )


def _add2(X, Y):
    return tuple(tuple(x + y for x, y in zip(r, s)) for r, s in zip(X, Y))


def _scale2(X, s):
    return tuple(tuple(x * s for x in r) for r in X)


def _det2(X):
    return X[0][0] * X[1][1] - X[0][1] * X[1][0]


def _rational(x: AlgNum, what: str) -> Fraction:
    if not x.is_rational():
        raise ValueError(f"{what} is not real: {x}")
    return x.to_fraction()


@dataclass(frozen=True)
class OrthoMatrix:
    entries: RatMatrix
    m: int

    @property
    def alpha(self) -> Fraction:
        return self.entries[0][0]

    @property
    def beta(self) -> Fraction:
        return self.entries[0][5]

    @property
    def gamma(self) -> Fraction:
        return self.entries[5][0]

    @property
    def delta(self) -> Fraction:
        return self.entries[5][5]

    @property
    def b(self) -> tuple[Fraction, ...]:
        return tuple(self.entries[i][0] for i in range(1, 5))

    @property
    def c(self) -> tuple[Fraction, ...]:
        return tuple(self.entries[i][5] for i in range(1, 5))

    @property
    def K(self) -> RatMatrix:
        return tuple(tuple(self.entries[i][1:5]) for i in range(1, 5))

    def _row_vector(self, row: int) -> tuple[Fraction, ...]:
        # the top and bottom rows store a^T S0 and d^T S0
        S0inv = rat_inverse(self.gram.S0)
        r = self.entries[row][1:5]
        return tuple(sum((r[j] * S0inv[j][i] for j in range(4)), Fraction(0)) for i in range(4))

    @property
    def a(self) -> tuple[Fraction, ...]:
        return self._row_vector(0)

    @property
    def d(self) -> tuple[Fraction, ...]:
        return self._row_vector(5)

    @property
    def gram(self) -> GramData:
        return gram_data(field_params(self.m))

    def __matmul__(self, other: OrthoMatrix) -> OrthoMatrix:
        return OrthoMatrix(rat_mul(self.entries, other.entries), self.m)

    def is_orthogonal(self) -> bool:
        S1 = self.gram.S1
        return rat_mul(rat_mul(rat_transpose(self.entries), S1), self.entries) == S1

    def det(self) -> Fraction:
        return rat_det(self.entries)

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for r in self.entries for x in r)

    def in_discriminant_kernel(self) -> bool:
        """M - I in Z^{6x6} S1, i.e. (M - I) S1^{-1} integral."""
        I = rat_identity(6)
        diff = tuple(tuple(x - y for x, y in zip(r, s)) for r, s in zip(self.entries, I))
        Q = rat_mul(diff, rat_inverse(self.gram.S1))
        return all(x.denominator == 1 for r in Q for x in r)

    def to_float(self) -> np.ndarray:
        return np.array([[float(x) for x in r] for r in self.entries])

    def to_json(self) -> dict:
        return {"m": self.m, "entries": [[_rat_str(x) for x in r] for r in self.entries]}

    @classmethod
    def from_json(cls, data) -> OrthoMatrix:
        try:
            m = data["m"]
            rows = data["entries"]
            ent = tuple(tuple(Fraction(x) for x in r) for r in rows)
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"malformed OrthoMatrix JSON: {exc}") from exc
        if len(ent) != 6 or any(len(r) != 6 for r in ent):
            raise ValueError("OrthoMatrix 'entries' must be 6x6")
        return cls(ent, m)


def _rat_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def phi_mat(M: ScaledMatrix, n: int = 2) -> OrthoMatrix:
    if n != 2 or M.n != 2:
        raise ValueError(f"phi is only defined in degree 2, got n={M.n}")
    F = M.field
    A, B, C, D = (
        tuple(tuple(AlgNum.make(x, F) for x in r) for r in blk) for blk in M.blocks()
    )
    winv = AlgNum.make(M.w, F).inverse()

    def scaled_phi(X):
        return _phi_rows(_scale2(X, winv))

    alpha = _rational(_det2(A) * winv, "alpha")
    beta = -_rational(_det2(B) * winv, "beta")
    gamma = -_rational(_det2(C) * winv, "gamma")
    delta = _rational(_det2(D) * winv, "delta")
    a = tuple(-x for x in scaled_phi(_mul2(_sharp(A), B)))
    b = tuple(-x for x in scaled_phi(_mul2(A, _sharp(C))))
    c = scaled_phi(_mul2(B, _sharp(D)))
    d = scaled_phi(_mul2(_sharp(C), D))

    Dsh, Csh = _sharp(D), _sharp(C)
    Kcols = []
    for i in range(4):
        e = [0, 0, 0, 0]
        e[i] = 1
        Z = phi_inv(F, e).rows()
        img = _add2(_mul2(_mul2(A, Z), Dsh), _mul2(_mul2(B, _sharp(Z)), Csh))
        Kcols.append(scaled_phi(img))
    K = rat_transpose(tuple(Kcols))

    S0 = gram_data(F).S0
    aS0 = [sum((a[j] * S0[j][i] for j in range(4)), Fraction(0)) for i in range(4)]
    dS0 = [sum((d[j] * S0[j][i] for j in range(4)), Fraction(0)) for i in range(4)]
    rows = [[alpha, *aS0, beta]]
    for i in range(4):
        rows.append([b[i], *K[i], c[i]])
    rows.append([gamma, *dS0, delta])
    return OrthoMatrix(_rat(rows), F.m)


def J_tilde(field: FieldParams) -> OrthoMatrix:
    rows = [[0] * 6 for _ in range(6)]
    rows[0][5] = rows[1][4] = rows[4][1] = rows[5][0] = -1
    rows[2][2] = rows[3][3] = 1
    return OrthoMatrix(_rat(rows), field.m)


# -- half-space actions ----------------------------------------------------------------
#
# Orbits of long words leave any bounded region quickly (|M<Z>| ~ 1e8 is common),
# so the floating checks run in mpmath at WORK_DPS digits; the tolerance stays absolute.

WORK_DPS = 40


@dataclass(frozen=True)
class HalfSpacePoint:
    coords: tuple[complex, complex, complex, complex]

    def to_json(self) -> list[list[float]]:
        return [[z.real, z.imag] for z in self.coords]


def _rat_mp(X) -> mp.matrix:
    return mp.matrix([[mp.mpf(x.numerator) / x.denominator for x in r] for r in X])


def in_half_space(field: FieldParams, z, tol: float = 0.0) -> bool:
    S0 = _rat_mp(gram_data(field).S0)
    y = mp.matrix([mp.im(z[i]) for i in range(4)])
    return bool(y[0] > tol and (y.T * S0 * y)[0] > tol)


def in_hermitian_half_space(Z, tol: float = 0.0) -> bool:
    Z = mp.matrix(Z)
    Y = (Z - Z.H) / mp.mpc(0, 2)
    return bool(mp.re(Y[0, 0]) > tol and mp.re(mp.det(Y)) > tol)


def make_point(field: FieldParams, z) -> HalfSpacePoint:
    z = tuple(complex(x) for x in z)
    if len(z) != 4 or not in_half_space(field, z):
        raise ValueError(f"{z} is not in the orthogonal half-space")
    return HalfSpacePoint(z)


def _bilinear(S, x, y):
    return sum(x[i] * S[i, j] * y[j] for i in range(4) for j in range(4))


def ortho_factor(Mt: OrthoMatrix, z) -> mp.mpc:
    S0 = _rat_mp(Mt.gram.S0)
    d = [mp.mpf(x.numerator) / x.denominator for x in Mt.d]
    gamma = mp.mpf(Mt.gamma.numerator) / Mt.gamma.denominator
    delta = mp.mpf(Mt.delta.numerator) / Mt.delta.denominator
    return -gamma / 2 * _bilinear(S0, z, z) + _bilinear(S0, d, z) + delta


def ortho_action(Mt: OrthoMatrix, z, tol: float = DEFAULT_TOL):
    """(M<z>, M{z}) for the orthogonal action on the half-space."""
    if isinstance(z, HalfSpacePoint):
        z = z.coords
    z = mp.matrix([mp.mpc(z[i]) for i in range(4)])
    f = ortho_factor(Mt, z)
    if abs(f) < tol:
        raise ValueError("factor M{z} vanishes")
    S0 = _rat_mp(Mt.gram.S0)
    b = _rat_mp([[x] for x in Mt.b])
    c = _rat_mp([[x] for x in Mt.c])
    K = _rat_mp(Mt.K)
    img = (-_bilinear(S0, z, z) / 2 * b + K * z + c) / f
    return img, f


def scaled_to_mp(M: ScaledMatrix) -> mp.matrix:
    """(1/u) L with u = w^(1/n) on the principal branch."""
    u = _to_mp(M.w) ** (mp.mpf(1) / M.n)
    return mp.matrix([[_to_mp(x) / u for x in r] for r in M.L])


def su_action(M: ScaledMatrix, Z, tol: float = DEFAULT_TOL):
    """(M<Z>, det(CZ + D)) for Z in the Hermitian half-space."""
    n = M.n
    Mc = scaled_to_mp(M)
    Z = mp.matrix(Z)
    A, B = Mc[0:n, 0:n], Mc[0:n, n : 2 * n]
    C, D = Mc[n : 2 * n, 0:n], Mc[n : 2 * n, n : 2 * n]
    den = C * Z + D
    f = mp.det(den)
    if abs(f) < tol:
        raise ValueError("CZ + D is singular")
    return (A * Z + B) * mp.inverse(den), f


def random_half_space_point(field: FieldParams, rng: random.Random) -> mp.matrix:
    """Random Z = X + iY in the degree-2 half-space as a 2x2 mpmath matrix."""
    x = [mp.mpf(rng.uniform(-2, 2)) for _ in range(4)]
    beta, gamma = mp.mpf(rng.uniform(-1, 1)), mp.mpf(rng.uniform(-1, 1))
    h = abs(beta + gamma * _omega_mp(field)) ** 2
    alpha = mp.mpf(rng.uniform(0.5, 2))
    delta = (h + mp.mpf(rng.uniform(0.2, 2))) / alpha
    X = phi_inv_complex(field, x)
    Y = phi_inv_complex(field, [alpha, beta, gamma, delta])
    return X + mp.mpc(0, 1) * Y


@dataclass(frozen=True)
class ActionCheck:
    equivariance_error: float
    factor_error: float
    image_in_half_space: bool

    def ok(self, tol: float = DEFAULT_TOL) -> bool:
        return (
            self.image_in_half_space
            and self.equivariance_error < tol
            and self.factor_error < tol
        )


def check_action(M: ScaledMatrix, Mt: OrthoMatrix, Z, dps: int = WORK_DPS) -> ActionCheck:
    """Compare phi(M<Z>) with Mt<phi(Z)> and det(CZ+D) with Mt{phi(Z)}."""
    F = M.field
    with mp.workdps(dps):
        img, f = su_action(M, Z)
        zimg, g = ortho_action(Mt, phi_complex(F, Z))
        diff = phi_complex(F, img) - zimg
        return ActionCheck(
            float(max(abs(diff[i]) for i in range(4))),
            float(abs(f - g)),
            in_hermitian_half_space(img) and in_half_space(F, zimg),
        )


def hermitian_from_vec(field: FieldParams, v) -> mx.Matrix:
    """Integral Hermitian 2x2 matrix with phi-coordinates v (integers)."""
    H = phi_inv(field, v)
    return tuple(tuple(x.to_algint() for x in r) for r in H.rows())

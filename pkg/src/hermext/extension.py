"""Coset representatives of the extended Hermitian modular group.

The general-n construction follows the pseudo-matrix route: start from
(I, (A, ..., A)), repeatedly rewrite a pair I*v + J*w as O_K*v' + IJ*w',
and finally replace the last column by g*w where g generates A^n.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from . import matrix as mx
from .classgroup import QuadForm, class_group, torsion_subgroup
from .ideals import (
    Ideal,
    _reduce_lattice,
    atkin_ideal,
    express_one,
    is_principal,
    squarefree_divisors,
)
from .matgroup import (
    ScaledMatrix,
    delta_membership,
    gamma_membership,
    make_scaled,
    mat_inv,
)
from .quadfield import AlgInt, AlgNum, FieldParams, xgcd


class NotTorsionError(ValueError):
    pass


def _small_elements(I: Ideal, radius: int):
    """Nonzero elements x*b1 + y*b2 of I with |x|, |y| <= radius, by norm."""
    b1, b2 = I.basis()
    out = []
    for x in range(-radius, radius + 1):
        for y in range(0, radius + 1):
            if y == 0 and x <= 0:
                continue
            out.append(b1 * x + b2 * y)
    out.sort(key=lambda z: (z.norm(), z.num.a, z.num.b))
    return out


def coprime_pair(I: Ideal, J: Ideal) -> tuple[AlgNum, AlgNum]:
    """a in I, b in J with a*I^-1 + b*J^-1 = O_K."""
    F = I.field
    Ii, Ji = I.inverse(), J.inverse()
    one = Ideal.unit(F)
    radius = 2
    while radius <= 64:
        cands_a = _small_elements(I, radius)
        cands_b = _small_elements(J, radius)
        for a in cands_a:
            P = Ii * a
            for b in cands_b:
                if P + Ji * b == one:
                    return a, b
        radius *= 2
    raise AssertionError(f"no coprime pair found for {I}, {J}")


def _vec_combo(c1, v1, c2, v2):
    return [c1 * x + c2 * y for x, y in zip(v1, v2)]


def _two_generator_matrix(A: Ideal, g: AlgInt) -> mx.Matrix:
    """X = (a, b; -z*b, x*a + y*b) with g = x*a^2 + y*a*b + z*b^2 over Z.

    (a, b) is the HNF basis of A, whose pairwise products span A^2 over Z.
    Among the integer solutions the one with minimal positive x is used.
    """
    a, b = (t.to_algint() for t in A.basis())
    vs = [a * a, a * b, b * b]
    (p, cp), (q, r, cq) = _reduce_lattice([(v.a, v.b) for v in vs])
    if g.b % r:
        raise AssertionError("generator not in the span of the basis products")
    k = g.b // r
    rest = g.a - k * q
    if rest % p:
        raise AssertionError("generator not in the span of the basis products")
    sol = [k * u + (rest // p) * v for u, v in zip(cq, cp)]
    # integer kernel of the three product vectors
    (x1, y1), (x2, y2), (x3, y3) = [(v.a, v.b) for v in vs]
    ker = [x2 * y3 - x3 * y2, x3 * y1 - x1 * y3, x1 * y2 - x2 * y1]
    h = math.gcd(*ker)
    ker = [c // h for c in ker]
    if ker[0] < 0:
        ker = [-c for c in ker]
    if ker[0]:
        t = -((sol[0] - 1) // ker[0])  # smallest t with sol[0] + t*ker[0] >= 1
        sol = [s + t * c for s, c in zip(sol, ker)]
    x, y, z = sol
    return mx.as_matrix([[a, b], [-(b * z), a * x + b * y]])


def elementary_divisor_matrix(A: Ideal, n: int) -> tuple[mx.Matrix, AlgInt]:
    """n x n matrix X over O_K with column module A*O_K^n, and g = det X.

    The k-minors of X then generate A^k and det X generates A^n.
    """
    F = A.field
    if not A.is_integral():
        raise ValueError("elementary_divisor_matrix needs an integral ideal")
    if n < 1:
        raise ValueError("n must be positive")
    g0 = is_principal(A)
    if g0 is not None:
        g0 = g0.num
        return mx.diag(F, [g0] * n), g0**n
    gn = is_principal(A**n)
    if gn is None:
        raise NotTorsionError(f"[{A}] is not {n}-torsion: the Steinitz class A^{n} is not principal")
    if n == 2:
        X = _two_generator_matrix(A, gn.num)
        if mx.det(X) != gn.num:
            raise AssertionError("two-generator matrix has the wrong determinant")
        return X, gn.num
    one, zero = AlgNum(F(1, 0)), AlgNum(F(0, 0))
    basis = [[one if i == j else zero for i in range(n)] for j in range(n)]
    cols = []
    v, I = basis[0], A
    for k in range(1, n):
        w, J = basis[k], A
        a, b = coprime_pair(I, J)
        ip, jp = express_one(F, [(a, I.inverse()), (b, J.inverse())])
        cols.append(_vec_combo(a, v, b, w))
        v = _vec_combo(-jp, v, ip, w)
        I = I * J
    g = gn.num
    cols.append([g * x for x in v])
    X = mx.transpose(tuple(tuple(x.to_algint() for x in c) for c in cols))
    d = mx.det(X)
    if d != g:
        raise AssertionError(f"pseudo-basis determinant {d} differs from generator {g}")
    return X, g


def minors_ideal(X: mx.Matrix, k: int) -> Ideal:
    F = X[0][0].field
    return Ideal.from_generators(F, list(mx.all_minors(X, k)))


def minors_match(X: mx.Matrix, A: Ideal) -> bool:
    n = len(X)
    return all(minors_ideal(X, k) == A**k for k in range(1, n + 1))


@dataclass(frozen=True)
class CosetRep:
    matrix: ScaledMatrix
    form: QuadForm
    ideal: Ideal
    generator: AlgInt
    label: str = ""

    def to_json(self) -> dict:
        out = {"class": self.form.as_list(), "generator": self.generator.to_json()}
        if self.label:
            out["label"] = self.label
        out["matrix"] = self.matrix.to_json()
        return out


def block_representative(X: mx.Matrix, g: AlgInt, ell: int) -> ScaledMatrix:
    """(1/u) diag(X, ell * conj(X)^T^-1) with u^n = det X = g."""
    n = len(X)
    F = g.field
    gb = g.conj()
    adj = mx.adjugate(mx.conj_t(X))
    D = tuple(tuple((x * ell).divexact(gb) for x in r) for r in adj)
    L = mx.block_diag(F, X, D)
    return make_scaled(L, n, ell, g)


def coset_representatives(field: FieldParams, n: int) -> list[CosetRep]:
    """One representative per class of Cl_K[n], in the class-group order."""
    G = class_group(field)
    reps = []
    for i in torsion_subgroup(G, n):
        A = G.ideal_of_class(i)
        X, g = elementary_divisor_matrix(A, n)
        M = block_representative(X, g, A.norm_int())
        form = G.classes[i]
        mem = delta_membership(M, G)
        if not mem.member or mem.form != form:
            raise AssertionError(f"representative for {form} landed in {mem.form}")
        reps.append(CosetRep(M, form, A, g))
    return reps


# -- degree 2: Atkin-Lehner matrices --------------------------------------------


def atkin_lehner_uv(field: FieldParams, d: int) -> tuple[int, int]:
    """u, v with u*d - v*(m^2 + m)/d = 1 and u minimal positive."""
    m = field.m
    atkin_ideal(field, d)  # validates d
    k = (m * m + m) // d
    if (m * m + m) % d:
        raise AssertionError(f"d={d} does not divide m^2+m")
    g, s, _ = xgcd(d, k)
    if g != 1:
        raise AssertionError(f"gcd(d, (m^2+m)/d) = {g} for m={m}, d={d}")
    u = s % k
    if u == 0:
        u = k
    v = (u * d - 1) // k
    return u, v


def atkin_lehner_numerator(field: FieldParams, d: int) -> mx.Matrix:
    """sqrt(d) * V_d = (u*d, v*(m + sqrt(-m)); m - sqrt(-m), d)."""
    u, v = atkin_lehner_uv(field, d)
    m, s = field.m, field.sqrt_neg_m
    return mx.as_matrix([[field(u * d, 0), (s + m) * v], [-s + m, field(d, 0)]])


def atkin_lehner(field: FieldParams, d: int) -> ScaledMatrix:
    """W_d = diag(conj(V_d)^T, V_d^-1) stored with ell = d and w = d."""
    LV = atkin_lehner_numerator(field, d)
    if mx.det(LV) != d:
        raise AssertionError("det of the V_d numerator is not d")
    L = mx.block_diag(field, mx.conj_t(LV), mx.adjugate(LV))
    return make_scaled(L, 2, d, field(d, 0))


@dataclass(frozen=True)
class AtkinRep:
    d: int
    matrix: ScaledMatrix
    form: QuadForm

    def to_json(self) -> dict:
        return {"d": self.d, "class": self.form.as_list(), "matrix": self.matrix.to_json()}


def theorem2_decomposition(field: FieldParams) -> list[AtkinRep]:
    """W_d for every squarefree d | d_K: representatives of Delta*_2 / Gamma_2."""
    G = class_group(field)
    out = []
    for d in squarefree_divisors(field):
        W = atkin_lehner(field, d)
        out.append(AtkinRep(d, W, G.classes[G.class_of_ideal(atkin_ideal(field, d))]))
    return out


def coset_index(M: ScaledMatrix, reps: list[ScaledMatrix]) -> int | None:
    """Index of the rep R with R^-1 M in Gamma, or None."""
    for i, R in enumerate(reps):
        if gamma_membership(mat_inv(R) @ M):
            return i
    return None


def atkin_product_table(field: FieldParams) -> tuple[list[int], list[list[int | None]]]:
    """Multiplication table of the Gamma_2-cosets W_d, indexed like the d list."""
    reps = theorem2_decomposition(field)
    mats = [r.matrix for r in reps]
    table = [[coset_index(a @ b, mats) for b in mats] for a in mats]
    return [r.d for r in reps], table


def i_identity(field: FieldParams) -> ScaledMatrix:
    """i*I_4 as a ScaledMatrix: L = I, u = -i, so w = u^2 = -1."""
    return ScaledMatrix(mx.identity(field, 4), 2, 1, field(-1, 0))


def gaussian_twist(field: FieldParams) -> ScaledMatrix:
    """((1+i)/sqrt 2) diag(U, U), U = diag(1, i), for d_K = -4."""
    if field.disc != -4:
        raise ValueError("only defined for d_K = -4")
    i = field(0, 1)
    one = field(1, 0)
    L = mx.diag(field, [x * (one + i) for x in (one, i, one, i)])
    return make_scaled(L, 2, 2, field(2, 0))


def even_n_reps(field: FieldParams, n: int) -> list[AtkinRep]:
    """Block-diagonal W_d of degree n (n even), assuming Cl_K = Cl_K[2]."""
    if n < 2 or n % 2:
        raise ValueError(f"n={n} must be even")
    G = class_group(field)
    if len(torsion_subgroup(G, 2)) != G.h:
        raise ValueError(f"class group of m={field.m} is not 2-torsion")
    k = n // 2
    out = []
    for d in squarefree_divisors(field):
        LV = atkin_lehner_numerator(field, d)
        L = mx.block_diag(field, *([mx.conj_t(LV)] * k + [mx.adjugate(LV)] * k))
        M = make_scaled(L, n, d, field(d**k, 0))
        mem = delta_membership(M, G)
        if not mem.member:
            raise AssertionError(f"block W_{d} of degree {n} is not in the extended group")
        out.append(AtkinRep(d, M, mem.form))
    return out


# -- SL_n analogue ------------------------------------------------------------------


@dataclass(frozen=True)
class ScaledSL:
    """(1/u) L in SL_n(C) with u^n = w = det L."""

    L: mx.Matrix
    n: int
    w: AlgInt
    form: QuadForm

    def normalizer_condition(self) -> bool:
        F = self.w.field
        I = Ideal.from_generators(F, list(mx.entries(self.L)))
        return mx.det(self.L) == self.w and Ideal.principal(F, self.w) == I**self.n

    def to_json(self) -> dict:
        return {
            "m": self.w.field.m,
            "n": self.n,
            "w": self.w.to_json(),
            "class": self.form.as_list(),
            "L": mx.to_json(self.L),
        }


def sl_normalizer_reps(field: FieldParams, n: int) -> list[ScaledSL]:
    G = class_group(field)
    out = []
    for i in torsion_subgroup(G, n):
        X, g = elementary_divisor_matrix(G.ideal_of_class(i), n)
        rep = ScaledSL(X, n, g, G.classes[i])
        if not rep.normalizer_condition():
            raise AssertionError(f"SL_n representative for {rep.form} fails O_K det L = I(L)^n")
        out.append(rep)
    return out


def squarefree_coprime_pairs(field: FieldParams):
    ds = squarefree_divisors(field)
    for d, e in itertools.combinations(ds, 2):
        if math.gcd(d, e) == 1:
            yield d, e


"""Verification suites shared by the command line and the test suite."""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass, field as dc_field
from typing import Callable

from .classgroup import class_group, torsion_subgroup
from .extension import (
    coset_representatives,
    elementary_divisor_matrix,
    minors_match,
    theorem2_decomposition,
    atkin_product_table,
)
from .ideals import atkin_ideal, squarefree_divisors
from .matgroup import (
    J_scaled,
    coset_equal,
    identity_scaled,
    in_mu_gamma,
    content_relations_hold,
    random_gamma_word,
)
from .orthobridge import (
    DEFAULT_TOL,
    J_tilde,
    check_action,
    phi_mat,
    random_half_space_point,
    rat_identity,
)
from .quadfield import field_params, prime_divisors, units

SUITES = ("invariants", "cosets", "phi")
SEED = 20240601


@dataclass(frozen=True)
class CheckResult:
    name: str
    status: str  # "pass", "fail" or "skip"
    witness: object = None
    seconds: float = 0.0

    def to_json(self, timing: bool = False) -> dict:
        out = {"name": self.name, "status": self.status}
        if self.witness is not None:
            out["witness"] = self.witness
        if timing:
            out["seconds"] = round(self.seconds, 6)
        return out


@dataclass
class Report:
    m: int
    n: int
    checks: list[CheckResult] = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.status != "fail" for c in self.checks)

    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if c.status == "fail"]

    def to_json(self, timing: bool = False) -> dict:
        return {
            "m": self.m,
            "n": self.n,
            "ok": self.ok,
            "checks": [c.to_json(timing) for c in self.checks],
        }


def _run(report: Report, name: str, fn: Callable[[], object]) -> None:
    """fn returns None on success, a witness on failure, or the string "skip"."""
    t0 = time.perf_counter()
    try:
        witness = fn()
    except Exception as exc:  # a crash inside a check is a failure with the message as witness
        witness = {"error": f"{type(exc).__name__}: {exc}"}
    dt = time.perf_counter() - t0
    if witness == "skip":
        report.checks.append(CheckResult(name, "skip", None, dt))
    elif witness is None:
        report.checks.append(CheckResult(name, "pass", None, dt))
    else:
        report.checks.append(CheckResult(name, "fail", witness, dt))


# -- invariants --------------------------------------------------------------------


def genus_two_rank_ok(m: int) -> bool:
    """|Cl[2]| = 2^(nu - 1), nu the number of primes dividing d_K."""
    F = field_params(m)
    G = class_group(F)
    nu = len(prime_divisors(F.disc))
    return len(torsion_subgroup(G, 2)) == 2 ** (nu - 1)


def invariants_suite(report: Report) -> None:
    F = field_params(report.m)
    G = class_group(F)
    n = report.n

    def structure():
        if math.prod(G.structure) != G.h:
            return {"h": G.h, "structure": list(G.structure)}

    def genus():
        if not genus_two_rank_ok(report.m):
            return {"cl2": len(torsion_subgroup(G, 2)), "disc": F.disc}

    def torsion():
        expected = math.prod(math.gcd(n, d) for d in G.structure)
        got = len(torsion_subgroup(G, n))
        if got != expected:
            return {"expected": expected, "got": got}

    def units_count():
        expected = {-4: 4, -3: 6}.get(F.disc, 2)
        if len(units(F)) != expected:
            return {"units": [u.to_json() for u in units(F)]}

    def atkin_ideals():
        for d in squarefree_divisors(F):
            atkin_ideal(F, d)  # asserts norm d and A_d^2 = d O_K

    _run(report, "classgroup.structure", structure)
    _run(report, "classgroup.genus_2rank", genus)
    _run(report, "classgroup.torsion_count", torsion)
    _run(report, "quadfield.units", units_count)
    _run(report, "ideals.atkin", atkin_ideals)


# -- cosets ------------------------------------------------------------------------


def delta_star_witness(M) -> dict | None:
    """None when M satisfies the content-ideal relations and M^n lies in mu*Gamma."""
    if not content_relations_hold(M):
        return {"relation": "content", "matrix": M.to_json()}
    if not in_mu_gamma(M**M.n):
        return {"relation": "power", "matrix": M.to_json()}
    return None


def cosets_suite(report: Report) -> None:
    m, n = report.m, report.n
    F = field_params(m)
    G = class_group(F)
    state: dict = {}

    def build():
        state["reps"] = coset_representatives(F, n)

    def bijection():
        reps = state["reps"]
        tors = [G.classes[i] for i in torsion_subgroup(G, n)]
        got = [r.form for r in reps]
        if sorted(got) != sorted(tors) or len(set(got)) != len(got):
            return {"torsion": [f.as_list() for f in tors], "classes": [f.as_list() for f in got]}

    def minors():
        for r in state["reps"]:
            X, _ = elementary_divisor_matrix(r.ideal, n)
            if not minors_match(X, r.ideal):
                return {"class": r.form.as_list(), "ideal": r.ideal.to_json()}

    def relations():
        for r in state["reps"]:
            w = delta_star_witness(r.matrix)
            if w is not None:
                return w

    def inequivalent():
        reps = state["reps"]
        modulo = "kernel" if F.disc in (-3, -4) else "mu_gamma"
        for i, a in enumerate(reps):
            for b in reps[i + 1 :]:
                if coset_equal(a.matrix, b.matrix, modulo):
                    return {"pair": [a.form.as_list(), b.form.as_list()]}

    _run(report, "cosets.build", build)
    if "reps" not in state:
        return
    _run(report, "cosets.bijection", bijection)
    _run(report, "cosets.minors", minors)
    _run(report, "cosets.delta_star", relations)
    _run(report, "cosets.inequivalent", inequivalent)
    if n == 2:
        _run(report, "cosets.atkin_lehner_group", lambda: atkin_lehner_witness(m))


def atkin_lehner_witness(m: int) -> dict | None:
    """None when the W_d form 2^nu Gamma-cosets closed under products as C_2^nu."""
    F = field_params(m)
    nu = len(prime_divisors(F.disc))
    reps = theorem2_decomposition(F)
    if len(reps) != 2**nu:
        return {"count": len(reps), "expected": 2**nu}
    for r in reps:
        w = delta_star_witness(r.matrix)
        if w is not None:
            return w
    ds, table = atkin_product_table(F)
    k = len(ds)
    e = ds.index(1)
    for i in range(k):
        if table[i][i] != e:
            return {"not_involution": ds[i]}
        for j in range(k):
            if table[i][j] is None or table[i][j] != table[j][i]:
                return {"table": table, "d": ds}
            if i != j and table[i][j] == e:
                return {"equivalent": [ds[i], ds[j]]}
    return None


# -- phi ---------------------------------------------------------------------------


def phi_suite(report: Report, words: int = 20, points: int = 5, tol: float = DEFAULT_TOL) -> None:
    m, n = report.m, report.n
    F = field_params(m)
    if n != 2:
        _run(report, "phi.degree", lambda: "skip")
        return
    rng = random.Random(SEED + m)

    def j_tilde():
        if phi_mat(J_scaled(F, 2)) != J_tilde(F):
            return {"phi_J": phi_mat(J_scaled(F, 2)).to_json()}

    def minus_identity():
        if phi_mat(-identity_scaled(F, 2)).entries != rat_identity(6):
            return {"phi_minus_I": phi_mat(-identity_scaled(F, 2)).to_json()}

    def gamma_words():
        for _ in range(words):
            M, N = random_gamma_word(F, 2, rng), random_gamma_word(F, 2, rng)
            a, b = phi_mat(M), phi_mat(N)
            if not (a.is_orthogonal() and a.det() == 1):
                return {"not_orthogonal": M.to_json()}
            if phi_mat(M @ N) != a @ b:
                return {"not_multiplicative": [M.to_json(), N.to_json()]}
            if not a.in_discriminant_kernel():
                return {"outside_kernel": M.to_json()}

    def atkin_integral():
        for r in theorem2_decomposition(F):
            P = phi_mat(r.matrix)
            if not (P.is_orthogonal() and P.det() == 1 and P.is_integral()):
                return {"d": r.d, "phi": P.to_json()}

    def action():
        gens = [r.matrix for r in theorem2_decomposition(F)]
        for _ in range(points):
            M = random_gamma_word(F, 2, rng) @ rng.choice(gens)
            Z = random_half_space_point(F, rng)
            c = check_action(M, phi_mat(M), Z)
            if not c.ok(tol):
                return {
                    "matrix": M.to_json(),
                    "equivariance_error": c.equivariance_error,
                    "factor_error": c.factor_error,
                }

    _run(report, "phi.J", j_tilde)
    _run(report, "phi.minus_identity", minus_identity)
    _run(report, "phi.gamma_words", gamma_words)
    _run(report, "phi.atkin_integral", atkin_integral)
    _run(report, "phi.action", action)


def run_suites(m: int, n: int, suite: str = "all", tol: float = DEFAULT_TOL) -> Report:
    if suite != "all" and suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}")
    report = Report(m, n)
    chosen = SUITES if suite == "all" else (suite,)
    if "invariants" in chosen:
        invariants_suite(report)
    if "cosets" in chosen:
        cosets_suite(report)
    if "phi" in chosen:
        phi_suite(report, tol=tol)
    return report

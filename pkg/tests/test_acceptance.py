"""Acceptance gate: eight criteria, each timed and reported on one PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -s`` to see the report lines (they are
also written when output is captured).
"""

import itertools
import random
import time
from fractions import Fraction
from math import gcd

import pytest

from hermext import classgroup as cg_mod
from hermext import matrix as mx
from hermext import orthobridge as ob_mod
from hermext.classgroup import class_group, torsion_subgroup
from hermext.extension import (
    coset_representatives,
    elementary_divisor_matrix,
    even_n_reps,
    theorem2_decomposition,
    atkin_product_table,
)
from hermext.fielddef import predicted_field, ramification_support
from hermext.ideals import Ideal
from hermext.matgroup import (
    J_scaled,
    coset_equal,
    content_ideal,
    in_mu_gamma,
    random_gamma_generator,
    random_gamma_word,
)
from hermext.orthobridge import check_action, phi_mat, random_half_space_point
from hermext.quadfield import field_params

from oracles import brute_reduced_forms, disc, nu, squarefree


def cold():
    cg_mod._class_group.cache_clear()
    ob_mod._gram.cache_clear()


def report(capsys, number, ok, detail, seconds, limit=None):
    budget = f" (limit {limit:g}s)" if limit is not None else ""
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'} [{seconds:.2f}s{budget}] {detail}"
    with capsys.disabled():
        print("\n" + line)
    return line


def squarefree_upto(N):
    return [m for m in range(1, N + 1) if squarefree(m)]


# -- 1. class numbers against a brute-force reduced-form oracle ----------------------

C1_MS = [1, 2, 3, 5, 6, 7, 11, 14, 15, 19, 23, 31, 39, 55, 59, 83]


def test_criterion_1_class_numbers(capsys):
    expected = {m: len(brute_reduced_forms(disc(m))) for m in C1_MS}
    cold()
    t0 = time.perf_counter()
    got = {m: class_group(m).h for m in C1_MS}
    dt = time.perf_counter() - t0
    bad = {m: (got[m], expected[m]) for m in C1_MS if got[m] != expected[m]}
    ok = not bad and dt < 1.0
    report(capsys, 1, ok, f"h matches oracle for {len(C1_MS)} fields; mismatches {bad}", dt, 1)
    assert not bad
    assert dt < 1.0


# -- 2. Hecke: |Cl[2]| = 2^(nu-1) ------------------------------------------------------


def test_criterion_2_genus_two_rank(capsys):
    ms = squarefree_upto(200)
    cold()
    t0 = time.perf_counter()
    bad = [m for m in ms if len(torsion_subgroup(class_group(m), 2)) != 2 ** (nu(m) - 1)]
    dt = time.perf_counter() - t0
    ok = not bad and dt < 5.0
    report(capsys, 2, ok, f"{len(ms)} squarefree m <= 200; failures {bad}", dt, 5)
    assert not bad
    assert dt < 5.0


# -- 3. Atkin-Lehner cosets form C_2^nu mod Gamma ---------------------------------------

C3_MS = [1, 2, 3, 5, 6, 7, 15]


def c2_closure_failure(ds, table):
    """None if table is the Cayley table of (squarefree divisors, d*e/gcd^2)."""
    for i, j in itertools.product(range(len(ds)), repeat=2):
        d, e = ds[i], ds[j]
        de = d * e // gcd(d, e) ** 2
        if table[i][j] is None or ds[table[i][j]] != de:
            return (d, e, table[i][j])
    return None


def test_criterion_3_atkin_lehner_group(capsys):
    cold()
    t0 = time.perf_counter()
    problems = {}
    for m in C3_MS:
        F = field_params(m)
        reps = theorem2_decomposition(F)
        if len(reps) != 2 ** nu(m):
            problems[m] = ("count", len(reps))
            continue
        pairs = [
            (a.d, b.d)
            for a, b in itertools.combinations(reps, 2)
            if coset_equal(a.matrix, b.matrix, "gamma")
        ]
        if pairs:
            problems[m] = ("equivalent", pairs)
            continue
        ds, table = atkin_product_table(F)
        fail = c2_closure_failure(ds, table)
        if fail:
            problems[m] = ("product", fail)
    dt = time.perf_counter() - t0
    ok = not problems and dt < 10.0
    report(capsys, 3, ok, f"2^nu inequivalent W_d closing as C_2^nu for m in {C3_MS}; {problems}", dt, 10)
    assert not problems
    assert dt < 10.0


# -- 4-6. coset representatives ----------------------------------------------------------

C4_CASES = [(5, 2), (23, 3), (14, 4), (31, 3)]


@pytest.fixture(scope="module")
def built_reps():
    cold()
    t0 = time.perf_counter()
    reps = {(m, n): coset_representatives(field_params(m), n) for m, n in C4_CASES}
    return reps, time.perf_counter() - t0


def test_criterion_4_coset_representatives(capsys, built_reps):
    reps, build_dt = built_reps
    t0 = time.perf_counter()
    problems = {}
    for (m, n), rs in reps.items():
        G = class_group(m)
        tors = sorted(G.classes[i] for i in torsion_subgroup(G, n))
        got = [r.form for r in rs]
        if sorted(got) != tors or len(set(got)) != len(got):
            problems[(m, n)] = "not a bijection onto Cl[n]"
            continue
        for r in rs:
            # independent class read-off: reduced form of the content ideal
            I = content_ideal(r.matrix)
            if G.classes[G.class_of_ideal(I)] != r.form:
                problems[(m, n)] = f"content class differs for {r.form}"
        for a, b in itertools.combinations(rs, 2):
            if coset_equal(a.matrix, b.matrix, "mu_gamma"):
                problems[(m, n)] = f"{a.form} ~ {b.form}"
    dt = build_dt + time.perf_counter() - t0
    sizes = {k: len(v) for k, v in reps.items()}
    ok = not problems and dt < 30.0
    report(capsys, 4, ok, f"|Cl[n]| representatives {sizes}; {problems}", dt, 30)
    assert not problems
    assert sizes == {(5, 2): 2, (23, 3): 3, (14, 4): 4, (31, 3): 3}
    assert dt < 30.0


def minors_oracle(X, k):
    """Ideal generated by all k x k minors, by explicit enumeration."""
    n = len(X)
    gens = []
    for rows in itertools.combinations(range(n), k):
        for cols in itertools.combinations(range(n), k):
            gens.append(mx.det([[X[i][j] for j in cols] for i in rows]))
    return Ideal.from_generators(X[0][0].field, gens)


def test_criterion_5_elementary_divisors(capsys, built_reps):
    reps, _ = built_reps
    t0 = time.perf_counter()
    problems = []
    checked = 0
    for (m, n), rs in reps.items():
        for r in rs:
            A = r.ideal
            X, g = elementary_divisor_matrix(A, n)
            checked += 1
            for k in range(1, n + 1):
                if minors_oracle(X, k) != A**k:
                    problems.append((m, n, r.form.as_list(), k))
            if Ideal.principal(A.field, mx.det(X)) != A**n or mx.det(X) != g:
                problems.append((m, n, r.form.as_list(), "det"))
    dt = time.perf_counter() - t0
    ok = not problems
    report(capsys, 5, ok, f"k-minor ideals equal A^k for {checked} classes; {problems}", dt)
    assert checked == 12
    assert not problems


def content_relation_failure(M):
    F = M.field
    I = content_ideal(M)
    if I.norm() != M.ell:
        return "norm"
    if I * I.conj() != Ideal.principal(F, M.ell):
        return "conj"
    if Ideal.principal(F, M.w) != I**M.n:
        return "power ideal"
    if not in_mu_gamma(M**M.n):
        return "M^n"
    return None


def test_criterion_6_extended_group_relations(capsys, built_reps):
    reps, _ = built_reps
    t0 = time.perf_counter()
    elements = [(f"rep{m},{n}:{r.form.as_list()}", r.matrix) for (m, n), rs in reps.items() for r in rs]
    for m in C3_MS:
        elements += [(f"W{m}:{r.d}", r.matrix) for r in theorem2_decomposition(field_params(m))]
    for m in (5, 6, 15):
        elements += [(f"W4hat{m}:{r.d}", r.matrix) for r in even_n_reps(field_params(m), 4)]
    problems = [(name, why) for name, M in elements if (why := content_relation_failure(M))]
    dt = time.perf_counter() - t0
    ok = not problems
    report(capsys, 6, ok, f"content relations and M^n in mu*Gamma for {len(elements)} elements; {problems}", dt)
    assert not problems


# -- 7. orthogonal bridge ------------------------------------------------------------------

C7_MS = [1, 2, 5, 6]
WORDS = 200
POINTS = 20
TOL = 1e-9

# phi(J) in the block form (0 0 P; 0 I 0; P 0 0), P = (0 -1; -1 0)
J_TILDE = [
    [0, 0, 0, 0, 0, -1],
    [0, 0, 0, 0, -1, 0],
    [0, 0, 1, 0, 0, 0],
    [0, 0, 0, 1, 0, 0],
    [0, -1, 0, 0, 0, 0],
    [-1, 0, 0, 0, 0, 0],
]


def test_criterion_7_orthogonal_bridge(capsys):
    cold()
    t0 = time.perf_counter()
    rng = random.Random(7)
    problems = []
    # exact orthogonality and multiplicativity on generator words, spread over the fields
    for k in range(WORDS):
        F = field_params(C7_MS[k % len(C7_MS)])
        gens = [random_gamma_generator(F, 2, rng) for _ in range(rng.randint(1, 4))]
        word = gens[0]
        for g in gens[1:]:
            word = word @ g
        P = phi_mat(word)
        if not (P.is_orthogonal() and P.det() == 1):
            problems.append(("orthogonal", F.m, k))
        prod = phi_mat(gens[0])
        for g in gens[1:]:
            prod = prod @ phi_mat(g)
        if prod != P:
            problems.append(("multiplicative", F.m, k))
        if not P.in_discriminant_kernel():
            problems.append(("kernel", F.m, k))
    for m in C7_MS:
        F = field_params(m)
        if [list(row) for row in phi_mat(J_scaled(F, 2)).entries] != [
            [Fraction(x) for x in row] for row in J_TILDE
        ]:
            problems.append(("J", m))
        delta = [r.matrix for r in theorem2_decomposition(F)]
        delta += [r.matrix for r in coset_representatives(F, 2)]
        delta += [random_gamma_word(F, 2, rng) @ W for W in delta[:]]
        for M in delta:
            P = phi_mat(M)
            if not (P.is_orthogonal() and P.is_integral()):
                problems.append(("integral", m, M.to_json()))
    # floating identities at random half-space points
    worst = 0.0
    for k in range(POINTS):
        F = field_params(C7_MS[k % len(C7_MS)])
        W = rng.choice(theorem2_decomposition(F)).matrix
        M = random_gamma_word(F, 2, rng) @ W
        c = check_action(M, phi_mat(M), random_half_space_point(F, rng))
        worst = max(worst, c.equivariance_error, c.factor_error)
        if not c.ok(TOL):
            problems.append(("action", F.m, k, c.equivariance_error, c.factor_error))
    dt = time.perf_counter() - t0
    ok = not problems and dt < 30.0
    detail = f"{WORDS} words, m in {C7_MS}, {POINTS} points, worst error {worst:.1e}; {problems[:3]}"
    report(capsys, 7, ok, detail, dt, 30)
    assert not problems
    assert worst < TOL
    assert dt < 30.0


# -- 8. ramification support of the predicted field, n = 2 --------------------------------


def prime_factors(k):
    return {p for p in range(2, k + 1) if k % p == 0 and all(p % q for q in range(2, p))}


def test_criterion_8_ramification_support(capsys):
    t0 = time.perf_counter()
    ms = squarefree_upto(50)
    problems = []
    for m in ms:
        F = field_params(m)
        desc = predicted_field(F, 2)
        rep = ramification_support(desc, F, 2)
        allowed = prime_factors(-2 * F.disc)
        if not rep.ok or not set(rep.support) <= allowed:
            problems.append((m, rep.support))
    dt = time.perf_counter() - t0
    ok = not problems
    report(capsys, 8, ok, f"support within primes of 2*d_K for {len(ms)} squarefree m <= 50; {problems}", dt)
    assert not problems

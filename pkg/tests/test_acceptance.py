"""End-to-end acceptance checks, one test per criterion.

Each test reports through the ``acceptance`` fixture so that the terminal
summary prints a single PASS/FAIL line per criterion.
"""

import cmath
import math
from itertools import combinations

import numpy as np

from grcyc.cli import main
from grcyc.cyclic_shift import (
    RootSet,
    all_roots,
    deformed_plucker_formula,
    enumerate_fixed_points,
    fixed_residual,
    flow,
    is_positive_real,
    roots_and_s0,
    v_S,
)
from grcyc.dynamics import Tableau, promotion, rowmotion_fixed_check, semistandard_tableaux
from grcyc.errors import ChartUndefined, OutsidePiCircle
from grcyc.grassmann import PluckerVector, plucker_from_matrix, projective_distance, random_point, subsets
from grcyc.moment_curve import trig_vandermonde_det, trig_vandermonde_formula, f_k, v0_matrix, v0_point
from grcyc.peterson import (
    gamma_embed,
    identity_point,
    is_nonnegative,
    modulus_inequality_check,
    partitions_in_box,
    schur_eval,
    schur_sine_formula,
    schur_via_plucker,
    toeplitz_u,
)
from grcyc.positivity import is_tnn, random_tnn_matrix
from grcyc.superpotential import (
    TorusPoint,
    build_l_q,
    chart_coords,
    f_q_eval,
    find_critical_points,
    l_q_eval,
    torus_distance,
    verify_correspondence,
)
from grcyc.twist import is_inversion_closed, periodicity_check, right_twist, twist_point

T_VALUES = (1, 2, -1 + 1j)


def test_criterion_01_fixed_point_count(acceptance):
    bad = []
    for n in range(1, 9):
        for k in range(1, n + 1):
            for t in T_VALUES:
                fps = enumerate_fixed_points(k, n, t)
                worst = max(fixed_residual(fp.point, t) for fp in fps)
                if len(fps) != math.comb(n, k) or worst >= 1e-9:
                    bad.append((k, n, t, len(fps), worst))
    acceptance(1, not bad, f"{len(bad)} failing (k,n,t)" if bad else "all (k,n) with n<=8, three t values")


def test_criterion_02_tnn_uniqueness(acceptance):
    bad = []
    worst_formula = 0.0
    for n in range(1, 9):
        for k in range(1, n + 1):
            for t in T_VALUES:
                tnn = [fp.point for fp in enumerate_fixed_points(k, n, t) if is_tnn(fp.point)]
                # Gr(n,n) is one point, nonnegative for every t
                expected = 1 if (k == n or is_positive_real(t)) else 0
                if len(tnn) != expected:
                    bad.append((k, n, t, len(tnn)))
                    continue
                if expected and k < n:
                    F = np.array([deformed_plucker_formula(k, n, complex(t).real, I) for I in subsets(k, n)])
                    c = tnn[0].coords
                    pivot = int(np.argmax(np.abs(F)))
                    scaled = c * (F[pivot] / c[pivot])
                    err = float(np.max(np.abs(scaled - F)) / np.max(np.abs(F)))
                    worst_formula = max(worst_formula, err)
    ok = not bad and worst_formula < 1e-9
    acceptance(2, ok, f"bad={bad[:3]} max formula error {worst_formula:.2e}")


def test_criterion_03_octagon(acceptance):
    r = 1 / math.sqrt(2)
    A = np.array([[1, r, 0, -r], [0, r, 1, r]])
    zeta = cmath.exp(1j * math.pi / 4)
    A_roots = np.array([[zeta ** j for j in range(4)], [zeta ** -j for j in range(4)]])
    points = [plucker_from_matrix(A), plucker_from_matrix(A_roots)]
    points += [plucker_from_matrix(v0_matrix(2, 4, theta)) for theta in (0.0, 0.9, -2.3)]
    worst = max(projective_distance(P, Q) for P, Q in combinations(points, 2))
    expected = PluckerVector(2, 4, np.array([r, 1, r, r, 1, r]))
    worst_delta = max(projective_distance(P, expected) for P in points)
    acceptance(3, worst < 1e-10 and worst_delta < 1e-10, f"pairwise {worst:.1e}, delta vector {worst_delta:.1e}")


def test_criterion_04_trig_vandermonde(acceptance):
    rng = np.random.default_rng(404)
    worst = 0.0
    for i in range(500):
        k = i % 6 + 1
        thetas = rng.uniform(-2 * math.pi, 2 * math.pi, k)
        formula = trig_vandermonde_formula(thetas)
        direct = float(np.linalg.det(np.column_stack([f_k(k, t) for t in thetas])))
        scale = max(abs(direct), 2.0 ** (((k - 1) ** 2) // 2) * 1e-3)
        worst = max(worst, abs(formula - direct) / scale)
        trig_vandermonde_det(thetas)  # self-checking path must not raise
    acceptance(4, worst < 1e-9, f"max relative error {worst:.2e}")


def test_criterion_05_embedding(acceptance):
    rng = np.random.default_rng(505)
    shapes = [(k, n) for n in range(2, 9) for k in range(1, min(n, 4) + 1)]
    worst = 0.0
    for _ in range(200):
        k, n = shapes[rng.integers(len(shapes))]
        t = complex(*rng.normal(size=2))
        roots = all_roots(k, n, t)
        pick = sorted(rng.choice(n, k, replace=False).tolist())
        S = RootSet(k, n, t, tuple(roots[i] for i in pick))
        worst = max(worst, projective_distance(gamma_embed(toeplitz_u(k, n, S.roots)), v_S(S)))
    supports_ok = all(gamma_embed(identity_point(k, n)).support() == [tuple(range(1, k + 1))] for k, n in shapes)
    acceptance(5, worst < 1e-8 and supports_ok, f"max distance {worst:.2e}")


def test_criterion_06_schur(acceptance):
    worst_triple, positivity_ok, modulus_ok = 0.0, True, True
    for n in range(2, 8):
        for k in range(1, n):
            lams = partitions_in_box(k, n)
            for t in (1.0, 2.0):
                _, S0 = roots_and_s0(k, n, t)
                for lam in lams:
                    a, b, c = schur_eval(lam, S0.roots), schur_via_plucker(lam, S0), schur_sine_formula(lam, t)
                    worst_triple = max(worst_triple, abs(a - c) / max(1, c), abs(b - c) / max(1, c))
                positive = []
                for fp in enumerate_fixed_points(k, n, t):
                    if all(is_nonnegative(schur_eval(lam, fp.roots.roots)) for lam in lams):
                        positive.append(fp.roots.indices)
                positivity_ok &= positive == [S0.indices]
            for zs in combinations(all_roots(k, n, 1.0), k):
                modulus_ok &= all(modulus_inequality_check(lam, zs).holds for lam in lams)
    ok = worst_triple < 1e-8 and positivity_ok and modulus_ok
    acceptance(6, ok, f"triple-path {worst_triple:.1e}, positivity {positivity_ok}, modulus {modulus_ok}")


def test_criterion_07_superpotential(acceptance):
    s2 = math.sqrt(2)
    search = find_critical_points(2, 4, 1)
    # chart variable order is x11, x12, x21, x22
    expected = [(s2, 1, 1, 1 / s2), (-s2, 1, 1, -1 / s2), (s2 * 1j, -1, -1, -1j / s2), (-s2 * 1j, -1, -1, 1j / s2)]
    found = all(min(torus_distance(p, TorusPoint(2, 4, e)) for p in search.points) < 1e-6 for e in expected)
    example_ok = len(search.points) == 4 and found

    failing = []
    for n in range(2, 8):
        for k in range(1, min(3, n - 1) + 1):
            for t in (1, 2):
                rep = verify_correspondence(k, n, t)
                if not rep.passed:
                    failing.append((k, n, t))

    rng = np.random.default_rng(707)
    shapes = [(k, n) for n in range(3, 8) for k in range(1, n)]
    worst, used = 0.0, 0
    while used < 100:
        k, n = shapes[rng.integers(len(shapes))]
        q = complex(*rng.normal(size=2))
        P = random_point(k, n, rng)
        try:
            lhs = l_q_eval(build_l_q(k, n), chart_coords(P), q)
            rhs = f_q_eval(P, q)
        except (ChartUndefined, OutsidePiCircle):
            continue
        worst = max(worst, abs(lhs - rhs) / max(1, abs(rhs)))
        used += 1
    ok = example_ok and not failing and worst < 1e-8
    acceptance(7, ok, f"example {example_ok}, correspondence failures {failing}, pullback {worst:.1e}")


def test_criterion_08_twist(acceptance):
    out = right_twist(np.array([[1, 1, 0, -4], [0, 2, 1, 3]], float))
    example = float(np.abs(out - np.array([[1, 1, 3 / 4, 0], [-1 / 2, 0, 1, 1 / 3]])).max())
    rng = np.random.default_rng(808)
    periodic = all(periodicity_check(random_point(k, n, rng))
                   for k, n in [(2, 4), (2, 5), (3, 5), (3, 6)] for _ in range(50))
    worst = 0.0
    for n in range(2, 9):
        for k in range(1, n):
            for t in (1, 2):
                for fp in enumerate_fixed_points(k, n, t):
                    if is_inversion_closed(fp.roots.roots):
                        worst = max(worst, projective_distance(twist_point(fp.point), fp.point))
    ok = example < 1e-12 and periodic and worst < 1e-8
    acceptance(8, ok, f"example {example:.1e}, periodicity {periodic}, inversion-closed {worst:.1e}")


def test_criterion_09_promotion(acceptance):
    got = promotion(Tableau(((1, 1, 2, 3), (2, 3, 4, 5))), 5)
    example = got.rows == ((1, 1, 2, 4), (2, 3, 5, 5))
    checked, bad = 0, 0
    for n in range(1, 6):
        for a in range(1, n + 1):
            for b in range(1, 7):
                if a * b > 6:
                    continue
                for T in semistandard_tableaux(a, b, n):
                    S = T
                    for _ in range(n):
                        S = promotion(S, n)
                    checked += 1
                    bad += S != T
    acceptance(9, example and bad == 0 and checked > 0, f"example {example}, {checked} tableaux, {bad} bad")


def test_criterion_10_rowmotion(acceptance):
    reports = [rowmotion_fixed_check(k, n, q, starts=50) for k, n, q in [(1, 2, 4), (2, 4, 1), (2, 5, 1)]]
    ok = all(r.passed for r in reports)
    detail = ", ".join(f"({r.k},{r.n}) res {r.max_fixed_residual:.1e} unmatched {r.unmatched}" for r in reports)
    acceptance(10, ok, detail)


def test_criterion_11_flow(acceptance):
    rng = np.random.default_rng(1111)
    worst, monotone = 0.0, True
    for k, n in [(2, 4), (2, 5), (3, 6)]:
        V0 = v0_point(k, n)
        for _ in range(20):
            P = plucker_from_matrix(random_tnn_matrix(k, n, rng))
            d = [projective_distance(flow(P, s), V0) for s in range(0, 41, 5)]
            monotone &= all(b <= a + 1e-12 for a, b in zip(d, d[1:]))
            worst = max(worst, d[-1])
    acceptance(11, worst < 1e-6 and monotone, f"max distance at s=40 {worst:.1e}, monotone {monotone}")


def test_criterion_12_determinism(acceptance, capsys):
    outputs = []
    for argv in (["verify-all", "--k", "2", "--n", "5", "--seed", "12345"],
                 ["verify-all", "--k", "3", "--n", "6", "--t=-1+i", "--seed", "99"]):
        runs = []
        for _ in range(2):
            code = main(argv)
            runs.append((code, capsys.readouterr().out))
        outputs.append(runs)
    identical = all(a == b for a, b in outputs)
    passed = all(code == 0 for runs in outputs for code, _ in runs)
    acceptance(12, identical and passed, f"identical {identical}, exit codes zero {passed}")

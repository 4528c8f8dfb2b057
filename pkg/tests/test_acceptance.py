"""Acceptance criteria, one test each.

Each test records a PASS/FAIL line that is printed in the pytest terminal
summary (see conftest.py), so ``pytest tests/test_acceptance.py`` shows the
whole gate at a glance.
"""

import math
import time

import numpy as np
import pytest

from conftest import ACCEPTANCE_LINES, INT, NAT, NAT2, max_term_diff, random_function
from convalg import (
    Character,
    ConvexCone,
    ExpCharacter,
    FiniteSupportFunction,
    GridFunction,
    SummableFunction,
    add,
    char_evaluate,
    char_multiplicativity_residual,
    convolve,
    convolve_l1,
    delta,
    dual_contains,
    evaluate,
    evaluate_l1,
    geometric,
    l1_norm_interval,
    total_convolve_at,
)
from convalg.characters import unimodular
from convalg.series import ones, poly_rule

MONOIDS = [NAT, INT, NAT2]


def record(number, title, passed, detail):
    ACCEPTANCE_LINES.append(f"[{'PASS' if passed else 'FAIL'}] {number:>2}. {title}: {detail}")
    print(ACCEPTANCE_LINES[-1])
    assert passed, detail


def test_01_algebra_laws():
    rng = np.random.default_rng(1)
    start = time.perf_counter()
    worst = 0.0
    exact_ok = True
    for m in MONOIDS:
        for _ in range(500):
            f, g, h = (random_function(rng, m) for _ in range(3))
            worst = max(
                worst,
                max_term_diff(convolve(f, g), convolve(g, f)),
                max_term_diff(convolve(convolve(f, g), h), convolve(f, convolve(g, h))),
                max_term_diff(convolve(add(f, g), h), add(convolve(f, h), convolve(g, h))),
                max_term_diff(convolve(f, delta(m, m.identity())), f),
            )
        for _ in range(500):
            f, g, h = (random_function(rng, m, integer=True) for _ in range(3))
            exact_ok &= convolve(f, g) == convolve(g, f)
            exact_ok &= convolve(convolve(f, g), h) == convolve(f, convolve(g, h))
            exact_ok &= convolve(add(f, g), h) == add(convolve(f, h), convolve(g, h))
            exact_ok &= convolve(f, delta(m, m.identity())) == f
    elapsed = time.perf_counter() - start
    passed = worst <= 1e-10 and exact_ok and elapsed < 10
    record(1, "algebra laws", passed,
           f"max per-term deviation {worst:.2e} (tol 1e-10), integer laws exact={exact_ok}, {elapsed:.2f}s (< 10s)")


def test_02_embedding():
    rng = np.random.default_rng(2)
    failures = 0
    for m in MONOIDS:
        lo, hi = (0, 10**6) if m.kind == "nat" else (-10**6, 10**6)
        for _ in range(1000):
            a = tuple(int(v) for v in rng.integers(lo, hi, m.dim))
            b = tuple(int(v) for v in rng.integers(lo, hi, m.dim))
            if convolve(delta(m, a), delta(m, b)) != delta(m, m.combine(a, b)):
                failures += 1
    record(2, "embedding delta_a * delta_b = delta_{a+b}", failures == 0, f"{failures} failures in 3000 pairs")


def _random_character(rng, m):
    angles = 2 * np.pi * rng.random(m.dim)
    if m.kind == "int":
        return unimodular(m, angles)
    return Character(m, tuple(2 * np.sqrt(rng.random(m.dim)) * np.exp(1j * angles)))


def test_03_character_homomorphism():
    # with |z| up to 2 on N^k, exponents are kept small enough that
    # |Phi| stays within double precision's reach of the absolute tolerance
    rng = np.random.default_rng(3)
    ranges = {NAT: 12, INT: 32, NAT2: 6}
    worst = 0.0
    for m in MONOIDS:
        for _ in range(500):
            phi = _random_character(rng, m)
            f = random_function(rng, m, hi=ranges[m])
            g = random_function(rng, m, hi=ranges[m])
            gap = abs(evaluate(phi, convolve(f, g)) - evaluate(phi, f) * evaluate(phi, g))
            worst = max(worst, gap / (1 + f.l1_norm() * g.l1_norm()))
    record(3, "character homomorphism", worst <= 1e-9, f"max scaled residual {worst:.2e} (tol 1e-9)")


def test_04_l1_contraction_and_submultiplicativity():
    rng = np.random.default_rng(4)
    worst_contraction = -math.inf
    worst_submult = -math.inf
    for i in range(200):
        m = NAT if i % 2 == 0 else INT
        pair = []
        for _ in range(2):
            if m is NAT and rng.random() < 0.3:
                pair.append(geometric(NAT, float(rng.random() * 0.95), int(rng.integers(0, 40))))
            else:
                tau = float(rng.choice([0.0, rng.random(), 5 * rng.random()]))
                pair.append(SummableFunction(random_function(rng, m), tau))
        f1, f2 = pair
        upper = l1_norm_interval(convolve_l1(f1, f2))[1]
        worst_submult = max(worst_submult, upper - l1_norm_interval(f1)[1] * l1_norm_interval(f2)[1])
        for f in pair:
            theta = 2 * np.pi * rng.random()
            radius = math.sqrt(rng.random()) if m is NAT else 1.0
            value, _ = evaluate_l1(Character(m, (radius * np.exp(1j * theta),)), f)
            worst_contraction = max(worst_contraction, abs(value) - l1_norm_interval(f)[1])
    # contraction slack is the evaluate_l1 contract's 1e-12 (unimodular bases are only |z| = 1 to an ulp)
    passed = worst_contraction <= 1e-12 and worst_submult <= 1e-12
    record(4, "l1 contraction and submultiplicativity", passed,
           f"max |phi(f)| - upper = {worst_contraction:.2e} (<= 1e-12), "
           f"max upper(f1*f2) - upper(f1)upper(f2) = {worst_submult:.2e} (<= 1e-12)")


def test_05_geometric_oracle():
    value, err = evaluate_l1(Character(NAT, (0.5,)), geometric(NAT, 0.5, 40))
    gap = abs(value - 4 / 3)
    record(5, "geometric oracle", gap <= 4 * 2.0**-40, f"|value - 4/3| = {gap:.2e} (tol {4 * 2.0**-40:.2e}), tail {err:.2e}")


def test_06_formal_series_identity():
    f, g = ones(NAT), poly_rule([1, -1])
    bad = [z for z in range(65) if total_convolve_at(f, g, z) != (1 if z == 0 else 0)]
    record(6, "formal-series inverse (sum x^j)(1 - x) = delta_0", not bad, f"mismatches at z = {bad or 'none'} for z <= 64")


def _schoolbook(p, q):
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return out


def test_07_schoolbook_oracle():
    rng = np.random.default_rng(7)
    mismatches = 0
    for _ in range(200):
        p = [int(v) for v in rng.integers(-1000, 1001, int(rng.integers(1, 66)))]
        q = [int(v) for v in rng.integers(-1000, 1001, int(rng.integers(1, 66)))]
        prod = convolve(FiniteSupportFunction.from_coefficients(p), FiniteSupportFunction.from_coefficients(q))
        want = _schoolbook(p, q)
        expected = FiniteSupportFunction(NAT, {j: c for j, c in enumerate(want)})
        if prod != expected:
            mismatches += 1
    record(7, "schoolbook polynomial oracle (degree <= 64)", mismatches == 0, f"{mismatches} mismatches in 200 products")


def _laplace_error(h):
    f = GridFunction.sample(lambda x: np.exp(-x), 1, h, 20.0, cone=ConvexCone.orthant(1))
    return abs(char_evaluate(ExpCharacter((-1.0,)), f) - 0.5)


def test_08_cone_quadrature():
    start = time.perf_counter()
    err = _laplace_error(0.001)
    err_half = _laplace_error(0.0005)
    elapsed = time.perf_counter() - start
    ratio = err / err_half
    passed = err <= 5e-3 and ratio >= 1.8 and elapsed < 5
    record(8, "1-D Laplace quadrature", passed,
           f"error {err:.3e} (tol 5e-3), error ratio on halving h {ratio:.3f} (>= 1.8), {elapsed:.2f}s (< 5s)")


def _indicator_residual(h):
    f = GridFunction.sample(
        lambda x: ((x >= 0) & (x <= 1 + 1e-12)).astype(float), 1, h, 8.0, cone=ConvexCone.orthant(1)
    )
    return char_multiplicativity_residual(ExpCharacter((-1.0,)), f, f)


def test_09_continuous_homomorphism():
    r = _indicator_residual(0.01)
    r_half = _indicator_residual(0.005)
    passed = r <= 0.02 and r_half < r
    record(9, "continuous homomorphism residual", passed,
           f"residual(h=0.01) = {r:.3e} (<= 0.02), residual(h=0.005) = {r_half:.3e} (must be smaller)")


def test_10_dual_cone():
    rng = np.random.default_rng(10)
    cones = {
        "orthant R^3": ConvexCone.orthant(3),
        "generated cone": ConvexCone([[1, 0.2, 0.1], [0.2, 1, 0.1], [0.1, 0.2, 1], [1, 1, -0.2]]),
    }
    disagreements = 0
    counts = []
    for name, cone in cones.items():
        xs = cone.sample(rng, 10_000)
        ys = rng.normal(size=(2000, 3))
        brute = np.all(ys @ xs.T >= -1e-9, axis=1)
        fast = np.array([dual_contains(cone, y) for y in ys])
        disagreements += int(np.sum(brute != fast))
        counts.append(f"{name}: {int(fast.sum())}/{len(ys)} in dual")
    record(10, "dual-cone membership vs brute force", disagreements == 0,
           f"{disagreements} disagreements ({'; '.join(counts)})")

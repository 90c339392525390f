"""Acceptance gate: the ten criteria, each at its stated tolerance.

Run under pytest (one ``[PASS]``/``[FAIL]`` line per criterion is printed in
the terminal summary) or directly with ``python tests/test_acceptance.py``.
"""

import cmath
import math
import sys
import time
from fractions import Fraction
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).parent))

from strategies import random_comb, random_unit  # noqa: E402

from homometry.eberlein import autocorrelate  # noqa: E402
from homometry.fourier import diffraction, fourier, inverse_fourier  # noqa: E402
from homometry.limitperiodic import (  # noqa: E402
    pair_measure_with_gaussian,
    pair_with_gaussian,
    pd_delta_n,
    pd_formal_fourier,
    pd_member,
    series_partial_sum,
    total_variation,
)
from homometry.measure import comb, delta, lebesgue, weight_at, window_atoms  # noqa: E402
from homometry.oracle import bragg_intensity, window_autocorrelation  # noqa: E402
from homometry.solver import recover_phases, solve, table_omega_alpha  # noqa: E402

F = Fraction
Z = comb(1)
LAM = lebesgue()
TOL = 1e-9

CRITERIA = []


def criterion(number, title):
    def wrap(fn):
        fn.criterion = (number, title)
        CRITERIA.append(fn)
        return fn

    return wrap


# golden cells: weights at 0, 1/4, 1/2, 3/4 for (t_alpha, e)
GOLDEN = {
    (F(0), 1): (1, 0, 0, 0),
    (F(0), -1): (0.5, 0.5, -0.5, 0.5),
    (F(1, 4), 1): (0.5, -0.5, 0.5, 0.5),
    (F(1, 4), -1): (0, 0, 0, 1),
    (F(1, 2), 1): (0, 0, 1, 0),
    (F(1, 2), -1): (-0.5, 0.5, 0.5, 0.5),
    (F(3, 4), 1): (0.5, 0.5, 0.5, -0.5),
    (F(3, 4), -1): (0, 1, 0, 0),
}

U7 = cmath.exp(2j * math.pi / 7)


@criterion(1, "golden four-periodic table")
def test_criterion_1_golden_table():
    start = time.perf_counter()
    for (t, e), weights in GOLDEN.items():
        cell = table_omega_alpha(t, e)
        got = [weight_at(cell, F(j, 4)) for j in range(4)]
        assert max(abs(g - w) for g, w in zip(got, weights)) <= TOL, (t, e, got)
        assert cell == comb(F(1, 4), weights)
        assert diffraction(cell) == Z
    assert time.perf_counter() - start < 1.0


@criterion(2, "solution-class spot checks")
def test_criterion_2_solution_class():
    assert diffraction(LAM) == delta(0)
    assert diffraction(-LAM) == delta(0)
    assert diffraction(U7 * LAM) == delta(0)
    assert diffraction(2 * LAM - Z) == Z
    assert diffraction(Z - (1 + 1j) * LAM) == Z
    assert diffraction(Z - LAM) == Z - delta(0)


@criterion(3, "Poisson summation")
def test_criterion_3_poisson():
    assert fourier(Z) == Z
    assert fourier(LAM) == delta(0)
    assert inverse_fourier(2 * delta(0) - Z) == 2 * LAM - Z


@criterion(4, "round trips on 200 random periodic combs")
def test_criterion_4_round_trips():
    rng = np.random.default_rng(20240404)
    for _ in range(200):
        m = random_comb(rng, max_n=16)
        assert inverse_fourier(fourier(m)) == m
        d, phases = recover_phases(m)
        assert diffraction(solve(d, phases, real_class=False)) == diffraction(m)
        # Parseval per period: Σ_k |W_k|² over one period of the transform
        # equals Σ_j |w_j|² / (N a²)
        c = m.combs[0]
        a, n = c.spacing, c.n
        w = fourier(m)
        lhs = sum(abs(weight_at(w, F(k) / (n * a))) ** 2 for k in range(n))
        rhs = sum(abs(x) ** 2 for x in c.weights) / float(n * a * a)
        assert abs(lhs - rhs) <= TOL


def _criteria_measures():
    cells = [table_omega_alpha(t, e) for t, e in GOLDEN]
    spot = [LAM, -LAM, U7 * LAM, 2 * LAM - Z, Z - (1 + 1j) * LAM, Z - LAM]
    poisson = [Z, 2 * delta(0) - Z]
    return cells + spot + poisson


@criterion(5, "window oracle agrees with the exact algebra at R = 1000")
def test_criterion_5_oracle():
    start = time.perf_counter()
    R = 1000
    for m in _criteria_measures():
        gamma = autocorrelate(m)
        g, idx, _ = window_atoms(gamma, -5, 5)
        probes = sorted({g * int(i) for i in idx} | {F(j, 4) for j in range(-20, 21)})
        for est in window_autocorrelation(m, R, probes):
            assert abs(est.weight - weight_at(gamma, est.position)) <= 5e-3
            assert abs(est.density - gamma.lebesgue) <= 5e-3
        dif = diffraction(m)
        g, idx, _ = window_atoms(dif, -5, 5)
        ks = sorted({g * int(i) for i in idx} | {F(j, 4) for j in range(-20, 21)})
        for k in ks:
            assert abs(bragg_intensity(gamma, k, R) - weight_at(dif, k).real) <= 5e-3
    assert time.perf_counter() - start < 10.0


@criterion(6, "finite-part nullity and phase invariance")
def test_criterion_6_nullity_and_phase():
    rng = np.random.default_rng(6)
    for _ in range(50):
        m = random_comb(rng, max_n=8) + lebesgue(complex(*rng.normal(size=2)))
        d = diffraction(m)
        atoms = sum(
            (
                delta(F(int(rng.integers(-200, 201)), int(rng.integers(1, 9))), complex(*rng.normal(size=2)))
                for _ in range(25)
            ),
            start=lebesgue(0),
        )
        assert diffraction(m + atoms) == d
        assert diffraction(random_unit(rng) * m) == d


@criterion(7, "period-doubling set against residue enumeration, |k| <= 10^4")
def test_criterion_7_period_doubling():
    start = time.perf_counter()
    limit = 10_000
    ks = range(-limit, limit + 1)
    brute = set(k for k in ks if k % 2 == 0)
    parts = [set(brute)]
    n = 1
    while 4**n - 1 <= limit:
        mod = 2 * 4**n
        part = {k for k in ks if k % mod in ((4**n - 1) % mod, (1 - 4**n) % mod)}
        parts.append(part)
        brute |= part
        n += 1
    assert all(pd_member(k) == (k in brute) for k in ks)
    assert all(pd_member(k) == pd_member(-k) for k in ks)
    assert sum(len(p) for p in parts) == len(brute)
    for j, part in enumerate(parts[1:], start=1):
        assert set(pd_delta_n(j, -limit, limit)) == part
    assert time.perf_counter() - start < 5.0


@criterion(8, "non-measure certificate at eps = 0")
def test_criterion_8_non_measure():
    # Brute-force TV on [0, 1/4], N = 0..8: 0.5, 0.927, 1.187, 1.411, 1.626,
    # 1.839, 2.051, 2.263, 2.476.  Increments settle near 0.212 per term, so
    # the linear constant is fixed at 0.25 (TV > 0.25·N holds for N = 2..8).
    s = pd_formal_fourier(0)
    tv = [total_variation(series_partial_sum(s, n), 0, F(1, 4)) for n in range(9)]
    assert all(a < b for a, b in zip(tv[1:], tv[2:]))
    assert all(tv[n] > 0.25 * n for n in range(2, 9))


@criterion(9, "measure certificate for eps in {1, 1/2, 1/4}")
def test_criterion_9_measure():
    for eps in (1, 0.5, 0.25):
        s = pd_formal_fourier(eps)
        tv = [total_variation(series_partial_sum(s, n), 0, 1) for n in range(9)]
        for n in range(1, 9):
            assert abs(tv[n] - tv[n - 1]) < (4 / (4 + eps)) ** n * 3
            # head (3 atoms of weight 1/2) plus the atom count of ℤ/(2·4ʲ) in [0, 1]
            bound = 1.5 + sum((2 * 4**j + 1) / (4 + eps) ** j for j in range(1, n + 1))
            assert tv[n] <= bound


@criterion(10, "regularisation converges as eps -> 0+")
def test_criterion_10_regularisation():
    vals = [pair_with_gaussian(pd_formal_fourier(2.0**-j), 0.0, 1.0) for j in range(21)]
    assert abs(vals[20] - vals[19]) < 1e-6
    assert all(abs(b - a) < 1e-6 for a, b in zip(vals, vals[1:]))
    grid = pair_measure_with_gaussian(Z, 0.0, 1.0)
    for j in (0, 5, 10, 20):
        rho = pd_formal_fourier(2.0**-j)
        omega = 2 * rho - Z
        assert abs(pair_with_gaussian(omega) - (2 * pair_with_gaussian(rho) - grid)) < 1e-12


def _run_all() -> int:
    failures = 0
    for fn in CRITERIA:
        number, title = fn.criterion
        try:
            fn()
        except Exception as exc:  # noqa: BLE001
            failures += 1
            print(f"[FAIL] criterion {number}: {title} ({type(exc).__name__}: {exc})")
        else:
            print(f"[PASS] criterion {number}: {title}")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(_run_all())

import cmath
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from homometry.exceptions import NonTransformableFinitePart
from homometry.fourier import diffraction, fourier, inverse_fourier, verify_homometric
from homometry.measure import comb, delta, is_inversion_symmetric, is_real, lebesgue, weight_at
from homometry.solver import table_omega_alpha
from strategies import comb_measures, cplx

F = Fraction
Z = comb(1)
LAM = lebesgue()


def pattern_4z(t_alpha, e):
    """(δ_0 + αδ_1 + ᾱδ_{-1} + e δ_2) ∗ δ_{4Z} as a 4-periodic comb on Z."""
    a = cmath.exp(2j * math.pi * t_alpha)
    return comb(1, (1, a, e, a.conjugate()))


def closed_form(t_alpha, e):
    return comb(
        F(1, 4),
        [0.25 * (1 + 2 * math.cos(2 * math.pi * (t_alpha + k / 4)) + e * math.cos(math.pi * k)) for k in range(4)],
    )


def test_poisson_summation():
    assert fourier(Z) == Z
    assert inverse_fourier(Z) == Z


def test_lebesgue_and_point_mass():
    assert fourier(LAM) == delta(0)
    assert fourier(delta(0)) == LAM
    assert inverse_fourier(delta(0)) == LAM


def test_inverse_of_amplitudes_with_exception_at_origin():
    assert inverse_fourier(2 * delta(0) - Z) == 2 * LAM - Z


def test_scaled_lattice():
    assert fourier(comb(2)) == comb(F(1, 2), (0.5,))
    assert fourier(comb(F(1, 3))) == comb(3, (3,))


@pytest.mark.parametrize("t_alpha", [0, 0.25, 0.5, 0.75, 0.1, 0.37])
@pytest.mark.parametrize("e", [1, -1])
def test_four_periodic_amplitudes(t_alpha, e):
    # the structure is the inverse transform of its amplitude comb; the
    # forward transform gives the mirror image (t ↦ -t)
    assert inverse_fourier(pattern_4z(t_alpha, e)) == closed_form(t_alpha, e)
    assert fourier(pattern_4z(t_alpha, e)) == closed_form(-t_alpha, e)


def test_finite_atoms_off_origin_rejected():
    with pytest.raises(NonTransformableFinitePart):
        fourier(Z + delta(F(1, 2)))
    with pytest.raises(NonTransformableFinitePart):
        inverse_fourier(delta(3))


def test_diffraction_examples():
    assert diffraction(LAM) == delta(0)
    assert diffraction(Z - LAM) == Z - delta(0)
    assert diffraction(comb(F(1, 4), (0.5, 0.5, -0.5, 0.5))) == Z


def test_diffraction_strips_finite_part():
    assert diffraction(delta(F(1, 3), 5)) == diffraction(comb(1, (0,)))
    assert diffraction(Z + delta(F(1, 3), 5)) == Z


def test_verify_homometric_examples():
    assert verify_homometric(LAM, -LAM)
    assert verify_homometric(Z, table_omega_alpha(F(1, 4), 1))
    assert not verify_homometric(Z, Z - LAM)


@settings(max_examples=100, deadline=None)
@given(comb_measures())
def test_round_trip(m):
    assert inverse_fourier(fourier(m)) == m
    assert fourier(inverse_fourier(m)) == m


@settings(max_examples=100, deadline=None)
@given(comb_measures(real=True))
def test_hermitian_symmetry_for_real_input(m):
    w = fourier(m)
    step = w.combs[0].spacing
    for k in range(-10, 11):
        assert abs(weight_at(w, -k * step) - weight_at(w, k * step).conjugate()) < 1e-9


@settings(max_examples=100, deadline=None)
@given(comb_measures())
def test_parseval_per_period(m):
    c = m.combs[0]
    a, n = c.spacing, c.n
    w = fourier(m)
    lhs = sum(abs(weight_at(w, F(k, 1) / (n * a))) ** 2 for k in range(n))
    rhs = sum(abs(x) ** 2 for x in c.weights) / float(n * a * a)
    assert abs(lhs - rhs) < 1e-9


@settings(max_examples=100, deadline=None)
@given(
    st.integers(1, 6).flatmap(
        lambda L: st.tuples(
            st.just(L),
            st.lists(st.tuples(st.integers(0, 4 * L - 1), cplx), min_size=1, max_size=5),
        )
    )
)
def test_convolution_identity(args):
    # P ∗ δ_{LZ} with P = Σ p_j δ_{x_j}, x_j in [0, L) on the grid Z/4
    L, atoms = args
    weights = [0j] * (4 * L)
    for j, p in atoms:
        weights[j] += p
    m = comb(F(1, 4), weights)
    got = fourier(m)
    for k in range(-8, 9):
        direct = sum(p * cmath.exp(-2j * math.pi * k * (j / 4) / L) for j, p in atoms) / L
        assert abs(weight_at(got, F(k, L)) - direct) < 1e-9


@settings(max_examples=100, deadline=None)
@given(comb_measures(real=True), cplx)
def test_diffraction_is_a_diffraction_measure(m, c):
    d = diffraction(m + c.real * LAM)
    assert is_real(d) and is_inversion_symmetric(d)
    for x, w in d.finite.atoms:
        assert weight_at(d, x).real >= -1e-9
    for cb in d.combs:
        assert min(w.real for w in cb.weights) >= -1e-9

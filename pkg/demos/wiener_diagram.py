"""
Two routes around the Wiener diagram
====================================

A structure ω can be taken to its diffraction in two ways: first the
autocorrelation γ = ω ⊛ ω̃ and then its transform, or first the transform ω̂
and then the squared modulus of its amplitudes.  Both routes agree for the
periodic structures handled by the library.
"""

from fractions import Fraction

import numpy as np

from homometry import autocorrelate, comb, delta, diffraction, fourier, lebesgue

# A four-periodic comb with complex weights on the lattice ℤ/4.
omega = comb(Fraction(1, 4), (1, 0.5j, -0.25, 0.75))
print("omega          ", omega)

# Top route: autocorrelate, then transform.
gamma = autocorrelate(omega)
print("autocorrelation", gamma)
print("diffraction    ", diffraction(omega))

# Bottom route: transform, then take |amplitude|² atom by atom.
amps = fourier(omega).combs[0]
intensities = np.abs(amps.array) ** 2
print("bottom route    comb(%s, %s)" % (amps.spacing, np.round(intensities, 12).tolist()))

# %%
# The Lebesgue measure λ and its negative are homometric: both have the
# diffraction δ₀.  Adding a finite measure never changes the autocorrelation,
# so δ_ℤ + δ_{1/3} still diffracts like δ_ℤ.
print()
print("diffraction(λ)        =", diffraction(lebesgue()))
print("diffraction(-λ)       =", diffraction(-lebesgue()))
print("diffraction(2λ - δ_ℤ) =", diffraction(2 * lebesgue() - comb(1)))
print("diffraction(δ_ℤ+δ_1/3)=", diffraction(comb(1) + delta(Fraction(1, 3))))

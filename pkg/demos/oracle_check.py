"""
Checking the exact algebra against a finite window
==================================================

The Eberlein convolution is a limit of finite-window averages.  The oracle
module carries out those averages by brute force, so its numbers approach the
exact autocorrelation and Bragg weights at rate 1/R.
"""

from fractions import Fraction

from homometry import autocorrelate, bragg_intensity, comb, diffraction, lebesgue, weight_at
from homometry import window_autocorrelation

omega = comb(1) - lebesgue()
gamma = autocorrelate(omega)
dif = diffraction(omega)
print("omega =", omega)
print("gamma =", gamma)
print("diffraction =", dif)

for R in (10, 100, 1000):
    probes = [0, Fraction(1, 2), 1]
    est = window_autocorrelation(omega, R, probes)
    atoms = [round(abs(e.weight - weight_at(gamma, e.position)), 6) for e in est]
    density = [round(abs(e.density - gamma.lebesgue), 6) for e in est]
    bragg = [round(abs(bragg_intensity(gamma, k, R) - weight_at(dif, k).real), 6) for k in (0, 1, Fraction(1, 2))]
    print(f"R = {R:5d}  atom errors {atoms}  density errors {density}  Bragg errors {bragg}")

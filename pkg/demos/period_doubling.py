"""
A homometric partner that is not a measure
==========================================

Giving the amplitudes +1 on the period doubling set Δ and -1 elsewhere is a
legitimate choice of phases for the diffraction δ_ℤ, but the structure it
produces is 2·δ̂_Δ - δ_ℤ, a tempered distribution whose total variation on
[0, ¼] grows without bound.  Damping the series turns it into a measure
again, and the damped versions converge back as the damping goes to 0.
"""

from fractions import Fraction

from homometry import (
    SetIndicator,
    comb,
    pair_with_gaussian,
    pd_enumerate,
    pd_formal_fourier,
    series_partial_sum,
    solve,
    total_variation,
)

print("Δ ∩ [0, 40]:", pd_enumerate(0, 40))

omega = solve(comb(1), SetIndicator())
print("solution head :", omega.head)
print("solution terms:", omega.describe())
print("is a measure  :", omega.is_measure)

# %%
# Growth of the total variation of the partial sums of δ̂_Δ on [0, 1/4].
s = pd_formal_fourier(0)
print()
print(" N   TV on [0, 1/4]")
for n in range(9):
    print(f"{n:2d}   {total_variation(series_partial_sum(s, n), 0, Fraction(1, 4)):.6f}")

# %%
# With damping ε the same quantity on [0, 1] levels off.
for eps in (1, 0.5, 0.25):
    rho = pd_formal_fourier(eps)
    tv = [total_variation(series_partial_sum(rho, n), 0, 1) for n in range(9)]
    print(f"eps = {eps:<5} TV: " + " ".join(f"{v:.3f}" for v in tv))

# %%
# Paired with a narrow Gaussian the damped measures approach the
# undamped distribution.
sigma = 0.05
limit = pair_with_gaussian(s, 0.0, sigma).real
print()
print(f"pairing at eps = 0      : {limit:.12f}")
for j in (1, 5, 10, 20):
    value = pair_with_gaussian(pd_formal_fourier(2.0**-j), 0.0, sigma).real
    print(f"pairing at eps = 2^-{j:<3d}: {value:.12f}  (gap {abs(value - limit):.2e})")

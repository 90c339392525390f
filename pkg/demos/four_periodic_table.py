"""
All four-periodic structures with diffraction δ_ℤ
=================================================

Splitting ℤ into four residue classes and giving them the amplitudes
(1, α, e, ᾱ) with |α| = 1 and e = ±1 exhausts the real solutions that are
constant on each class.  Here we rebuild the eight cells for t_α ∈ {0, ¼, ½, ¾}
and check each one against the forward diffraction.
"""

from fractions import Fraction

from homometry import ResidueClasses, comb, diffraction, solve, table_cells

Z = comb(1)

print(f"{'t_alpha':>7} {'e':>3}  weights on 0, 1/4, 1/2, 3/4")
for t, e, cell in table_cells():
    weights = [cell.combs[0].weight_at(Fraction(j, 4)).real if cell.combs else 0.0 for j in range(4)]
    print(f"{str(t):>7} {e:+3d}  {[round(w, 12) + 0.0 for w in weights]}  δ_ℤ: {diffraction(cell) == Z}")

# %%
# The same cells come out of the general solver when the phases are given as
# turns per residue class.  The third class carries e, the fourth the
# conjugate of α.
phases = ResidueClasses(4, (0, Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)))
print()
print("solve(δ_ℤ, (0, ¼, ½, ¾)) =", solve(Z, phases))

# Any turn works, not only quarter turns.
t = 0.1
phases = ResidueClasses.hermitian(4, [t, 0])
omega = solve(Z, phases)
print(f"solve(δ_ℤ, t = {t})     =", omega)
print("diffraction             =", diffraction(omega))

"""Square well: bound states, scattering data and resonances.

A well of depth 10 and width pi sits in a background with k^2 = 1.  Below the
continuum the profile carries a few guided modes, and above it the generalized
eigenfunctions conserve flux.

Continued into the lower half plane, the Robin determinant vanishes at
scattering resonances.
"""
import numpy as np

from stratwave import (Rectangle, eigenfunction_family, find_guided_modes, find_resonances,
                       make_square_well, robin_determinant)

prof = make_square_well(1.0, 10.0, np.pi)

print("guided modes (lambda_n, decay rates)")
for m in find_guided_modes(prof):
    print(f"  {m.lambda_n: .10f}   {m.kappa_minus:.6f}  {m.kappa_plus:.6f}")

lam = np.array([0.5, 2.0, 8.0, 20.0])
fam = eigenfunction_family(lam, "+", prof)
flux = np.abs(fam.R) ** 2 + (fam.beta_minus / fam.beta_plus).real * np.abs(fam.T) ** 2
print("\nscattering from the right")
for l, r, t, f in zip(lam, fam.R, fam.T, flux):
    print(f"  lambda={l:5.1f}  |R|={abs(r):.6f}  |T|={abs(t):.6f}  flux={f:.15f}")

zs = find_resonances(prof, Rectangle(0.0, 60.0, -20.0, -0.5))
print("\nresonances in [0, 60] x [-20, -0.5]")
for z in zs:
    print(f"  {z.real:9.4f} {z.imag:+9.4f}j   |det| = {abs(robin_determinant(np.array([z]), prof)[0]):.1e}")

"""Generalized Fourier transform on a two-layer medium.

A Gaussian straddling the interface is transformed, the Plancherel identity
is checked, and the operator -d^2/dx^2 - k^2(x) is seen to act as
multiplication by lambda on the transform side.  Raising the spectral cut-off
shows how fast the truncated transform converges.
"""
import numpy as np

from stratwave import GaussianPacket, Transform, diagonalization_check, make_two_layer

prof = make_two_layer(3.0, 2.0)
tr = Transform(prof)
phi = GaussianPacket(0.3, 1.0, 1.0 + 0.5j, 1.2)

c = tr.forward(phi)
print(f"||phi||^2 = {c.input_norm_sq:.12f}")
print(f"||phi_hat||^2 = {c.norm_sq():.12f}")
print(f"diagonalization error = {diagonalization_check(phi, prof, a_phi=phi.operator(prof), transform=tr):.2e}")

x = np.linspace(-3, 3, 7)
back = tr.inverse(tr.forward(phi, t_max=160.0), x)
print(f"pointwise round trip at t_max=160: {np.max(np.abs(back - phi(x))):.2e}")

print("\ncut-off   Plancherel error")
for t_max in (5.0, 10.0, 20.0, 40.0):
    ci = tr.forward(phi, t_max=t_max)
    print(f"{t_max:7.1f}   {abs(ci.norm_sq() - ci.input_norm_sq) / ci.input_norm_sq:.3e}")

"""Closed-form eigenfunctions and scattering data of a two-layer medium.

The medium is ``K^2 = k_minus^2`` for ``x < 0`` and ``k_plus^2`` for ``x > 0``.
Wave numbers ``beta = sqrt(lambda + k^2)`` use the principal root, so that
``beta = i sqrt(-lambda - k^2)`` for real ``lambda < -k^2`` and ``Re beta > 0``
off the cut.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BranchCutError, SpectralDomainError

CUT_TOL = 1e-14


def _as_complex(lam):
    z = np.asarray(lam, dtype=complex)
    # A negative zero imaginary part would select the lower side of the cut.
    return np.where(z.imag == 0, z.real + 0j, z)


def beta(lam, k_sq):
    """Principal ``sqrt(lam + k_sq)``.

    Real ``lam`` below ``-k_sq`` gives ``i sqrt(-lam - k_sq)``.  Points within
    ``CUT_TOL`` of the cut (but not on the real axis) raise ``BranchCutError``.
    """
    z = _as_complex(lam) + k_sq
    bad = (z.imag != 0) & (np.abs(z.imag) < CUT_TOL) & (z.real <= 0)
    if np.any(bad):
        raise BranchCutError(f"lambda too close to the branch cut (-inf, {-k_sq}]")
    out = np.sqrt(z)
    if np.ndim(lam) == 0:
        return complex(out)
    return out


@dataclass(frozen=True)
class ScatteringData:
    """Wave numbers and reflection/transmission coefficients at one ``lambda``."""

    beta_minus: complex
    beta_plus: complex
    R_plus: complex
    R_minus: complex
    T_plus: complex
    T_minus: complex

    def R(self, side):
        return self.R_plus if side == "+" else self.R_minus

    def T(self, side):
        return self.T_plus if side == "+" else self.T_minus


def scattering_coefficients(lam, k_minus, k_plus):
    """Reflection and transmission coefficients for unit incidence from either side.

    Returns
    -------
    ScatteringData
        Scalar or array entries following the shape of ``lam``.
    """
    bm = beta(lam, k_minus ** 2)
    bp = beta(lam, k_plus ** 2)
    den = bp + bm
    if np.any(np.abs(den) == 0):
        raise SpectralDomainError("beta_plus + beta_minus vanishes")
    return ScatteringData(bm, bp, (bp - bm) / den, (bm - bp) / den,
                          2 * bp / den, 2 * bm / den)


def psi_two_layer(lam, x, side, k_minus, k_plus):
    """Generalized eigenfunction ``Psi^side(lam, x)`` of the two-layer medium.

    ``Psi+`` is a unit wave incoming from ``x = +inf``, ``Psi-`` from
    ``x = -inf``.  Broadcasts over ``lam`` and ``x``.
    """
    sd = scattering_coefficients(lam, k_minus, k_plus)
    x = np.asarray(x, dtype=float)
    bm, bp = sd.beta_minus, sd.beta_plus
    if side == "+":
        right = np.exp(-1j * bp * x) + sd.R_plus * np.exp(1j * bp * x)
        left = sd.T_plus * np.exp(-1j * bm * x)
    elif side == "-":
        left = np.exp(1j * bm * x) + sd.R_minus * np.exp(-1j * bm * x)
        right = sd.T_minus * np.exp(1j * bp * x)
    else:
        raise ValueError(f"side must be '+' or '-', got {side!r}")
    out = np.where(x >= 0, right, left)
    if out.ndim == 0:
        return complex(out)
    return out


def rho_weight(lam, k_sq):
    """Spectral weight ``1 / (4 pi sqrt(lam + k_sq))`` on ``lam > -k_sq``."""
    lam = np.asarray(lam, dtype=float)
    if np.any(lam <= -k_sq):
        raise SpectralDomainError(f"rho is defined only for lambda > {-k_sq}")
    out = 1.0 / (4 * np.pi * np.sqrt(lam + k_sq))
    if out.ndim == 0:
        return float(out)
    return out


def flux_defect(lam, k_minus, k_plus, side="+"):
    """``|R|^2 + (beta_other / beta_side) |T|^2 - 1`` for real propagating ``lam``."""
    sd = scattering_coefficients(lam, k_minus, k_plus)
    if side == "+":
        return abs(sd.R_plus) ** 2 + (sd.beta_minus / sd.beta_plus).real * abs(sd.T_plus) ** 2 - 1
    return abs(sd.R_minus) ** 2 + (sd.beta_plus / sd.beta_minus).real * abs(sd.T_minus) ** 2 - 1

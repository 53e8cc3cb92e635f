"""Spectral objects of a general piecewise-constant stratification.

Everything is built from the canonical solutions ``c`` and ``s`` of
``-u'' - (K^2 + lambda) u = 0`` normalised at ``x_minus``::

    c(x_minus) = 1, c'(x_minus) = 0,   s(x_minus) = 0, s'(x_minus) = 1.

On a layer with constant ``K^2`` the propagation over a length ``h`` is exact,
so no ODE stepping error enters any of the quantities below.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq

from .errors import ConvergenceError, NotApplicableError, ResonancePoleError
from .profile import StratifiedProfile
from .twolayer import beta

SERIES_TOL = 1e-4
DET_TOL = 1e-300


def _cos_sinc(g2, h):
    """``cos(g h)`` and ``sin(g h) / g`` as entire functions of ``g2 = g^2``.

    Both are even in ``g``, so the branch of ``sqrt(g2)`` is irrelevant.  A
    Taylor series takes over below ``|g h| < SERIES_TOL``.
    """
    g2 = np.asarray(g2, dtype=complex)
    h = np.asarray(h, dtype=float)
    z = g2 * h * h
    g = np.sqrt(g2)
    small = np.abs(z) < SERIES_TOL ** 2
    gs = np.where(small, 1.0, g)
    cos = np.where(small, 1 - z / 2 + z * z / 24, np.cos(g * h))
    sinc = np.where(small, h * (1 - z / 6 + z * z / 120), np.sin(g * h) / gs)
    return cos, sinc


def piece_transfer(lam, k_sq, h):
    """Transfer matrix over a constant layer, shape ``lam.shape + (2, 2)``.

    Acts on ``(u, u')`` column vectors.
    """
    g2 = np.asarray(lam, dtype=complex) + k_sq
    cos, sinc = _cos_sinc(g2, h)
    out = np.empty(np.broadcast(g2, np.asarray(h)).shape + (2, 2), dtype=complex)
    out[..., 0, 0] = cos
    out[..., 0, 1] = sinc
    out[..., 1, 0] = -g2 * sinc
    out[..., 1, 1] = cos
    return out


@dataclass
class CanonicalSolutionPair:
    """Values of ``c, c', s, s'`` at sample points for one ``lambda``.

    ``samples`` has rows ``(x, c, c', s, s')``; ``transfer_matrix`` maps
    ``(u, u')`` at ``x_minus`` to ``x_plus``.
    """

    lam: complex
    samples: np.ndarray
    transfer_matrix: np.ndarray

    @property
    def x(self):
        return self.samples[:, 0].real

    def wronskian(self):
        _, c, cp, s, sp = self.samples.T
        return c * sp - s * cp


def _states_at_breaks(lam, profile):
    """Fundamental matrices ``[[c, s], [c', s']]`` at every interior break.

    Returns an array of shape ``(n_breaks, len(lam), 2, 2)``.
    """
    lam = np.atleast_1d(np.asarray(lam, dtype=complex))
    m = np.broadcast_to(np.eye(2, dtype=complex), lam.shape + (2, 2)).copy()
    out = [m]
    for p in profile.pieces:
        m = piece_transfer(lam, p.k_sq, p.length) @ m
        out.append(m)
    return np.array(out)


def _locate(profile, x):
    """Index of the piece holding each interior ``x`` (right-continuous)."""
    starts = np.array([p.start for p in profile.pieces])
    idx = np.searchsorted(starts, x, side="right") - 1
    return np.clip(idx, 0, len(profile.pieces) - 1)


def _fundamental_at(lam, profile, x):
    """Fundamental matrix at arbitrary interior points.

    ``lam`` has shape ``(m,)`` and ``x`` shape ``(n,)``; result ``(m, n, 2, 2)``.
    """
    lam = np.atleast_1d(np.asarray(lam, dtype=complex))
    x = np.atleast_1d(np.asarray(x, dtype=float))
    brk = _states_at_breaks(lam, profile)
    if not profile.pieces:
        return np.broadcast_to(brk[0][:, None], (lam.size, x.size, 2, 2)).copy()
    idx = _locate(profile, x)
    out = np.empty((lam.size, x.size, 2, 2), dtype=complex)
    for j in np.unique(idx):
        sel = idx == j
        p = profile.pieces[j]
        h = x[sel] - p.start
        t = piece_transfer(lam[:, None], p.k_sq, h[None, :])
        out[:, sel] = t @ brk[j][:, None]
    return out


def canonical_solutions(lam, profile: StratifiedProfile, x=None) -> CanonicalSolutionPair:
    """Canonical solutions ``c``, ``s`` and their derivatives.

    Parameters
    ----------
    lam : complex
    profile : StratifiedProfile
    x : array_like, optional
        Sample points inside ``[x_minus, x_plus]``.  Defaults to the breaks.
    """
    lam = complex(lam)
    brk = _states_at_breaks(np.array([lam]), profile)[:, 0]
    if x is None:
        xs = np.concatenate([[profile.x_minus], [p.stop for p in profile.pieces]])
        mats = brk
    else:
        xs = np.asarray(x, dtype=float)
        if np.any(xs < profile.x_minus) or np.any(xs > profile.x_plus):
            raise ValueError("sample points must lie in [x_minus, x_plus]")
        mats = _fundamental_at(np.array([lam]), profile, xs)[0]
    samples = np.column_stack([xs, mats[:, 0, 0], mats[:, 1, 0], mats[:, 0, 1], mats[:, 1, 1]])
    return CanonicalSolutionPair(lam, samples, brk[-1])


def robin_determinant(lam, profile: StratifiedProfile):
    """Determinant of the Robin system; its zeros are the scattering resonances.

    Equal to ``(c' - i b+ c) - i b- (s' - i b+ s)`` at ``x_plus``.
    """
    scalar = np.ndim(lam) == 0
    lam = np.atleast_1d(np.asarray(lam, dtype=complex))
    m = _states_at_breaks(lam, profile)[-1]
    bm = beta(lam, profile.k_minus_sq)
    bp = beta(lam, profile.k_plus_sq)
    c, s, cp, sp = m[:, 0, 0], m[:, 0, 1], m[:, 1, 0], m[:, 1, 1]
    det = (cp - 1j * bp * c) - 1j * bm * (sp - 1j * bp * s)
    return complex(det[0]) if scalar else det


@dataclass
class EigenfunctionFamily:
    """Generalized eigenfunctions ``Psi^side(lambda, .)`` for an array of ``lambda``.

    ``A`` and ``B`` are the interior coefficients, ``Psi = A s + B c``; ``R`` and
    ``T`` are the exterior coefficients referred to ``x = 0``.
    """

    profile: StratifiedProfile
    side: str
    lam: np.ndarray
    A: np.ndarray
    B: np.ndarray
    R: np.ndarray
    T: np.ndarray
    beta_minus: np.ndarray
    beta_plus: np.ndarray
    det: np.ndarray

    def evaluate(self, x, derivative=False):
        """``Psi`` (and optionally ``Psi'``) on a grid, shape ``(n_lam, n_x)``."""
        pr = self.profile
        x = np.atleast_1d(np.asarray(x, dtype=float))
        bm = self.beta_minus[:, None]
        bp = self.beta_plus[:, None]
        R = self.R[:, None]
        T = self.T[:, None]
        val = np.empty((self.lam.size, x.size), dtype=complex)
        der = np.empty_like(val) if derivative else None
        left = x < pr.x_minus
        right = x >= pr.x_plus
        mid = ~(left | right)
        xl, xr = x[left][None, :], x[right][None, :]
        if self.side == "+":
            fl = T * np.exp(-1j * bm * xl)
            e_in, e_out = np.exp(-1j * bp * xr), np.exp(1j * bp * xr)
            fr = e_in + R * e_out
            if derivative:
                der[:, left] = -1j * bm * fl
                der[:, right] = -1j * bp * e_in + 1j * bp * R * e_out
        else:
            e_in, e_out = np.exp(1j * bm * xl), np.exp(-1j * bm * xl)
            fl = e_in + R * e_out
            fr = T * np.exp(1j * bp * xr)
            if derivative:
                der[:, left] = 1j * bm * e_in - 1j * bm * R * e_out
                der[:, right] = 1j * bp * fr
        val[:, left] = fl
        val[:, right] = fr
        if np.any(mid):
            # Psi = A s + B c, so its state at x_minus is (B, A).
            brk = _states_at_breaks(self.lam, pr)
            start = np.stack([self.B, self.A], axis=-1)[..., None]
            xm = x[mid]
            idx = _locate(pr, xm)
            vm = np.empty((self.lam.size, xm.size), dtype=complex)
            dm = np.empty_like(vm) if derivative else None
            for j in np.unique(idx):
                sel = idx == j
                p = pr.pieces[j]
                st = (brk[j] @ start)[..., 0]
                v0, d0 = st[:, 0:1], st[:, 1:2]
                g2 = self.lam[:, None] + p.k_sq
                cos, sinc = _cos_sinc(g2, (xm[sel] - p.start)[None, :])
                vm[:, sel] = cos * v0 + sinc * d0
                if derivative:
                    dm[:, sel] = -g2 * sinc * v0 + cos * d0
            val[:, mid] = vm
            if derivative:
                der[:, mid] = dm
        if derivative:
            return val, der
        return val


def eigenfunction_family(lam, side, profile: StratifiedProfile, pole_tol=0.0) -> EigenfunctionFamily:
    """Solve the Robin system for every ``lambda`` in ``lam``.

    Raises
    ------
    ResonancePoleError
        If ``|det| <= pole_tol`` (scaled by the size of the system) at some node.
    """
    if side not in ("+", "-"):
        raise ValueError(f"side must be '+' or '-', got {side!r}")
    lam = np.atleast_1d(np.asarray(lam, dtype=complex))
    pr = profile
    m = _states_at_breaks(lam, pr)[-1]
    bm = np.atleast_1d(beta(lam, pr.k_minus_sq))
    bp = np.atleast_1d(beta(lam, pr.k_plus_sq))
    c, s, cp, sp = m[:, 0, 0], m[:, 0, 1], m[:, 1, 0], m[:, 1, 1]
    p = sp - 1j * bp * s
    q = cp - 1j * bp * c
    det = q - 1j * bm * p
    scale = 1 + np.abs(q) + np.abs(bm * p)
    bad = np.abs(det) <= max(pole_tol, DET_TOL) * scale
    if np.any(bad):
        i = int(np.argmax(bad))
        raise ResonancePoleError(f"Robin system singular at lambda={lam[i]}", det[i])
    xm, xp = pr.x_minus, pr.x_plus
    if side == "+":
        # Rows: A + i b- B = 0,  p A + q B = L2.
        L2 = -2j * bp * np.exp(-1j * bp * xp)
        B = L2 / det
        A = -1j * bm * B
    else:
        L1 = 2j * bm * np.exp(1j * bm * xm)
        B = -p * L1 / det
        A = q * L1 / det
    psi_xp = c * B + s * A
    if side == "+":
        T = B * np.exp(1j * bm * xm)
        R = (psi_xp - np.exp(-1j * bp * xp)) * np.exp(-1j * bp * xp)
    else:
        R = (B - np.exp(1j * bm * xm)) * np.exp(1j * bm * xm)
        T = psi_xp * np.exp(-1j * bp * xp)
    return EigenfunctionFamily(pr, side, lam, A, B, R, T, bm, bp, det)


@dataclass
class GeneralizedEigenfunction:
    """``Psi^side(lambda, .)`` at a single ``lambda``."""

    lam: complex
    side: str
    A: complex
    B: complex
    R: complex
    T: complex
    family: EigenfunctionFamily = field(repr=False)

    def __call__(self, x):
        out = self.family.evaluate(x)[0]
        return complex(out[0]) if np.ndim(x) == 0 else out

    def derivative(self, x):
        out = self.family.evaluate(x, derivative=True)[1][0]
        return complex(out[0]) if np.ndim(x) == 0 else out

    def robin_residuals(self):
        """Residuals of both Robin conditions."""
        pr = self.family.profile
        bm, bp = self.family.beta_minus[0], self.family.beta_plus[0]
        xs = np.array([pr.x_minus, pr.x_plus])
        v = self.family.evaluate(xs)[0]
        if pr.pieces:
            # Interior limits at both ends.
            f = _fundamental_at(self.family.lam, pr, xs)[0]
            v = f[:, 0, 0] * self.B + f[:, 0, 1] * self.A
            d = f[:, 1, 0] * self.B + f[:, 1, 1] * self.A
        else:
            v = np.array([self.B, self.B])
            d = np.array([self.A, self.A])
        if self.side == "+":
            rhs = (0.0, -2j * bp * np.exp(-1j * bp * pr.x_plus))
        else:
            rhs = (2j * bm * np.exp(1j * bm * pr.x_minus), 0.0)
        r1 = d[0] + 1j * bm * v[0] - rhs[0]
        r2 = d[1] - 1j * bp * v[1] - rhs[1]
        return complex(r1), complex(r2)


def assemble_eigenfunction(lam, side, profile: StratifiedProfile,
                           pole_tol=1e-12) -> GeneralizedEigenfunction:
    """Generalized eigenfunction from the Robin system at one ``lambda``.

    Raises ``ResonancePoleError`` when the scaled Robin determinant is below
    ``pole_tol``.
    """
    fam = eigenfunction_family(np.array([lam]), side, profile, pole_tol=pole_tol)
    return GeneralizedEigenfunction(complex(lam), side, complex(fam.A[0]), complex(fam.B[0]),
                                    complex(fam.R[0]), complex(fam.T[0]), fam)


# --------------------------------------------------------------------------
# guided modes


def guided_window(profile: StratifiedProfile):
    """Open interval ``(-k_M^2, -max k_pm^2)`` holding the point spectrum."""
    return -profile.k_M_sq, -max(profile.k_minus_sq, profile.k_plus_sq)


def dispersion_function(lam, profile: StratifiedProfile):
    """Shooting function whose zeros in the guided window are eigenvalues.

    Starts from ``(1, kappa_minus)`` at ``x_minus`` and returns
    ``psi'(x_plus) + kappa_plus psi(x_plus)``.  Real for real ``lambda`` in the
    window and analytic nearby.
    """
    lam_c = np.asarray(lam, dtype=complex)
    km = np.sqrt(-lam_c - profile.k_minus_sq)
    kp = np.sqrt(-lam_c - profile.k_plus_sq)
    m = _states_at_breaks(np.atleast_1d(lam_c), profile)[-1]
    c, s, cp, sp = m[:, 0, 0], m[:, 0, 1], m[:, 1, 0], m[:, 1, 1]
    km1, kp1 = np.atleast_1d(km), np.atleast_1d(kp)
    val = cp + km1 * sp + kp1 * (c + km1 * s)
    if np.ndim(lam) == 0:
        return complex(val[0])
    return val


@dataclass
class GuidedMode:
    """Normalized real guided mode ``psi_n`` with exponential tails."""

    lambda_n: float
    kappa_minus: float
    kappa_plus: float
    scale: float
    profile: StratifiedProfile = field(repr=False)
    norm: float = 1.0

    def _interior(self, x):
        f = _fundamental_at(np.array([self.lambda_n]), self.profile, x)[0]
        v = f[:, 0, 0] + self.kappa_minus * f[:, 0, 1]
        d = f[:, 1, 0] + self.kappa_minus * f[:, 1, 1]
        return v.real, d.real

    def _edge_values(self):
        pr = self.profile
        if pr.pieces:
            v, _ = self._interior(np.array([pr.x_plus]))
            return float(v[0])
        return 1.0

    def evaluate(self, x, derivative=False):
        """``psi_n(x)`` and optionally ``psi_n'(x)``."""
        pr = self.profile
        xa = np.atleast_1d(np.asarray(x, dtype=float))
        val = np.empty(xa.shape)
        der = np.empty(xa.shape)
        left = xa < pr.x_minus
        right = xa >= pr.x_plus
        mid = ~(left | right)
        el = np.exp(self.kappa_minus * (xa[left] - pr.x_minus))
        val[left], der[left] = el, self.kappa_minus * el
        vp = self._edge_values()
        er = vp * np.exp(-self.kappa_plus * (xa[right] - pr.x_plus))
        val[right], der[right] = er, -self.kappa_plus * er
        if np.any(mid):
            val[mid], der[mid] = self._interior(xa[mid])
        val *= self.scale
        der *= self.scale
        if np.ndim(x) == 0:
            return (float(val[0]), float(der[0])) if derivative else float(val[0])
        return (val, der) if derivative else val

    __call__ = evaluate

    def samples(self, n_per_piece=32, tail=None):
        """``(x, psi)`` pairs covering the interior and a few decay lengths."""
        pr = self.profile
        if tail is None:
            tail = 6.0 / min(self.kappa_minus, self.kappa_plus)
        xs = [np.linspace(pr.x_minus - tail, pr.x_minus, n_per_piece, endpoint=False)]
        for p in pr.pieces:
            xs.append(np.linspace(p.start, p.stop, n_per_piece, endpoint=False))
        xs.append(np.linspace(pr.x_plus, pr.x_plus + tail, n_per_piece))
        x = np.concatenate(xs)
        return np.column_stack([x, self.evaluate(x)])

    def to_dict(self, n_per_piece=32):
        return {"lambda": self.lambda_n, "decay_minus": self.kappa_minus,
                "decay_plus": self.kappa_plus,
                "samples": self.samples(n_per_piece).tolist()}


def piece_nodes(profile: StratifiedProfile, lam_max_sq: float, per_wavelength=8, n_min=24):
    """Gauss-Legendre nodes and weights over every interior piece.

    The node count per piece grows with the local oscillation
    ``sqrt(|lam_max_sq + K^2|) h``.
    """
    xs, ws = [], []
    for p in profile.pieces:
        osc = math.sqrt(abs(lam_max_sq + p.k_sq)) * p.length / (2 * math.pi)
        n = int(max(n_min, per_wavelength * osc + n_min))
        t, w = np.polynomial.legendre.leggauss(n)
        xs.append(p.start + 0.5 * p.length * (t + 1))
        ws.append(0.5 * p.length * w)
    if not xs:
        return np.empty(0), np.empty(0)
    return np.concatenate(xs), np.concatenate(ws)


def _mode_from_root(lam_n, profile):
    km = math.sqrt(-lam_n - profile.k_minus_sq)
    kp = math.sqrt(-lam_n - profile.k_plus_sq)
    raw = GuidedMode(lam_n, km, kp, 1.0, profile)
    x, w = piece_nodes(profile, lam_n)
    interior = float(np.sum(w * raw.evaluate(x) ** 2)) if x.size else 0.0
    vp = raw._edge_values()
    total = interior + 1.0 / (2 * km) + vp ** 2 / (2 * kp)
    raw.scale = 1.0 / math.sqrt(total)
    return raw


def find_guided_modes(profile: StratifiedProfile, tol=1e-12, n_grid=2048):
    """Eigenvalues and normalized guided modes, sorted by eigenvalue.

    Sign changes of the dispersion function on a uniform grid over the open
    window bracket the roots; each is refined with ``brentq`` and one Newton
    step (complex-step derivative).  The grid is refined geometrically toward
    both window edges so that weakly bound modes are not missed.
    """
    lo, hi = guided_window(profile)
    if not lo < hi:
        return []
    width = hi - lo
    edge = width * np.logspace(-15, 0, 61)[:-1] / (n_grid + 1)
    grid = np.unique(np.concatenate([np.linspace(lo, hi, n_grid + 2)[1:-1], lo + edge, hi - edge]))
    grid = grid[(grid > lo) & (grid < hi)]
    d = dispersion_function(grid, profile).real
    f = lambda t: dispersion_function(t, profile).real
    modes = []
    for i in np.nonzero(np.sign(d[:-1]) * np.sign(d[1:]) <= 0)[0]:
        a, b = grid[i], grid[i + 1]
        if d[i] == 0:
            root = a
        elif d[i + 1] == 0:
            continue
        else:
            try:
                root = brentq(f, a, b, xtol=tol * max(1.0, abs(a)), rtol=4 * np.finfo(float).eps,
                              maxiter=200)
            except (RuntimeError, ValueError) as exc:
                raise ConvergenceError(f"root refinement failed in [{a}, {b}]",
                                       {"bracket": (a, b), "values": (d[i], d[i + 1])}) from exc
        h = 1e-20 * max(1.0, abs(root))
        slope = dispersion_function(complex(root, h), profile).imag / h
        if slope != 0:
            step = f(root) / slope
            if abs(step) < (b - a):
                root -= step
        modes.append(_mode_from_root(float(root), profile))
    return modes


def check_existence_condition(profile: StratifiedProfile) -> bool:
    """Sufficient condition for a guided mode with equal exterior values."""
    if profile.k_minus_sq != profile.k_plus_sq:
        raise NotApplicableError("the criterion needs equal exterior wavenumbers")
    integral = sum((p.k_sq - profile.k_plus_sq) * p.length for p in profile.pieces)
    return integral > 0


def mode_gram_matrix(modes):
    """Gram matrix of guided modes with exact tail contributions."""
    n = len(modes)
    g = np.zeros((n, n))
    if not n:
        return g
    pr = modes[0].profile
    lam_min = min(m.lambda_n for m in modes)
    x, w = piece_nodes(pr, lam_min)
    vals = [m.evaluate(x) if x.size else np.empty(0) for m in modes]
    for i, mi in enumerate(modes):
        for j, mj in enumerate(modes):
            inner = float(np.sum(w * vals[i] * vals[j])) if x.size else 0.0
            ri = mi.evaluate(pr.x_plus)
            rj = mj.evaluate(pr.x_plus)
            inner += mi.scale * mj.scale / (mi.kappa_minus + mj.kappa_minus)
            inner += ri * rj / (mi.kappa_plus + mj.kappa_plus)
            g[i, j] = inner
    return g


# --------------------------------------------------------------------------
# resonances


@dataclass
class Rectangle:
    """Axis-aligned rectangle ``[re0, re1] x [im0, im1]`` in the lambda plane."""

    re0: float
    re1: float
    im0: float
    im1: float

    def __post_init__(self):
        if not (self.re0 < self.re1 and self.im0 < self.im1):
            raise ValueError(f"degenerate rectangle {self}")

    def contains(self, z):
        return self.re0 <= z.real <= self.re1 and self.im0 <= z.imag <= self.im1

    @property
    def corners(self):
        return (complex(self.re0, self.im0), complex(self.re1, self.im0),
                complex(self.re1, self.im1), complex(self.re0, self.im1))

    def split(self, frac=0.5):
        w, h = self.re1 - self.re0, self.im1 - self.im0
        if w >= h:
            m = self.re0 + frac * w
            return [Rectangle(self.re0, m, self.im0, self.im1), Rectangle(m, self.re1, self.im0, self.im1)]
        m = self.im0 + frac * h
        return [Rectangle(self.re0, self.re1, self.im0, m), Rectangle(self.re0, self.re1, m, self.im1)]

    @property
    def size(self):
        return max(self.re1 - self.re0, self.im1 - self.im0)


class _OnContour(Exception):
    pass


def _edge_winding(f, a, b, n0=16, max_depth=40):
    """Change of ``arg f`` along the segment ``[a, b]`` with adaptive sampling.

    Consecutive samples are refined until the phase increment is below
    ``pi / 4``.  Raises ``_OnContour`` when ``f`` is numerically zero on the edge.
    """
    t = np.linspace(0.0, 1.0, n0 + 1)
    z = a + (b - a) * t
    v = f(z)
    total = 0.0
    stack = list(zip(t[:-1], t[1:], v[:-1], v[1:]))[::-1]
    while stack:
        t0, t1, v0, v1 = stack.pop()
        if v0 == 0 or v1 == 0:
            raise _OnContour
        d = np.angle(v1 / v0)
        if abs(d) < np.pi / 4:
            total += d
            continue
        key = round(math.log2(1.0 / (t1 - t0)))
        if key > max_depth:
            raise _OnContour
        tm = 0.5 * (t0 + t1)
        vm = f(np.array([a + (b - a) * tm]))[0]
        stack.append((tm, t1, vm, v1))
        stack.append((t0, tm, v0, vm))
    return total


def winding_count(f, rect: Rectangle):
    """Number of zeros of ``f`` inside ``rect`` by the argument principle."""
    c = rect.corners
    total = sum(_edge_winding(f, c[i], c[(i + 1) % 4]) for i in range(4))
    return int(round(total / (2 * np.pi)))


def _newton(f, z, rect, tol, maxiter=60):
    for _ in range(maxiter):
        h = 1e-7 * max(1.0, abs(z))
        df = (f(np.array([z + h]))[0] - f(np.array([z - h]))[0]) / (2 * h)
        if df == 0:
            break
        step = f(np.array([z]))[0] / df
        z = z - step
        if abs(step) < tol * max(1.0, abs(z)):
            return z
    return z


def _check_region(profile, rect, tube):
    cut = -min(profile.k_minus_sq, profile.k_plus_sq)
    if rect.re0 <= cut and rect.im0 <= tube and rect.im1 >= -tube:
        raise ValueError("search region meets the branch cut tube")


def find_resonances(profile: StratifiedProfile, region: Rectangle, min_size=1e-3,
                    tol=1e-12, tube=1e-6, max_retries=8):
    """Zeros of the Robin determinant inside ``region``.

    The rectangle is split until every piece contains at most one zero, which
    is then polished by Newton iteration.  Splitting lines that hit a zero are
    shifted and retried.
    """
    _check_region(profile, region, tube)
    f = lambda z: robin_determinant(z, profile)
    found = []
    stack = [region]
    while stack:
        rect = stack.pop()
        count = None
        for attempt in range(max_retries + 1):
            try:
                count = winding_count(f, rect)
                break
            except _OnContour:
                # Nudge the rectangle outward by a tiny irrational fraction.
                eps = 1e-7 * (attempt + 1) * math.sqrt(2) * rect.size
                rect = Rectangle(rect.re0 - eps, rect.re1 + eps * 0.7, rect.im0 - eps * 0.3,
                                 rect.im1 + eps * 1.1)
        if count is None:
            raise ConvergenceError("zero on contour persisted after perturbation", {"rect": rect})
        if count <= 0:
            continue
        if count == 1 or rect.size < min_size:
            z0 = complex(0.5 * (rect.re0 + rect.re1), 0.5 * (rect.im0 + rect.im1))
            z = _newton(f, z0, rect, tol)
            if not rect.contains(z) or abs(f(np.array([z]))[0]) > 1e-6 * (1 + abs(z)):
                if rect.size < min_size:
                    found.append(z)
                    continue
                stack.extend(rect.split(0.5 + 0.01 * math.pi / 10))
                continue
            found.append(z)
            continue
        stack.extend(rect.split(0.5 + 0.013 * math.sqrt(3)))
    found.sort(key=lambda z: (z.real, z.imag))
    return found

"""Generalized Fourier transform of a stratified transverse operator.

For ``A = -d^2/dx^2 - K^2(x)`` the transform sends ``phi`` to

* ``phi_hat^pm(lambda) = int phi(x) conj(Psi^pm(lambda, x)) dx`` on
  ``Lambda^pm = (-k_pm^2, inf)`` with weight ``rho^pm = 1 / (4 pi beta^pm)``,
* ``phi_hat^n = int phi psi_n dx`` for each guided mode.

Spectral integrals are discretised in ``t = beta^pm`` so that
``rho^pm d lambda = dt / (2 pi)``.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidProfileError, SpectralDomainError, TruncationWarning
from .ode_spectral import eigenfunction_family, find_guided_modes
from .profile import StratifiedProfile
from .quadrature import QuadratureSpec, t_rule, x_rule

BLOCK_T = 2.0


@dataclass
class SpectralDensity:
    """Samples of ``phi_hat`` on one branch with quadrature weights.

    ``weights`` already include ``rho d lambda``, so that
    ``sum(weights * |values|^2)`` approximates the branch part of the norm.
    """

    branch: str
    nodes: np.ndarray
    values: np.ndarray
    weights: np.ndarray
    k_sq: float

    @property
    def t(self):
        return np.sqrt(self.nodes + self.k_sq)

    def norm_sq(self):
        return float(np.sum(self.weights * np.abs(self.values) ** 2))

    def weighted_l1(self, s=0.0):
        lam = self.nodes
        return float(np.sum(self.weights * np.abs(lam) ** s * np.abs(self.values)))

    def with_values(self, values):
        return SpectralDensity(self.branch, self.nodes, np.asarray(values, dtype=complex),
                               self.weights, self.k_sq)

    def to_dict(self):
        return {"branch": self.branch, "nodes": self.nodes.tolist(),
                "values_re": self.values.real.tolist(), "values_im": self.values.imag.tolist(),
                "weights": self.weights.tolist()}


@dataclass
class SpectralCoefficients:
    """Continuous densities on both branches plus guided-mode coefficients."""

    minus: SpectralDensity
    plus: SpectralDensity
    point: np.ndarray
    modes: list = field(default_factory=list, repr=False)
    x_nodes: np.ndarray | None = field(default=None, repr=False)
    x_weights: np.ndarray | None = field(default=None, repr=False)
    input_norm_sq: float | None = None

    def density(self, branch):
        return self.plus if branch == "+" else self.minus

    def norm_sq(self):
        return self.minus.norm_sq() + self.plus.norm_sq() + float(np.sum(np.abs(self.point) ** 2))

    def to_dict(self):
        return {"minus": self.minus.to_dict(), "plus": self.plus.to_dict(),
                "point_re": np.real(self.point).tolist(), "point_im": np.imag(self.point).tolist(),
                "eigenvalues": [m.lambda_n for m in self.modes]}


class GaussianPacket:
    """``amplitude * exp(-((x - center) / width)^2 + i frequency x)``.

    Smooth, so ``A phi = -phi'' - K^2 phi`` is available in closed form for
    any piecewise-constant profile.
    """

    def __init__(self, center=0.0, width=1.0, amplitude=1.0, frequency=0.0):
        if width <= 0:
            raise ValueError("width must be positive")
        self.center = float(center)
        self.width = float(width)
        self.amplitude = complex(amplitude)
        self.frequency = float(frequency)

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        s = (x - self.center) / self.width
        return self.amplitude * np.exp(-s * s + 1j * self.frequency * x)

    def second_derivative(self, x):
        x = np.asarray(x, dtype=float)
        g = -2 * (x - self.center) / self.width ** 2 + 1j * self.frequency
        return self(x) * (g * g - 2 / self.width ** 2)

    def operator(self, profile):
        """``A phi`` as a callable."""
        return lambda x: -self.second_derivative(x) - profile(x) * self(x)

    def norm_sq(self):
        return abs(self.amplitude) ** 2 * self.width * math.sqrt(math.pi / 2)

    def to_dict(self):
        return {"kind": "gaussian", "center": self.center, "width": self.width,
                "amplitude": [self.amplitude.real, self.amplitude.imag],
                "frequency": self.frequency}

    @classmethod
    def from_dict(cls, d):
        if d.get("kind", "gaussian") != "gaussian":
            raise ValueError(f"unknown function kind {d.get('kind')!r}")
        amp = d.get("amplitude", 1.0)
        if isinstance(amp, (list, tuple)):
            amp = complex(amp[0], amp[1])
        return cls(d.get("center", 0.0), d["width"], amp, d.get("frequency", 0.0))


def _k_eff(profile, t_max):
    return math.sqrt(max(t_max ** 2 - min(profile.k_minus_sq, profile.k_plus_sq), 0.0)
                     + profile.k_max_sq)


def branch_rule(profile: StratifiedProfile, branch, t_lo, t_hi, spec: QuadratureSpec,
                half_width=None):
    """``lambda`` nodes and ``rho d lambda`` weights on ``t in [t_lo, t_hi]``."""
    k_this = profile.exterior_k_sq(branch)
    k_other = profile.exterior_k_sq("-" if branch == "+" else "+")
    X = spec.half_width if half_width is None else half_width
    t, w = t_rule(t_lo, t_hi, k_this, k_other, spec.phase / X, spec.order, spec.edge_panels)
    return t * t - k_this, w / (2 * np.pi)


def psi_matrix(profile, branch, lam, x):
    """``Psi^branch(lam_j, x_i)`` as an array of shape ``(len(lam), len(x))``."""
    fam = eigenfunction_family(lam, branch, profile)
    return fam.evaluate(x)


class Transform:
    """Discretised transform for one profile and quadrature spec.

    The guided modes and the x-rule are computed once and reused.
    """

    def __init__(self, profile: StratifiedProfile, spec: QuadratureSpec | None = None,
                 modes=None):
        self.profile = profile
        self.spec = spec or QuadratureSpec()
        self.modes = find_guided_modes(profile) if modes is None else list(modes)

    # x side
    def x_rule(self, t_max):
        return x_rule(self.profile, self.spec, _k_eff(self.profile, t_max))

    def _sample(self, phi, x):
        vals = phi(x) if callable(phi) else np.asarray(phi)
        vals = np.asarray(vals, dtype=complex)
        if vals.shape != x.shape:
            raise ValueError("phi samples do not match the quadrature nodes")
        return vals

    def _truncation_check(self, phi, x, vals):
        if not callable(phi):
            return
        a, b = self.spec.window
        edge = np.abs(np.asarray(phi(np.array([a, b])), dtype=complex))
        peak = np.max(np.abs(vals)) if vals.size else 0.0
        if peak > 0 and np.max(edge) > 1e-10 * peak:
            warnings.warn(f"input does not decay inside the window {self.spec.window}: "
                          f"edge/peak = {np.max(edge) / peak:.2e}", TruncationWarning, stacklevel=3)

    def _fixed_branch(self, branch, x, wv, t_hi):
        pr = self.profile
        lam, w = branch_rule(pr, branch, 0.0, t_hi, self.spec)
        vals = psi_matrix(pr, branch, lam, x).conj() @ wv
        return SpectralDensity(branch, lam, vals, w, pr.exterior_k_sq(branch))

    def _adaptive(self, phi):
        """Both branches with an adaptive cut-off.

        Blocks in ``t`` are appended until one adds less than ``tail_tol`` of
        the accumulated norm of the branch (or of the input, if larger).  Inputs crossing a jump of ``K^2`` have
        algebraically decaying transforms, so the test is on the norm.  When a
        block would exceed what the x-rule resolves, the x-rule is refined and
        the blocks already computed are kept.
        """
        pr, spec = self.profile, self.spec
        t_res = self._t_guess()
        x, w = self.x_rule(t_res)
        vals = self._sample(phi, x)
        wv = w * vals
        # A branch carrying almost none of the input is measured against the input norm.
        ref = float(np.sum(w * np.abs(vals) ** 2))
        state = {}
        for b in ("-", "+"):
            state[b] = {"lo": 0.0, "hi": math.sqrt(pr.exterior_k_sq(b)) + BLOCK_T,
                        "total": 0.0, "parts": [], "done": False}
        while not all(st["done"] for st in state.values()):
            for b, st in state.items():
                while not st["done"] and st["hi"] <= t_res:
                    lam, wt = branch_rule(pr, b, st["lo"], st["hi"], spec)
                    vals = psi_matrix(pr, b, lam, x).conj() @ wv
                    st["parts"].append((lam, wt, vals))
                    block = float(np.sum(wt * np.abs(vals) ** 2))
                    st["total"] += block
                    if block <= spec.tail_tol * max(st["total"], ref) or st["total"] == 0.0:
                        st["done"] = True
                    elif st["hi"] >= spec.max_t:
                        warnings.warn("spectral cut-off reached max_t before the transform "
                                      "decayed", TruncationWarning, stacklevel=4)
                        st["done"] = True
                    else:
                        st["lo"], st["hi"] = st["hi"], st["hi"] + max(BLOCK_T, 0.25 * st["hi"])
            if not all(st["done"] for st in state.values()):
                need = max(st["hi"] for st in state.values() if not st["done"])
                t_res = max(2.0 * t_res, need)
                x, w = self.x_rule(t_res)
                wv = w * self._sample(phi, x)
        dens = []
        for b in ("-", "+"):
            parts = state[b]["parts"]
            dens.append(SpectralDensity(b, np.concatenate([p[0] for p in parts]),
                                        np.concatenate([p[2] for p in parts]),
                                        np.concatenate([p[1] for p in parts]),
                                        pr.exterior_k_sq(b)))
        return dens[0], dens[1], x, w

    def forward(self, phi, t_max=None, like=None) -> SpectralCoefficients:
        """Transform ``phi``.

        Parameters
        ----------
        phi : callable or array
            Function of ``x``, or samples at the x-nodes of ``like`` (or of
            :meth:`nodes` for a fixed cut-off).
        t_max : float, optional
            Fixed spectral cut-off in ``t``; adaptive when omitted.
        like : SpectralCoefficients, optional
            Reuse the spectral nodes and x-rule of an earlier transform.
        """
        pr = self.profile
        t_max = self.spec.t_max if t_max is None else t_max
        if like is not None:
            x, w = like.x_nodes, like.x_weights
            wv = w * self._sample(phi, x)
            dens = []
            for d in (like.minus, like.plus):
                vals = psi_matrix(pr, d.branch, d.nodes, x).conj() @ wv if d.nodes.size \
                    else np.zeros(0, dtype=complex)
                dens.append(SpectralDensity(d.branch, d.nodes, vals, d.weights, d.k_sq))
            minus, plus = dens
        elif t_max is not None or not callable(phi):
            x, w = self.nodes(t_max)
            wv = w * self._sample(phi, x)
            t_hi = t_max if t_max is not None else self._t_guess()
            minus = self._fixed_branch("-", x, wv, t_hi)
            plus = self._fixed_branch("+", x, wv, t_hi)
        else:
            minus, plus, x, w = self._adaptive(phi)
        vals = self._sample(phi, x)
        wv = w * vals
        self._truncation_check(phi, x, vals)
        if self.modes:
            point = np.array([np.sum(wv * m.evaluate(x)) for m in self.modes])
        else:
            point = np.zeros(0, dtype=complex)
        out = SpectralCoefficients(minus, plus, point, self.modes)
        out.x_nodes, out.x_weights = x, w
        out.input_norm_sq = float(np.sum(w * np.abs(vals) ** 2))
        return out

    def _t_guess(self):
        # Resolution for the x-rule when the cut-off is adaptive.
        return math.sqrt(self.profile.k_max_sq) + 40.0 / self.spec.half_width + 12.0

    def nodes(self, t_max=None):
        t_guess = (self.spec.t_max if t_max is None else t_max) or self._t_guess()
        return self.x_rule(t_guess)

    def inverse(self, coeffs: SpectralCoefficients, x):
        """Synthesise ``phi(x)`` from its coefficients."""
        x = np.atleast_1d(np.asarray(x, dtype=float))
        out = np.zeros(x.shape, dtype=complex)
        for dens in (coeffs.minus, coeffs.plus):
            if dens.nodes.size:
                psi = psi_matrix(self.profile, dens.branch, dens.nodes, x)
                out += (dens.weights * dens.values) @ psi
        for c, m in zip(coeffs.point, coeffs.modes):
            out += c * m.evaluate(x)
        return out


def forward(phi, profile: StratifiedProfile, spec: QuadratureSpec | None = None, modes=None):
    """Generalized Fourier transform of ``phi``; see :class:`Transform`."""
    return Transform(profile, spec, modes).forward(phi)


def inverse(coeffs: SpectralCoefficients, profile: StratifiedProfile, x):
    return Transform(profile, modes=coeffs.modes).inverse(coeffs, x)


def plancherel_check(phi, profile: StratifiedProfile, spec: QuadratureSpec | None = None,
                     transform=None):
    """``| ||phi||^2 - ||F phi||^2 | / ||phi||^2``."""
    tr = transform or Transform(profile, spec)
    coeffs = tr.forward(phi)
    n2 = coeffs.input_norm_sq
    if n2 == 0:
        raise SpectralDomainError("relative Plancherel error undefined for phi = 0")
    return abs(n2 - coeffs.norm_sq()) / n2


def fd_operator(phi, profile: StratifiedProfile, x, h=1e-2):
    """``-phi'' - K^2 phi`` by an 8th-order central difference."""
    c = np.array([-1 / 560, 8 / 315, -1 / 5, 8 / 5, -205 / 72, 8 / 5, -1 / 5, 8 / 315, -1 / 560])
    x = np.asarray(x, dtype=float)
    d2 = sum(ci * np.asarray(phi(x + (i - 4) * h)) for i, ci in enumerate(c)) / h ** 2
    return -d2 - profile(x) * np.asarray(phi(x))


def diagonalization_check(phi, profile: StratifiedProfile, spec: QuadratureSpec | None = None,
                          a_phi=None, transform=None, fd_step=1e-2):
    """Relative weighted L2 distance between ``F(A phi)`` and ``lambda F phi``.

    ``a_phi`` gives ``A phi`` analytically.  Without it ``A phi`` is built by
    finite differences, which needs ``phi`` to vanish near every jump of ``K^2``.
    """
    tr = transform or Transform(profile, spec)
    if a_phi is None:
        jumps = profile.jump_points()
        if jumps.size:
            probe = np.concatenate([j + np.linspace(-5 * fd_step, 5 * fd_step, 21) for j in jumps])
            x, _ = tr.nodes()
            scale = np.max(np.abs(phi(x)))
            if np.max(np.abs(phi(probe))) > 1e-12 * scale:
                raise InvalidProfileError("phi does not vanish near a jump of K^2; "
                                          "supply A phi analytically")
        a_phi = lambda x: fd_operator(phi, profile, x, fd_step)
    c1 = tr.forward(phi)
    c2 = tr.forward(a_phi, like=c1)
    num = 0.0
    den = 0.0
    for d1, d2 in ((c1.minus, c2.minus), (c1.plus, c2.plus)):
        lam = d1.nodes
        num += np.sum(d1.weights * np.abs(d2.values - lam * d1.values) ** 2)
        den += np.sum(d1.weights * np.abs(lam * d1.values) ** 2)
    if c1.point.size:
        lam_n = np.array([m.lambda_n for m in c1.modes])
        num += np.sum(np.abs(c2.point - lam_n * c1.point) ** 2)
        den += np.sum(np.abs(lam_n * c1.point) ** 2)
    if den == 0:
        raise SpectralDomainError("relative error undefined for phi = 0")
    return math.sqrt(num / den)

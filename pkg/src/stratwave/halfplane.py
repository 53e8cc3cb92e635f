"""Half-plane representation of L2 Helmholtz solutions in a stratified medium.

A solution of ``Delta u + K^2(x) u = 0`` in ``{y > -epsilon}`` that is square
integrable is determined by the transform of its trace on ``y = 0``::

    u(x, y) = sum_pm int_{lambda > 0} phi_hat^pm(lambda) Psi^pm(lambda, x)
              exp(-sqrt(lambda) y) rho^pm(lambda) d lambda.

Fields are therefore stored through their trace spectra only; grids are
produced on demand.  Coordinates below are local to the half-plane unless a
function says otherwise.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import (InvalidDensityError, InvalidTraceError, InvalidTraceWarning,
                     SpectralDomainError)
from .gft import SpectralCoefficients, SpectralDensity, Transform, psi_matrix
from .profile import HalfPlaneGeometry, StratifiedProfile, default_epsilon
from .quadrature import QuadratureSpec, gauss_panels, split_interval

LEAKAGE_TOL = 1e-6


class GaussianBump:
    """Truncated Gaussian density in ``lambda``.

    The default support ``center +- 8 width`` makes the truncation jump about
    ``1e-14`` of the peak.
    """

    def __init__(self, center, width, amplitude=1.0, support=None):
        self.center = float(center)
        self.width = float(width)
        self.amplitude = complex(amplitude)
        if support is None:
            support = (self.center - 8 * self.width, self.center + 8 * self.width)
        self.support = (float(support[0]), float(support[1]))
        if not self.support[0] < self.support[1]:
            raise InvalidDensityError(f"empty support {self.support}")

    def __call__(self, lam):
        lam = np.asarray(lam, dtype=float)
        a, b = self.support
        val = self.amplitude * np.exp(-0.5 * ((lam - self.center) / self.width) ** 2)
        return np.where((lam >= a) & (lam <= b), val, 0.0)

    def to_dict(self):
        return {"kind": "gaussian", "center": self.center, "width": self.width,
                "amplitude": [self.amplitude.real, self.amplitude.imag],
                "support": list(self.support)}


def density_from_dict(d):
    if d.get("kind", "gaussian") != "gaussian":
        raise InvalidDensityError(f"unknown density kind {d.get('kind')!r}")
    amp = d.get("amplitude", 1.0)
    if isinstance(amp, (list, tuple)):
        amp = complex(amp[0], amp[1])
    return GaussianBump(d["center"], d["width"], amp, d.get("support"))


@dataclass
class HalfPlaneField:
    """A half-plane solution held through its trace spectrum.

    ``trace_spectrum`` has densities on ``lambda > 0`` only and zero guided
    components.
    """

    profile: StratifiedProfile
    geometry: HalfPlaneGeometry
    trace_spectrum: SpectralCoefficients
    _psi_cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        for d in (self.trace_spectrum.minus, self.trace_spectrum.plus):
            if d.nodes.size and np.min(d.nodes) <= 0:
                raise InvalidDensityError("field densities must live on lambda > 0")
        if np.any(np.asarray(self.trace_spectrum.point) != 0):
            raise InvalidDensityError("guided components of a half-plane field must vanish")

    def _densities(self):
        return [d for d in (self.trace_spectrum.minus, self.trace_spectrum.plus) if d.nodes.size]

    def grid(self, x, y):
        """``u`` on the tensor grid ``x`` by ``y``; result has shape ``(len(x), len(y))``."""
        x = np.atleast_1d(np.asarray(x, dtype=float))
        y = np.atleast_1d(np.asarray(y, dtype=float))
        if np.any(y < -self.geometry.epsilon):
            raise SpectralDomainError("the representation holds for y >= -epsilon only")
        out = np.zeros((x.size, y.size), dtype=complex)
        for d in self._densities():
            psi = psi_matrix(self.profile, d.branch, d.nodes, x)
            decay = np.exp(-np.sqrt(d.nodes)[:, None] * y[None, :])
            out += psi.T @ ((d.weights * d.values)[:, None] * decay)
        return out

    def evaluate(self, x, y):
        """Pointwise ``u(x, y)`` for broadcastable ``x``, ``y``."""
        x, y = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
        if np.any(y < -self.geometry.epsilon):
            raise SpectralDomainError("the representation holds for y >= -epsilon only")
        flat_x, flat_y = x.ravel(), y.ravel()
        out = np.zeros(flat_x.shape, dtype=complex)
        for d in self._densities():
            psi = psi_matrix(self.profile, d.branch, d.nodes, flat_x)
            decay = np.exp(-np.sqrt(d.nodes)[:, None] * flat_y[None, :])
            out += np.sum((d.weights * d.values)[:, None] * psi * decay, axis=0)
        out = out.reshape(x.shape)
        return complex(out) if out.ndim == 0 else out

    def evaluate_global(self, xg, yg):
        X, Y = self.geometry.to_local(xg, yg)
        return self.evaluate(X, Y)

    def l2_norm_sq(self):
        """``||u||^2`` over ``{y > -epsilon}`` from the trace spectrum."""
        eps = self.geometry.epsilon
        total = 0.0
        for d in self._densities():
            r = np.sqrt(d.nodes)
            total += np.sum(d.weights * np.abs(d.values) ** 2 * np.exp(2 * r * eps) / (2 * r))
        return float(total)

    def weighted_l1(self, s):
        """``sum_pm int lambda^s |phi_hat| rho d lambda``."""
        return sum(d.weighted_l1(s) for d in self._densities())

    def sup_bound(self):
        """Upper bound ``2 sum int |phi_hat| rho`` for ``|u|`` on ``y >= 0``."""
        return 2 * self.weighted_l1(0.0)

    def shifted(self, dy):
        """Field whose trace line is moved to ``y = dy``: densities times ``exp(-sqrt(lambda) dy)``."""
        dens = []
        for d in (self.trace_spectrum.minus, self.trace_spectrum.plus):
            dens.append(d.with_values(d.values * np.exp(-np.sqrt(np.maximum(d.nodes, 0)) * dy)))
        coeffs = SpectralCoefficients(dens[0], dens[1], self.trace_spectrum.point,
                                      self.trace_spectrum.modes)
        geo = HalfPlaneGeometry(self.geometry.theta, self.geometry.center,
                                self.geometry.epsilon + dy)
        return HalfPlaneField(self.profile, geo, coeffs)


def _branch_nodes(profile, branch, bumps, extent, order, phase):
    k_sq = profile.exterior_k_sq(branch)
    if not bumps:
        return np.empty(0), np.empty(0)
    pts = set()
    for b in bumps:
        lo, hi = b.support
        if lo <= 0:
            raise InvalidDensityError(f"density support {b.support} must lie strictly in lambda > 0")
        pts.update((math.sqrt(lo + k_sq), math.sqrt(hi + k_sq)))
    pts = sorted(pts)
    edges = [pts[0]]
    for a, c in zip(pts[:-1], pts[1:]):
        edges.extend(split_interval(a, c, phase / extent)[1:])
    t, w = gauss_panels(edges, order)
    return t * t - k_sq, w / (2 * np.pi)


def synthesize_solution(densities, profile: StratifiedProfile, geometry=None,
                        extent=20.0, order=20, phase=12.0) -> HalfPlaneField:
    """Half-plane field from densities supported in ``lambda > 0``.

    Parameters
    ----------
    densities : dict
        ``{'+': [bump, ...], '-': [...]}``; each bump is callable in ``lambda``
        and has a ``support`` pair.
    extent : float
        Largest ``|x|`` at which the field will be evaluated; sets the
        spectral panel length.
    """
    geometry = geometry or HalfPlaneGeometry(epsilon=default_epsilon(profile))
    out = []
    for branch in ("-", "+"):
        bumps = list(densities.get(branch, []))
        lam, w = _branch_nodes(profile, branch, bumps, extent, order, phase)
        vals = np.zeros(lam.shape, dtype=complex)
        for b in bumps:
            vals += b(lam)
        out.append(SpectralDensity(branch, lam, vals, w, profile.exterior_k_sq(branch)))
    n_modes = len(Transform(profile, modes=None).modes) if profile.pieces else 0
    coeffs = SpectralCoefficients(out[0], out[1], np.zeros(n_modes, dtype=complex))
    return HalfPlaneField(profile, geometry, coeffs)


def evaluate_representation(field_: HalfPlaneField, x, y):
    """``u(x, y)`` for ``y >= 0``."""
    if np.any(np.asarray(y) < 0):
        raise SpectralDomainError("y must be nonnegative")
    return field_.evaluate(x, y)


@dataclass
class TraceDiagnostic:
    """Spectral leakage of a trace.

    ``interval_leakage`` is the part of the norm carried by
    ``lambda in (-k^2, 0]`` and ``point_leakage`` that of the guided
    components, both relative to the total spectral norm.
    """

    interval_leakage: float
    point_leakage: float
    valid: bool


def spectral_trace(phi, profile: StratifiedProfile, spec: QuadratureSpec | None = None,
                   threshold=LEAKAGE_TOL, strict=False, transform=None, t_max=None):
    """Trace spectrum of ``phi`` with a leakage diagnostic.

    A trace of an L2 solution has no guided components and no spectrum on
    ``(-k^2, 0]``.  Leakage above ``threshold`` issues an
    ``InvalidTraceWarning`` (or raises ``InvalidTraceError`` when ``strict``).
    """
    tr = transform or Transform(profile, spec)
    coeffs = tr.forward(phi, t_max=t_max)
    total = coeffs.norm_sq()
    neg = 0.0
    for d in (coeffs.minus, coeffs.plus):
        m = d.nodes <= 0
        neg += float(np.sum(d.weights[m] * np.abs(d.values[m]) ** 2))
    pt = float(np.sum(np.abs(coeffs.point) ** 2))
    if total == 0:
        diag = TraceDiagnostic(0.0, 0.0, True)
    else:
        diag = TraceDiagnostic(math.sqrt(neg / total), math.sqrt(pt / total), True)
        diag.valid = max(diag.interval_leakage, diag.point_leakage) <= threshold
    if not diag.valid:
        msg = (f"trace is not that of an L2 solution: interval leakage "
               f"{diag.interval_leakage:.2e}, guided leakage {diag.point_leakage:.2e}")
        if strict:
            raise InvalidTraceError(msg)
        warnings.warn(msg, InvalidTraceWarning, stacklevel=2)
    return coeffs, diag


def field_from_trace(coeffs: SpectralCoefficients, profile, geometry=None) -> HalfPlaneField:
    """Keep the ``lambda > 0`` part of a trace spectrum as a field."""
    geometry = geometry or HalfPlaneGeometry(epsilon=default_epsilon(profile))
    dens = []
    for d in (coeffs.minus, coeffs.plus):
        m = d.nodes > 0
        dens.append(SpectralDensity(d.branch, d.nodes[m], d.values[m], d.weights[m], d.k_sq))
    return HalfPlaneField(profile, geometry,
                          SpectralCoefficients(dens[0], dens[1], np.zeros_like(coeffs.point),
                                               coeffs.modes))


def density_relative_error(density: SpectralDensity, exact):
    """Weighted relative L2 distance between sampled values and ``exact(lambda)``."""
    ref = exact(density.nodes)
    num = np.sum(density.weights * np.abs(density.values - ref) ** 2)
    den = np.sum(density.weights * np.abs(ref) ** 2)
    return math.sqrt(num / den) if den > 0 else math.sqrt(num)


# --------------------------------------------------------------------------
# diagnostics

_LAP8 = np.array([-1 / 560, 8 / 315, -1 / 5, 8 / 5, -205 / 72, 8 / 5, -1 / 5, 8 / 315, -1 / 560])


def helmholtz_residual(field_: HalfPlaneField, x, y, h):
    """Relative residual ``||Delta u + K^2 u|| / ||u||`` with an 8th-order stencil.

    ``x`` and ``y`` are the grid lines where the residual is measured; points
    whose stencil would cross a jump of ``K^2`` are dropped.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    off = np.arange(-4, 5) * h
    xs = (x[:, None] + off[None, :]).ravel()
    ys = (y[:, None] + off[None, :]).ravel()
    # u on x-stencil lines crossed with y, and x crossed with y-stencil lines.
    ux = field_.grid(xs, y).reshape(x.size, 9, y.size)
    uy = field_.grid(x, ys).reshape(x.size, y.size, 9)
    u = ux[:, 4, :]
    lap = (np.einsum("k,ikj->ij", _LAP8, ux) + np.einsum("k,ijk->ij", _LAP8, uy)) / h ** 2
    res = lap + field_.profile(x)[:, None] * u
    keep = np.ones(x.size, dtype=bool)
    for j in field_.profile.jump_points():
        keep &= np.abs(x - j) > 4 * h + 1e-12
    r = res[keep]
    return float(np.linalg.norm(r) / np.linalg.norm(u[keep])), int(keep.sum() * y.size)


@dataclass
class RayResult:
    value: float
    tail_bound: float
    converged: bool
    t_max: float
    total_bound: float


def ray_tail_bound(field_: HalfPlaneField, alpha, t_max):
    """Bound on ``int_{t_max}^inf |u|`` along the ray of angle ``alpha``."""
    s = math.sin(alpha)
    out = 0.0
    for d in field_._densities():
        r = np.sqrt(d.nodes)
        out += 2 * np.sum(d.weights * np.abs(d.values) / (r * s) * np.exp(-r * t_max * s))
    return float(out)


def _abs_integral(g, edges, order, rtol, max_panels=20000):
    """Integral of the nonnegative ``g`` over ``edges`` with panel bisection.

    ``|u|`` bends sharply where ``u`` nearly vanishes, so each panel is compared
    with its two halves and split until they agree.
    """
    t, w = gauss_panels(edges, order)
    vals = (w * g(t)).reshape(len(edges) - 1, order).sum(axis=1)
    atol = rtol * max(float(vals.sum()), 1e-300)
    stack = list(zip(edges[:-1], edges[1:], vals))
    total = 0.0
    count = len(stack)
    while stack:
        a, b, whole = stack.pop()
        m = 0.5 * (a + b)
        t, w = gauss_panels([a, m, b], order)
        halves = (w * g(t)).reshape(2, order).sum(axis=1)
        if abs(halves.sum() - whole) <= atol * (b - a) / (edges[-1] - edges[0]) \
                or count > max_panels:
            total += float(halves.sum())
        else:
            count += 1
            stack.append((a, m, float(halves[0])))
            stack.append((m, b, float(halves[1])))
    return total


def ray_l1_norm(field_: HalfPlaneField, alpha, t_max=None, tol=1e-8, order=20, phase=6.0,
                quad_tol=1e-10):
    """``int_0^t_max |u(t cos alpha, t sin alpha)| dt`` with a certified tail bound.

    When ``t_max`` is omitted it is doubled until the tail bound drops below
    ``tol`` times the computed integral.  ``quad_tol`` is the relative target
    of the panel-adaptive quadrature on ``[0, t_max]``.
    """
    if not 0 < alpha < math.pi:
        raise SpectralDomainError("alpha must lie strictly inside (0, pi)")
    dens = field_._densities()
    total_bound = ray_tail_bound(field_, alpha, 0.0)
    if not dens:
        return RayResult(0.0, 0.0, True, 0.0 if t_max is None else t_max, 0.0)
    lam_max = max(float(np.max(d.nodes)) for d in dens)
    lam_min = min(float(np.min(d.nodes)) for d in dens)
    k_eff = math.sqrt(lam_max + field_.profile.k_max_sq)
    c, s = math.cos(alpha), math.sin(alpha)
    adaptive = t_max is None
    T = t_max if t_max is not None else 8.0 / (math.sqrt(lam_min) * s)
    value = 0.0
    done = 0.0
    while True:
        breaks = [done, T]
        if abs(c) > 1e-14:
            breaks += [j / c for j in field_.profile.jump_points() if done < j / c < T]
        breaks = sorted(breaks)
        edges = [breaks[0]]
        for a, b in zip(breaks[:-1], breaks[1:]):
            edges.extend(split_interval(a, b, phase / k_eff)[1:])
        value += _abs_integral(lambda t: np.abs(field_.evaluate(t * c, t * s)), edges, order,
                               quad_tol)
        tail = ray_tail_bound(field_, alpha, T)
        if not adaptive or tail <= tol * max(value, 1e-300) or T > 1e6:
            break
        done, T = T, 2 * T
    return RayResult(value, tail, tail <= tol * max(value, 1e-300), T, total_bound)

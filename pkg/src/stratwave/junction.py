"""Junctions of three stratified half-planes.

The north half-plane carries the global frame.  West and east frames are
rotated by ``theta_W in [pi/2, pi)`` and ``theta_E in (-pi, -pi/2]`` about
their centres.  The north trace splits at the points where the west and east
trace lines cross it, and the outer pieces of its transform are written as
integrals of the west and east trace spectra against explicit kernels.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidProfileError, NearPoleWarning, SpectralDomainError
from .gft import psi_matrix
from .halfplane import HalfPlaneField
from .ode_spectral import eigenfunction_family
from .profile import HalfPlaneGeometry, StratifiedProfile
from .quadrature import gauss_panels, split_interval
from .twolayer import beta

RIGHT_TOL = 1e-14
NEAR_CURVE_TOL = 1e-3


@dataclass(frozen=True)
class JunctionConfig:
    """West, north and east half-planes as ``(geometry, profile)`` pairs."""

    west: tuple
    north: tuple
    east: tuple

    def __post_init__(self):
        gw, ge, gn = self.west[0], self.east[0], self.north[0]
        if gn.theta != 0.0 or gn.center != (0.0, 0.0):
            raise InvalidProfileError("the north half-plane carries the global frame")
        if not math.pi / 2 <= gw.theta < math.pi:
            raise InvalidProfileError(f"theta_W must lie in [pi/2, pi), got {gw.theta}")
        if not -math.pi < ge.theta <= -math.pi / 2:
            raise InvalidProfileError(f"theta_E must lie in (-pi, -pi/2], got {ge.theta}")

    @property
    def kind(self):
        right = (abs(self.west[0].theta - math.pi / 2) < RIGHT_TOL
                 and abs(self.east[0].theta + math.pi / 2) < RIGHT_TOL)
        return "right_angle" if right else "general_angle"

    def part(self, j):
        return {"W": self.west, "N": self.north, "E": self.east}[j]

    @property
    def a_NW(self):
        g = self.west[0]
        return g.center[0] - g.center[1] / math.tan(g.theta)

    @property
    def a_NE(self):
        g = self.east[0]
        return g.center[0] - g.center[1] / math.tan(g.theta)

    def trace_offset(self, j):
        """Local abscissa ``X_j`` where the north trace line meets ``Sigma_j``."""
        g = self.part(j)[0]
        return -g.center[1] / math.sin(g.theta)

    def to_dict(self):
        def one(p):
            g, prof = p
            return {"theta": g.theta, "center": list(g.center), "epsilon": g.epsilon,
                    "profile": prof.to_dict()}
        return {"west": one(self.west), "north": one(self.north), "east": one(self.east)}


def make_junction(west_profile, north_profile, east_profile, theta_W=math.pi / 2,
                  theta_E=-math.pi / 2, center_W=(-2.0, -1.0), center_E=(2.0, -1.0),
                  epsilon=0.05):
    return JunctionConfig(
        (HalfPlaneGeometry(theta_W, center_W, epsilon), west_profile),
        (HalfPlaneGeometry(0.0, (0.0, 0.0), epsilon), north_profile),
        (HalfPlaneGeometry(theta_E, center_E, epsilon), east_profile))


def local_coordinates(config: JunctionConfig, j, x, y):
    """Global ``(x, y)`` to the local frame of half-plane ``j``."""
    if j == "N":
        return np.asarray(x, dtype=float), np.asarray(y, dtype=float)
    return config.part(j)[0].to_local(x, y)


def check_compatibility(config: JunctionConfig):
    """List of violated compatibility conditions (empty when compatible).

    Exterior values must agree across shared wedges, and every profile jump
    must stay outside the overlaps: along the north trace the west and east
    frames must sit in their constant exteriors, and the north jumps must lie
    between the two crossing points.
    """
    out = []
    pw, pn, pe = config.west[1], config.north[1], config.east[1]
    if pw.k_plus_sq != pn.k_minus_sq:
        out.append(f"k_W+^2 = {pw.k_plus_sq} differs from k_N-^2 = {pn.k_minus_sq}")
    if pe.k_minus_sq != pn.k_plus_sq:
        out.append(f"k_E-^2 = {pe.k_minus_sq} differs from k_N+^2 = {pn.k_plus_sq}")
    if config.kind == "general_angle" and pw.k_minus_sq != pe.k_plus_sq:
        out.append(f"k_W-^2 = {pw.k_minus_sq} differs from k_E+^2 = {pe.k_plus_sq}")
    if config.a_NW >= config.a_NE:
        out.append("west crossing point must lie left of the east one")
    if config.a_NW > pn.x_minus:
        out.append(f"north stratification starts at {pn.x_minus}, left of a_NW = {config.a_NW}")
    if config.a_NE < pn.x_plus:
        out.append(f"north stratification ends at {pn.x_plus}, right of a_NE = {config.a_NE}")
    if config.trace_offset("W") < pw.x_plus:
        out.append("west stratification reaches the north overlap")
    if config.trace_offset("E") > pe.x_minus:
        out.append("east stratification reaches the north overlap")
    return out


# --------------------------------------------------------------------------
# trace splitting


@dataclass
class TraceSegments:
    """Three pieces of a sampled trace on ``(-inf, a]``, ``[a, b]``, ``[b, inf)``."""

    left: tuple
    middle: tuple
    right: tuple


def split_trace(x, values, a_left, a_right):
    """Split samples ``(x, values)`` at ``a_left < a_right``.

    Each segment keeps the samples of its own interval; a sample sitting on a
    split point goes to the segment on its right.
    """
    if not a_left < a_right:
        raise SpectralDomainError("split points must satisfy a_left < a_right")
    x = np.asarray(x, dtype=float)
    v = np.asarray(values)
    l = x < a_left
    r = x >= a_right
    m = ~(l | r)
    return TraceSegments((x[l], v[l]), (x[m], v[m]), (x[r], v[r]))


def split_points(config: JunctionConfig):
    return config.a_NW, config.a_NE


# --------------------------------------------------------------------------
# exterior forms


def exterior_terms(profile: StratifiedProfile, side, lam, region):
    """``Psi^side(lam, x) = sum c exp(i kappa x)`` on an exterior ray.

    ``region`` is ``'left'`` (``x <= x_minus``) or ``'right'`` (``x >= x_plus``).
    Returns a list of ``(c, kappa)`` arrays shaped like ``lam``.
    """
    fam = eigenfunction_family(lam, side, profile)
    bm, bp, R, T = fam.beta_minus, fam.beta_plus, fam.R, fam.T
    one = np.ones_like(bm)
    if side == "+":
        return [(one, -bp), (R, bp)] if region == "right" else [(T, -bm)]
    return [(one, bm), (R, -bm)] if region == "left" else [(T, bp)]


def conj_terms(profile, side, lam, region):
    """Terms of ``conj(Psi(conj(lam), x))``, the continuation of ``conj Psi`` in ``lam``."""
    lam = np.atleast_1d(np.asarray(lam, dtype=complex))
    return [(np.conj(c), -np.conj(k)) for c, k in exterior_terms(profile, side, np.conj(lam),
                                                                  region)]


def _field_terms(field_: HalfPlaneField, j, branch, mu, X0, theta):
    """Terms of ``Psi_j^branch(mu, X)`` valid along the north trace line."""
    prof = field_.profile
    if abs(math.cos(theta)) < RIGHT_TOL:
        # Right angle: X is frozen at X0 and Psi is used as is.
        val = psi_matrix(prof, branch, mu, np.array([X0]))[:, 0]
        return [(val, np.zeros_like(val))]
    region = "right" if j == "W" else "left"
    return exterior_terms(prof, branch, mu, region)


def transfer_kernel(config: JunctionConfig, j, north_branch, lam, field_: HalfPlaneField,
                    branch, mu):
    """Kernel ``A(lambda, mu)`` mapping the ``j`` trace spectrum to ``phi_hat_{N,j}``.

    ``A = int e^{-sqrt(mu) Y_j(x)} Psi_j(mu, X_j(x)) conj Psi_N(lambda, x) dx`` over
    the outer part of the north trace line, evaluated in closed form from the
    exterior exponentials.  Shape ``(len(lam), len(mu))``.
    """
    lam = np.atleast_1d(np.asarray(lam, dtype=complex))
    mu = np.atleast_1d(np.asarray(mu, dtype=float))
    g, _ = config.part(j)
    theta = g.theta
    s, c = math.sin(theta), math.cos(theta)
    X0 = config.trace_offset(j)
    if j == "W":
        a, sign, region = config.a_NW, 1.0, "left"
    elif j == "E":
        a, sign, region = config.a_NE, -1.0, "right"
    else:
        raise ValueError("j must be 'W' or 'E'")
    north = conj_terms(config.north[1], north_branch, lam, region)
    own = _field_terms(field_, j, branch, mu, X0, theta)
    root = np.sqrt(mu)
    out = np.zeros((lam.size, mu.size), dtype=complex)
    for cm, km in own:
        left = cm * np.exp(1j * km * X0)
        base = root * s + 1j * km * c
        for dn, nn in north:
            right = dn * np.exp(1j * nn * a)
            z = base[None, :] + 1j * nn[:, None]
            out += sign * right[:, None] * left[None, :] / z
    return out


def _spectrum(obj):
    return obj.trace_spectrum if isinstance(obj, HalfPlaneField) else obj


def _densities(obj):
    sp = _spectrum(obj)
    return [d for d in (sp.minus, sp.plus) if d.nodes.size]


def transfer(field_: HalfPlaneField, config: JunctionConfig, j, lam, north_branch="+"):
    """``phi_hat^{branch}_{N,j}(lambda)`` by the kernel formula."""
    lam = np.atleast_1d(np.asarray(lam, dtype=complex))
    out = np.zeros(lam.shape, dtype=complex)
    for d in _densities(field_):
        K = transfer_kernel(config, j, north_branch, lam, field_, d.branch, d.nodes)
        out += K @ (d.weights * d.values)
    return out


def north_star(profile: StratifiedProfile, lam, side="+"):
    """``conj(X(conj(lambda)))`` for ``X = (beta^-, beta^+, R, T)`` of the north profile.

    These continue ``conj Psi_N`` analytically in ``lambda``.  Off the cut they
    equal the plain values; on the real axis they give ``conj Psi_N`` exactly.
    """
    fam = eigenfunction_family(np.conj(lam), side, profile)
    return (np.conj(fam.beta_minus), np.conj(fam.beta_plus), np.conj(fam.R), np.conj(fam.T))


def transfer_right_angle(west: HalfPlaneField, config: JunctionConfig, lam):
    """West part of ``phi_hat^+_N`` at a right angle, written explicitly.

    ``T_N^+(lam) e^{i beta_N^-(lam) a_W} sum int phi_hat_W(mu) Psi_W(mu, -b_W)
    / (sqrt(mu) + i beta_N^-(lam)) rho_W d mu`` with the north quantities
    taken from :func:`north_star`.
    """
    lam = np.atleast_1d(np.asarray(lam, dtype=complex))
    a_w, b_w = config.west[0].center
    bm, _, _, T = north_star(config.north[1], lam)
    out = np.zeros(lam.shape, dtype=complex)
    for d in _densities(west):
        psi = psi_matrix(west.profile, d.branch, d.nodes, np.array([-b_w]))[:, 0]
        den = np.sqrt(d.nodes)[None, :] + 1j * bm[:, None]
        out += ((d.weights * d.values * psi)[None, :] / den).sum(axis=1)
    return T * np.exp(1j * bm * a_w) * out


def transfer_right_angle_east(east: HalfPlaneField, config: JunctionConfig, lam):
    """East part of ``phi_hat^+_N`` at a right angle, written explicitly."""
    lam = np.atleast_1d(np.asarray(lam, dtype=complex))
    a_e, b_e = config.east[0].center
    _, bp, R, _ = north_star(config.north[1], lam)
    out = np.zeros(lam.shape, dtype=complex)
    for d in _densities(east):
        psi = psi_matrix(east.profile, d.branch, d.nodes, np.array([b_e]))[:, 0]
        r = np.sqrt(d.nodes)[None, :]
        k = (np.exp(1j * bp * a_e)[:, None] / (r - 1j * bp[:, None])
             + (R * np.exp(-1j * bp * a_e))[:, None] / (r + 1j * bp[:, None]))
        out += k @ (d.weights * d.values * psi)
    return out


def denominator_D(sign, lam, mu, theta, k_N_minus_sq, beta_lam=None):
    """``sqrt(mu) sin(theta) +- i beta_N^-(mu) cos(theta) + i beta_N^-(lam)``.

    ``beta_lam`` overrides ``beta_N^-(lam)``, e.g. with its conjugate continuation.
    """
    lam = np.asarray(lam, dtype=complex)
    mu = np.asarray(mu, dtype=float)
    s = 1.0 if sign == "+" else -1.0
    if beta_lam is None:
        beta_lam = beta(lam, k_N_minus_sq)
    return (np.sqrt(mu) * math.sin(theta) + s * 1j * beta(mu, k_N_minus_sq) * math.cos(theta)
            + 1j * beta_lam)


def kernels_west_explicit(config: JunctionConfig, lam, mu):
    """The two west kernels ``(A^-, A^+)`` written out for the north ``+`` branch.

    Both use ``beta_W^+ = beta_N^-`` and the denominators ``D^+`` and ``D^-``.
    """
    lam = np.atleast_1d(np.asarray(lam, dtype=complex))
    mu = np.atleast_1d(np.asarray(mu, dtype=float))
    theta = config.west[0].theta
    pw, pn = config.west[1], config.north[1]
    kn = pn.k_minus_sq
    a = config.a_NW
    X0 = config.trace_offset("W")
    famw_m = eigenfunction_family(mu, "-", pw)
    famw_p = eigenfunction_family(mu, "+", pw)
    bn, _, _, Tn = north_star(pn, lam)
    b_mu = beta(mu, kn)
    pref = (Tn * np.exp(1j * bn * a))[:, None]
    Dp = denominator_D("+", lam[:, None], mu[None, :], theta, kn, bn[:, None])
    Dm = denominator_D("-", lam[:, None], mu[None, :], theta, kn, bn[:, None])
    A_minus = (famw_m.T * np.exp(1j * b_mu * X0))[None, :] / Dp * pref
    A_plus = (np.exp(-1j * b_mu * X0)[None, :] / Dm
              + (famw_p.R * np.exp(1j * b_mu * X0))[None, :] / Dp) * pref
    return A_minus, A_plus


def transfer_general(west: HalfPlaneField, config: JunctionConfig, lam, warn=True):
    """West part of ``phi_hat^+_N`` at a general angle from the explicit kernels."""
    lam = np.atleast_1d(np.asarray(lam, dtype=complex))
    if warn:
        k_sq = config.north[1].k_minus_sq
        dist = curve_distance(lam, config.west[0].theta, k_sq, "Lambda_NW")
        near = dist < NEAR_CURVE_TOL * (1 + np.abs(lam))
        if np.any(near):
            warnings.warn(f"lambda within {float(np.min(dist)):.2e} of the curve Lambda_NW",
                          NearPoleWarning, stacklevel=2)
    out = np.zeros(lam.shape, dtype=complex)
    sp = _spectrum(west)
    d_minus, d_plus = sp.minus, sp.plus
    nodes = np.concatenate([d_minus.nodes, d_plus.nodes])
    if not nodes.size:
        return out
    if d_minus.nodes.size:
        A_m, _ = kernels_west_explicit(config, lam, d_minus.nodes)
        out += A_m @ (d_minus.weights * d_minus.values)
    if d_plus.nodes.size:
        _, A_p = kernels_west_explicit(config, lam, d_plus.nodes)
        out += A_p @ (d_plus.weights * d_plus.values)
    return out


# --------------------------------------------------------------------------
# direct evaluation along the north trace line


def outer_rule(field_: HalfPlaneField, config: JunctionConfig, j, k_north, tol=1e-14,
               order=20, phase=10.0):
    """Gauss-Legendre rule on the outer north segment facing half-plane ``j``.

    The segment is truncated where the slowest evanescent factor of the
    field has dropped below ``tol``.
    """
    dens = _densities(field_)
    s = abs(math.sin(config.part(j)[0].theta))
    mu_min = min(float(np.min(d.nodes)) for d in dens)
    mu_max = max(float(np.max(d.nodes)) for d in dens)
    L = -math.log(tol) / (math.sqrt(mu_min) * s)
    k_eff = math.sqrt(mu_max + field_.profile.k_max_sq) + k_north
    if j == "W":
        a, b = config.a_NW - L, config.a_NW
    else:
        a, b = config.a_NE, config.a_NE + L
    return gauss_panels(split_interval(a, b, phase / k_eff), order)


def north_trace_from(field_: HalfPlaneField, config: JunctionConfig, j, x):
    """``u_j`` evaluated on the north trace line at global abscissae ``x``."""
    X, Y = local_coordinates(config, j, x, np.zeros_like(np.asarray(x, dtype=float)))
    return field_.evaluate(X, Y)


def transfer_direct(field_: HalfPlaneField, config: JunctionConfig, j, lam, north_branch="+",
                    tol=1e-14):
    """``int u_j(x, 0) conj Psi_N(lambda, x) dx`` over the outer segment, by quadrature.

    Valid for real ``lambda`` in the north branch's spectrum.
    """
    lam = np.atleast_1d(np.asarray(lam, dtype=float))
    if not _densities(field_):
        return np.zeros(lam.shape, dtype=complex)
    kn = math.sqrt(config.north[1].k_max_sq + max(float(np.max(lam)), 0.0))
    x, w = outer_rule(field_, config, j, kn, tol)
    u = north_trace_from(field_, config, j, x)
    psi = psi_matrix(config.north[1], north_branch, lam, x)
    return psi.conj() @ (w * u)


# --------------------------------------------------------------------------
# analyticity curves


@dataclass
class CurveSample:
    which: str
    mu: float
    lam: complex
    touch_point: float


def curve_points(which, theta, k_sq, mu):
    """Points of ``Lambda_NW``, ``Lambda_NE_plus`` or ``Lambda_NE_minus``."""
    mu = np.asarray(mu, dtype=float)
    # a right angle gives the real half-line exactly; cos(pi/2) is not 0 in floating point
    s2 = 0.0 if abs(math.cos(theta)) < RIGHT_TOL else math.sin(2 * theta)
    re = mu * math.cos(2 * theta) - k_sq * math.sin(theta) ** 2
    im = np.sqrt(mu) * np.sqrt(mu + k_sq) * s2
    if which == "Lambda_NW":
        return re - 1j * im
    if which == "Lambda_NE_plus":
        return re + 1j * im
    if which == "Lambda_NE_minus":
        return re - 1j * im
    raise ValueError(f"unknown curve {which!r}")


def touch_point(theta, k_sq):
    """``-k^2 sin^2(theta)``, where the curves meet the real axis."""
    return -k_sq * math.sin(theta) ** 2


def analyticity_curves(theta, k_sq, mu_grid, which=None):
    """Samples of the analyticity curves for one angle.

    ``which`` defaults to ``Lambda_NW`` for a west angle and to both east
    curves for an east angle.
    """
    if which is None:
        which = ["Lambda_NW"] if theta > 0 else ["Lambda_NE_plus", "Lambda_NE_minus"]
    elif isinstance(which, str):
        which = [which]
    tp = touch_point(theta, k_sq)
    out = []
    for w in which:
        pts = curve_points(w, theta, k_sq, mu_grid)
        out.extend(CurveSample(w, float(m), complex(p), tp) for m, p in zip(mu_grid, pts))
    return out


def curve_distance(lam, theta, k_sq, which, mu_max=None, n=4000):
    """Distance from each ``lam`` to a sampled curve."""
    lam = np.atleast_1d(np.asarray(lam, dtype=complex))
    if mu_max is None:
        mu_max = 4 * float(np.max(np.abs(lam))) + 4 * k_sq + 10
    mu = np.concatenate([[0.0], np.geomspace(1e-8, mu_max, n)])
    pts = curve_points(which, theta, k_sq, mu)
    return np.min(np.abs(lam[:, None] - pts[None, :]), axis=1)


# --------------------------------------------------------------------------
# analyticity probes


def cauchy_residual(f, center, radius, n=256):
    """``|oint f d lambda| / oint |f| |d lambda|`` on a circle (trapezoidal rule)."""
    th = 2 * np.pi * np.arange(n) / n
    z = center + radius * np.exp(1j * th)
    dz = 1j * radius * np.exp(1j * th) * (2 * np.pi / n)
    v = np.asarray(f(z))
    den = np.sum(np.abs(v * dz))
    return float(abs(np.sum(v * dz)) / den) if den > 0 else 0.0


def middle_transform(x, w, values, north: StratifiedProfile, lam, branch="+"):
    """``int phi_N conj Psi_N(lambda, x) dx`` on the middle segment, continued in ``lambda``.

    Uses ``conj Psi(conj(lambda), x)``, which is analytic in ``lambda``.
    """
    lam = np.atleast_1d(np.asarray(lam, dtype=complex))
    psi = psi_matrix(north, branch, np.conj(lam), x).conj()
    return psi @ (w * values)


# --------------------------------------------------------------------------
# consistent junction data


def middle_rule(config: JunctionConfig, order=24, phase=6.0, k_extra=0.0):
    a, b = config.a_NW, config.a_NE
    pn = config.north[1]
    brk = [a, *[p for p in pn.breaks if a < p < b], b]
    k = math.sqrt(pn.k_max_sq) + k_extra
    edges = [brk[0]]
    for l, r in zip(brk[:-1], brk[1:]):
        edges.extend(split_interval(l, r, phase / k)[1:])
    return gauss_panels(edges, order)


def interval_grid(k_sq, n, margin=1e-3):
    """Points of ``(-k_sq, 0)`` with a relative margin at both ends."""
    return np.linspace(-k_sq * (1 - margin), -k_sq * margin, n)


@dataclass
class ConsistentTrace:
    """North trace assembled from west and east fields plus a fitted middle piece.

    ``fit_residual`` is the largest interval value of the north transform
    relative to its largest value on the positive grid.
    """

    config: JunctionConfig
    west: HalfPlaneField
    east: HalfPlaneField
    x_mid: np.ndarray
    w_mid: np.ndarray
    coeffs: np.ndarray
    fit_residual: float

    def middle(self, x):
        a, b = self.config.a_NW, self.config.a_NE
        s = (2 * np.asarray(x, dtype=float) - a - b) / (b - a)
        return np.polynomial.legendre.legval(s, self.coeffs)

    def __call__(self, x):
        x = np.atleast_1d(np.asarray(x, dtype=float))
        a, b = self.config.a_NW, self.config.a_NE
        out = np.zeros(x.shape, dtype=complex)
        l = x < a
        r = x >= b
        m = ~(l | r)
        if np.any(l):
            out[l] = north_trace_from(self.west, self.config, "W", x[l])
        if np.any(r):
            out[r] = north_trace_from(self.east, self.config, "E", x[r])
        out[m] = self.middle(x[m])
        return out


def consistent_north_trace(config: JunctionConfig, west: HalfPlaneField, east: HalfPlaneField,
                           degree=60, penalty=1e-13, n_lam=200, n_pos=400, lam_max=None):
    """Complete the north trace between the crossing points.

    The outer pieces are the traces of ``west`` and ``east``.  The middle piece
    is a Legendre series chosen by least squares so that the north transform
    of the whole trace vanishes on ``(-k_{N,pm}^2, 0)`` for both branches,
    with ``penalty`` weighting the size of the transform on ``(0, lam_max]``
    and the trace kept continuous at the crossing points.  Exact vanishing
    with nonzero outer data is impossible, so the result is approximate and
    the residual trades against the size on ``(0, inf)``.  The outer
    contributions are computed by direct quadrature.
    """
    pn = config.north[1]
    a, b = config.a_NW, config.a_NE
    if lam_max is None:
        lam_max = _default_lam_max(config, west, east)
    lam_max = 1.5 * lam_max
    x, w = middle_rule(config, k_extra=math.sqrt(lam_max))
    V = np.polynomial.legendre.legvander((2 * x - a - b) / (b - a), degree)

    def block(lam, br):
        target = -(transfer_direct(west, config, "W", lam, br)
                   + transfer_direct(east, config, "E", lam, br))
        return psi_matrix(pn, br, lam, x).conj() @ (w[:, None] * V), target

    lam_p = np.linspace(lam_max / n_pos, lam_max, n_pos)
    Mi, yi, Mp, yp = [], [], [], []
    for br in ("-", "+"):
        m, y = block(interval_grid(pn.exterior_k_sq(br), n_lam), br)
        Mi.append(m)
        yi.append(y)
        m, y = block(lam_p, br)
        Mp.append(m)
        yp.append(y)
    Mi, yi = np.vstack(Mi), np.concatenate(yi)
    Mp, yp = np.vstack(Mp), np.concatenate(yp)
    ends = np.polynomial.legendre.legvander(np.array([-1.0, 1.0]), degree)
    ua = north_trace_from(west, config, "W", np.array([a]))[0]
    ub = north_trace_from(east, config, "E", np.array([b]))[0]
    wc = np.max(np.abs(Mi))
    r = math.sqrt(penalty)
    M = np.vstack([Mi, r * Mp, wc * ends])
    y = np.concatenate([yi, r * yp, wc * np.array([ua, ub])])
    coef, *_ = np.linalg.lstsq(M, y, rcond=None)
    res = np.max(np.abs(Mi @ coef - yi)) / max(np.max(np.abs(Mp @ coef - yp)), 1e-300)
    return ConsistentTrace(config, west, east, x, w, coef, float(res))


def _default_lam_max(config, west, east):
    dens = _densities(west) + _densities(east)
    top = max([float(np.max(d.nodes)) for d in dens], default=10.0)
    return top + config.north[1].k_max_sq


@dataclass
class ProbeReport:
    """Outcome of the uniqueness probe on a real ``lambda`` grid."""

    interval_lambda: np.ndarray
    interval_values: np.ndarray
    positive_lambda: np.ndarray
    positive_values: np.ndarray
    parts: dict
    interval_max: float
    positive_sup: float
    ratio: float
    morera_residual: float
    consistency_mismatch: float
    consistent: bool
    flagged: bool
    notes: list = field(default_factory=list)

    def to_dict(self):
        def c(v):
            v = np.asarray(v)
            return {"re": v.real.tolist(), "im": v.imag.tolist()}
        return {
            "interval_lambda": self.interval_lambda.tolist(),
            "interval_abs": np.abs(self.interval_values).tolist(),
            "positive_lambda": self.positive_lambda.tolist(),
            "positive_abs": np.abs(self.positive_values).tolist(),
            "parts_interval_abs": {k: np.abs(v).tolist() for k, v in self.parts.items()},
            "interval_max": self.interval_max, "positive_sup": self.positive_sup,
            "ratio": self.ratio, "morera_residual": self.morera_residual,
            "consistency_mismatch": self.consistency_mismatch,
            "consistent": self.consistent, "flagged": self.flagged, "notes": self.notes,
        }


def uniqueness_probe(config: JunctionConfig, north_trace, west: HalfPlaneField,
                     east: HalfPlaneField, n_interval=200, n_positive=200, lam_max=None,
                     ratio_tol=1e-5, mismatch_tol=1e-6):
    """Measure ``phi_hat^+_N`` on ``(-k_{N,+}^2, 0)`` against its size on ``(0, inf)``.

    The west and east parts come from the kernel formulas, the middle part
    from quadrature of ``north_trace`` between the crossing points.  The
    report also carries a Morera residual of the middle part and the
    mismatch between ``north_trace`` and the west/east fields on the outer
    segments.
    """
    pn = config.north[1]
    k_sq = pn.k_plus_sq
    lam_i = interval_grid(k_sq, n_interval)
    if lam_max is None:
        lam_max = _default_lam_max(config, west, east)
    lam_p = np.linspace(lam_max / n_positive, lam_max, n_positive)
    x, w = middle_rule(config, k_extra=math.sqrt(lam_max))
    mid_vals = np.asarray(north_trace(x), dtype=complex)

    def parts_at(lam):
        pw = transfer(west, config, "W", lam) if _densities(west) else np.zeros(lam.shape, complex)
        pe = transfer(east, config, "E", lam) if _densities(east) else np.zeros(lam.shape, complex)
        p0 = middle_transform(x, w, mid_vals, pn, lam)
        return pw, p0, pe

    pw, p0, pe = parts_at(lam_i)
    total_i = pw + p0 + pe
    qw, q0, qe = parts_at(lam_p)
    total_p = qw + q0 + qe
    imax = float(np.max(np.abs(total_i)))
    psup = float(np.max(np.abs(total_p)))
    ratio = imax / psup if psup > 0 else (0.0 if imax == 0 else math.inf)
    center = complex(0.5 * lam_max, 0.25 * lam_max)
    morera = cauchy_residual(lambda z: middle_transform(x, w, mid_vals, pn, z), center,
                             0.2 * lam_max)
    mismatch = 0.0
    notes = []
    for j, f in (("W", west), ("E", east)):
        if j == "W":
            xs = config.a_NW - np.linspace(1e-9, 6, 61)
        else:
            xs = config.a_NE + np.linspace(0, 6, 61)
        given = np.asarray(north_trace(xs), dtype=complex)
        model = north_trace_from(f, config, j, xs) if _densities(f) else np.zeros_like(given)
        scale = max(float(np.max(np.abs(given))), float(np.max(np.abs(model))))
        if scale > 0:
            mismatch = max(mismatch, float(np.max(np.abs(given - model))) / scale)
    consistent = mismatch <= mismatch_tol
    if not consistent:
        notes.append(f"north trace disagrees with the half-plane fields (relative {mismatch:.2e})")
    flagged = (not consistent) or ratio > ratio_tol
    return ProbeReport(lam_i, total_i, lam_p, total_p, {"W": pw, "0": p0, "E": pe}, imax, psup,
                       ratio, morera, mismatch, consistent, flagged, notes)

"""Composite Gauss-Legendre rules used by the transforms.

Spectral integrals are taken in ``t = sqrt(lambda + k^2)``, where the weight
``rho d lambda`` becomes ``dt / (2 pi)``.  Square-root endpoint behaviour at
the edge of the other branch is removed by ``t = t_c +- L s^2``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np


@lru_cache(maxsize=64)
def _leggauss01(order):
    t, w = np.polynomial.legendre.leggauss(order)
    return 0.5 * (t + 1), 0.5 * w


def gauss_panels(edges, order):
    """Gauss-Legendre nodes and weights on consecutive panels ``edges``."""
    edges = np.asarray(edges, dtype=float)
    s, w = _leggauss01(order)
    h = np.diff(edges)
    x = (edges[:-1, None] + h[:, None] * s[None, :]).ravel()
    wt = (h[:, None] * w[None, :]).ravel()
    return x, wt


def split_interval(a, b, max_len):
    """Edges of ``ceil((b - a) / max_len)`` equal panels."""
    n = max(1, int(math.ceil((b - a) / max_len - 1e-12)))
    return np.linspace(a, b, n + 1)


def composite_rule(breaks, max_len, order):
    """Panels aligned with every point in ``breaks`` and no longer than ``max_len``."""
    breaks = np.unique(np.asarray(breaks, dtype=float))
    edges = [breaks[:1]]
    for a, b in zip(breaks[:-1], breaks[1:]):
        edges.append(split_interval(a, b, max_len)[1:])
    return gauss_panels(np.concatenate(edges), order)


def sqrt_panel(a, b, singular, order):
    """Rule on ``[a, b]`` for integrands with a square-root singularity at one end.

    ``singular`` is ``'a'`` or ``'b'``.  With ``t = a + L s^2`` the integrand
    becomes smooth in ``s``.
    """
    s, w = _leggauss01(order)
    L = b - a
    if singular == "a":
        return a + L * s ** 2, 2 * L * s * w
    return b - L * s ** 2, 2 * L * s * w


@dataclass(frozen=True)
class QuadratureSpec:
    """Knobs for the x- and t-quadratures.

    Parameters
    ----------
    window : (float, float)
        Interval holding the numerical support of inputs.
    order : int
        Gauss-Legendre points per panel.
    phase : float
        Largest phase ``wavenumber * panel_length`` allowed on one panel.
    t_max : float or None
        Spectral cut-off in ``t``; ``None`` selects it adaptively.
    tail_tol : float
        Relative size of the transform at which adaptive truncation stops.
    edge_panels : bool
        Use the square-root substitution next to the other branch's edge.
    """

    window: tuple = (-10.0, 10.0)
    order: int = 20
    phase: float = 12.0
    t_max: float | None = None
    tail_tol: float = 1e-8
    edge_panels: bool = True
    max_t: float = 400.0

    def to_dict(self):
        return {"window": list(self.window), "order": self.order, "phase": self.phase,
                "t_max": self.t_max, "tail_tol": self.tail_tol,
                "edge_panels": self.edge_panels}

    @property
    def half_width(self):
        a, b = self.window
        return max(abs(a), abs(b), 1e-3)


def x_rule(profile, spec: QuadratureSpec, k_eff):
    """Composite rule on ``spec.window`` aligned with the profile breaks."""
    a, b = spec.window
    inner = [x for x in profile.breaks if a < x < b]
    max_len = spec.phase / max(k_eff, 1e-3)
    return composite_rule([a, *inner, b], max_len, spec.order)


def t_edges(k_this_sq, k_other_sq):
    """Special points of the ``t`` axis for one branch: the other edge and ``lambda = 0``."""
    pts = [math.sqrt(k_this_sq)]
    if k_this_sq > k_other_sq:
        pts.append(math.sqrt(k_this_sq - k_other_sq))
    return sorted(set(pts))


def t_rule(t_lo, t_hi, k_this_sq, k_other_sq, max_len, order, edge_panels=True):
    """Rule on ``[t_lo, t_hi]`` honouring the branch's special points.

    Panels touching the other branch's edge ``t_c`` use the square-root
    substitution.
    """
    tc = math.sqrt(k_this_sq - k_other_sq) if k_this_sq > k_other_sq else None
    pts = [p for p in t_edges(k_this_sq, k_other_sq) if t_lo < p < t_hi]
    edges = [t_lo]
    for a, b in zip([t_lo, *pts], [*pts, t_hi]):
        edges.extend(split_interval(a, b, max_len)[1:])
    edges = np.asarray(edges)
    xs, ws = [], []
    s01, w01 = _leggauss01(order)
    for a, b in zip(edges[:-1], edges[1:]):
        if edge_panels and tc is not None and abs(a - tc) < 1e-14 * max(1, tc):
            x, w = sqrt_panel(a, b, "a", order)
        elif edge_panels and tc is not None and abs(b - tc) < 1e-14 * max(1, tc):
            x, w = sqrt_panel(a, b, "b", order)
            x, w = x[::-1], w[::-1]
        else:
            x, w = a + (b - a) * s01, (b - a) * w01
        xs.append(x)
        ws.append(w)
    return np.concatenate(xs), np.concatenate(ws)

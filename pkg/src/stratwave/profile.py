"""Stratified wavenumber profiles and half-plane geometries.

A profile is the squared wavenumber ``K^2(x)`` of a medium that only varies
across one axis.  It is piecewise constant on ``[x_minus, x_plus]`` and
constant on both exterior rays.  Jumps are right-continuous.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import InvalidProfileError

_TILING_TOL = 1e-12


@dataclass(frozen=True)
class Piece:
    """One constant layer ``[start, stop)`` carrying ``k_sq``."""

    start: float
    stop: float
    k_sq: float

    @property
    def length(self) -> float:
        return self.stop - self.start


@dataclass(frozen=True)
class StratifiedProfile:
    """Piecewise-constant ``K^2`` that is constant outside ``[x_minus, x_plus]``.

    Parameters
    ----------
    pieces : tuple of Piece
        Ordered interior layers tiling ``[x_minus, x_plus]``.  Empty when
        ``x_minus == x_plus`` (a single interface).
    k_minus_sq, k_plus_sq : float
        Exterior values for ``x < x_minus`` and ``x > x_plus``.  Both must be
        positive; interior values may be negative.
    x_minus, x_plus : float
        Ends of the inhomogeneous region.
    """

    pieces: tuple[Piece, ...]
    k_minus_sq: float
    k_plus_sq: float
    x_minus: float
    x_plus: float
    breaks: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not (math.isfinite(self.k_minus_sq) and math.isfinite(self.k_plus_sq)):
            raise InvalidProfileError("exterior values must be finite")
        if self.k_minus_sq <= 0 or self.k_plus_sq <= 0:
            raise InvalidProfileError(
                f"exterior values must be positive, got {self.k_minus_sq}, {self.k_plus_sq}")
        if self.x_minus > self.x_plus:
            raise InvalidProfileError("x_minus must not exceed x_plus")
        if self.pieces:
            if abs(self.pieces[0].start - self.x_minus) > _TILING_TOL:
                raise InvalidProfileError("first piece must start at x_minus")
            if abs(self.pieces[-1].stop - self.x_plus) > _TILING_TOL:
                raise InvalidProfileError("last piece must stop at x_plus")
            for left, right in zip(self.pieces[:-1], self.pieces[1:]):
                if abs(left.stop - right.start) > _TILING_TOL:
                    raise InvalidProfileError(
                        f"pieces leave a gap or overlap at {left.stop} / {right.start}")
            for p in self.pieces:
                if not p.stop > p.start:
                    raise InvalidProfileError(f"piece {p} has nonpositive length")
                if not math.isfinite(p.k_sq):
                    raise InvalidProfileError(f"piece {p} has a non-finite value")
        elif self.x_plus > self.x_minus:
            raise InvalidProfileError("pieces must tile [x_minus, x_plus]")
        edges = [self.x_minus] + [p.stop for p in self.pieces[:-1]] + [self.x_plus]
        object.__setattr__(self, "breaks", np.unique(np.asarray(edges, dtype=float)))

    @property
    def k_M_sq(self) -> float:
        """Supremum of ``K^2`` over the inhomogeneous region.

        For a single interface (no interior) this is the larger exterior value.
        """
        if not self.pieces:
            return max(self.k_minus_sq, self.k_plus_sq)
        return max(p.k_sq for p in self.pieces)

    @property
    def k_minus(self) -> float:
        return math.sqrt(self.k_minus_sq)

    @property
    def k_plus(self) -> float:
        return math.sqrt(self.k_plus_sq)

    @property
    def k_max_sq(self) -> float:
        """Largest value taken anywhere on the line."""
        return max(self.k_M_sq, self.k_minus_sq, self.k_plus_sq)

    def exterior_k_sq(self, side: str) -> float:
        return self.k_plus_sq if side == "+" else self.k_minus_sq

    @property
    def is_homogeneous(self) -> bool:
        values = {self.k_minus_sq, self.k_plus_sq} | {p.k_sq for p in self.pieces}
        return len(values) == 1

    def jump_points(self) -> np.ndarray:
        """Points where ``K^2`` is discontinuous."""
        values = [self.k_minus_sq] + [p.k_sq for p in self.pieces] + [self.k_plus_sq]
        edges = [self.x_minus] + [p.stop for p in self.pieces]
        return np.array([e for e, a, b in zip(edges, values[:-1], values[1:]) if a != b])

    def __call__(self, x):
        return evaluate_k_sq(self, x)

    def to_dict(self) -> dict:
        return {
            "pieces": [{"from": p.start, "to": p.stop, "k_sq": p.k_sq} for p in self.pieces],
            "k_minus_sq": self.k_minus_sq,
            "k_plus_sq": self.k_plus_sq,
            "x_minus": self.x_minus,
            "x_plus": self.x_plus,
        }


def make_profile(pieces: Sequence[tuple[float, float, float]], k_minus_sq: float,
                 k_plus_sq: float, interface: float | None = None) -> StratifiedProfile:
    """Build a profile from ``(start, stop, k_sq)`` triples.

    ``interface`` places a bare interface (no interior) when ``pieces`` is
    empty.
    """
    ps = tuple(Piece(float(a), float(b), float(v)) for a, b, v in pieces)
    if ps:
        x_minus, x_plus = ps[0].start, ps[-1].stop
    else:
        x_minus = x_plus = 0.0 if interface is None else float(interface)
    return StratifiedProfile(ps, float(k_minus_sq), float(k_plus_sq), x_minus, x_plus)


def make_two_layer(k_minus: float, k_plus: float) -> StratifiedProfile:
    """Two half-lines meeting at ``x = 0`` with wavenumbers ``k_minus``, ``k_plus``."""
    if not (k_minus > 0 and k_plus > 0):
        raise InvalidProfileError(f"wavenumbers must be positive, got {k_minus}, {k_plus}")
    return make_profile([], k_minus ** 2, k_plus ** 2, interface=0.0)


def make_homogeneous(k: float) -> StratifiedProfile:
    return make_two_layer(k, k)


def make_square_well(k_out_sq: float, depth: float, length: float,
                     center: float = 0.0) -> StratifiedProfile:
    """Symmetric well: ``K^2 = k_out_sq + depth`` on an interval of ``length``."""
    half = 0.5 * length
    return make_profile([(center - half, center + half, k_out_sq + depth)], k_out_sq, k_out_sq)


def evaluate_k_sq(profile: StratifiedProfile, x):
    """``K^2(x)``, right-continuous at jumps.  Accepts scalars or arrays."""
    xa = np.asarray(x, dtype=float)
    out = np.where(xa < profile.x_minus, profile.k_minus_sq, profile.k_plus_sq).astype(float)
    for p in profile.pieces:
        out = np.where((xa >= p.start) & (xa < p.stop), p.k_sq, out)
    if np.ndim(x) == 0:
        return float(out)
    return out


def profile_from_dict(data: dict) -> StratifiedProfile:
    """Read the JSON profile format, validating the tiling."""
    try:
        pieces = [(float(p["from"]), float(p["to"]), float(p["k_sq"]))
                  for p in data.get("pieces", [])]
        k_minus_sq = float(data["k_minus_sq"])
        k_plus_sq = float(data["k_plus_sq"])
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidProfileError(f"malformed profile: {exc}") from exc
    pieces.sort(key=lambda p: p[0])
    interface = data.get("x_minus", data.get("interface"))
    return make_profile(pieces, k_minus_sq, k_plus_sq,
                        interface=None if interface is None else float(interface))


def load_profile(path) -> StratifiedProfile:
    with open(path) as fh:
        return profile_from_dict(json.load(fh))


@dataclass(frozen=True)
class HalfPlaneGeometry:
    """Placement of a half-plane in global coordinates.

    Local coordinates follow from a rotation by ``theta`` about ``center``;
    ``epsilon`` is how far the trace line sits inside the half-plane.
    """

    theta: float = 0.0
    center: tuple[float, float] = (0.0, 0.0)
    epsilon: float = 0.1

    def __post_init__(self):
        if not self.epsilon > 0:
            raise InvalidProfileError(f"epsilon must be positive, got {self.epsilon}")
        if not -math.pi < self.theta < math.pi:
            raise InvalidProfileError(f"theta must lie in (-pi, pi), got {self.theta}")
        object.__setattr__(self, "center", (float(self.center[0]), float(self.center[1])))

    @property
    def role(self) -> str:
        """``'north'``, ``'west'`` or ``'east'`` according to the angle range."""
        if self.theta == 0.0:
            return "north"
        if math.pi / 2 <= self.theta < math.pi:
            return "west"
        if -math.pi < self.theta <= -math.pi / 2:
            return "east"
        return "invalid"

    def to_local(self, x, y):
        """Global ``(x, y)`` to local ``(X, Y)``."""
        a, b = self.center
        c, s = math.cos(self.theta), math.sin(self.theta)
        dx = np.asarray(x, dtype=float) - a
        dy = np.asarray(y, dtype=float) - b
        return c * dx + s * dy, -s * dx + c * dy

    def to_global(self, X, Y):
        a, b = self.center
        c, s = math.cos(self.theta), math.sin(self.theta)
        X = np.asarray(X, dtype=float)
        Y = np.asarray(Y, dtype=float)
        return a + c * X - s * Y, b + s * X + c * Y


def default_epsilon(profile: StratifiedProfile) -> float:
    """A tenth of the shortest wavelength scale, ``0.1 / max k``."""
    return 0.1 / math.sqrt(max(profile.k_max_sq, 1e-300))

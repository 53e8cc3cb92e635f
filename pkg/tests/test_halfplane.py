import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from stratwave import (GaussianBump, InvalidDensityError, InvalidTraceError,
                       QuadratureSpec, SpectralDomainError, Transform, make_square_well,
                       make_two_layer, ray_l1_norm, spectral_trace, synthesize_solution)
from stratwave.errors import InvalidTraceWarning
from stratwave.halfplane import (density_from_dict, density_relative_error,
                                 evaluate_representation, helmholtz_residual)
from stratwave.twolayer import psi_two_layer, rho_weight

WIDE = QuadratureSpec(window=(-40.0, 40.0))


@pytest.fixture(scope="module")
def profile():
    return make_two_layer(3.0, 2.0)


@pytest.fixture(scope="module")
def dens():
    return {"+": [GaussianBump(25.0, 3.0)], "-": [GaussianBump(30.0, 3.5, 0.7j)]}


@pytest.fixture(scope="module")
def field(profile, dens):
    return synthesize_solution(dens, profile, extent=40.0)


def trace_of(f, dy=0.0):
    return lambda x: f.evaluate(x, np.full_like(x, dy))


def test_nodes_positive_and_no_point_part(field):
    for d in (field.trace_spectrum.minus, field.trace_spectrum.plus):
        assert np.all(d.nodes > 0)
    assert np.all(field.trace_spectrum.point == 0)


def test_support_touching_zero_rejected(profile):
    with pytest.raises(InvalidDensityError):
        synthesize_solution({"+": [GaussianBump(1.0, 0.5, support=(0.0, 3.0))]}, profile)
    with pytest.raises(InvalidDensityError):
        GaussianBump(1.0, 0.5, support=(2.0, 2.0))
    with pytest.raises(InvalidDensityError):
        density_from_dict({"kind": "box", "center": 1, "width": 1})


def test_zero_field(profile):
    f = synthesize_solution({}, profile)
    assert np.all(f.grid(np.linspace(-1, 1, 3), np.linspace(0, 1, 3)) == 0)
    r = ray_l1_norm(f, 1.0)
    assert r.value == 0 and r.converged
    c, diag = spectral_trace(lambda x: np.zeros_like(x), profile)
    assert c.norm_sq() == 0 and diag.valid and diag.interval_leakage == 0


def test_negative_y_rejected(field):
    with pytest.raises(SpectralDomainError):
        evaluate_representation(field, 0.0, -0.01)
    with pytest.raises(SpectralDomainError):
        field.evaluate(0.0, -1.0)


def test_helmholtz_residual(field):
    x = np.linspace(-3, 3, 121)
    y = np.linspace(0.5, 3.5, 61)
    res, count = helmholtz_residual(field, x, y, x[1] - x[0])
    assert res < 1e-5 and count < 121 * 61


def test_residual_dominated_by_stencil(field):
    # halving h lowers the 8th-order stencil error by roughly 2^8
    x0, y0 = np.array([-1.3, 0.9, 2.2]), np.array([0.4, 1.1])
    r1, _ = helmholtz_residual(field, x0, y0, 0.1)
    r2, _ = helmholtz_residual(field, x0, y0, 0.05)
    assert r2 < r1 / 50


def test_trace_round_trip(profile, field, dens):
    c, diag = spectral_trace(trace_of(field), profile, WIDE)
    assert diag.valid and diag.interval_leakage < 1e-6 and diag.point_leakage == 0
    assert density_relative_error(c.plus, dens["+"][0]) < 1e-6
    assert density_relative_error(c.minus, dens["-"][0]) < 1e-6


def test_shift_law(profile, field, dens):
    s = 0.3
    c, _ = spectral_trace(trace_of(field, s), profile, WIDE)
    for d, bump in ((c.plus, dens["+"][0]), (c.minus, dens["-"][0])):
        exact = lambda lam: bump(lam) * np.exp(-np.sqrt(np.maximum(lam, 0)) * s)
        assert density_relative_error(d, exact) < 1e-5
    sh = field.shifted(s)
    x = np.linspace(-2, 2, 9)
    assert np.allclose(sh.evaluate(x, 0.5), field.evaluate(x, 0.5 + s), atol=1e-14)


def test_guided_mode_trace_rejected():
    p = make_square_well(1.0, 10.0, math.pi)
    tr = Transform(p)
    mode = tr.modes[0]
    with pytest.warns(InvalidTraceWarning):
        _, diag = spectral_trace(mode, p, transform=tr)
    assert diag.point_leakage > 0.99 and not diag.valid
    with pytest.raises(InvalidTraceError):
        spectral_trace(mode, p, transform=tr, strict=True)


def test_narrow_bump_asymptotic(profile):
    lam0, w = 6.0, 1e-3
    f = synthesize_solution({"+": [GaussianBump(lam0, w)]}, profile)
    mass = w * math.sqrt(2 * math.pi) * rho_weight(lam0, 4.0)
    x = np.linspace(-2, 2, 11)
    for y in (0.0, 0.7):
        ref = psi_two_layer(lam0, x, "+", 3.0, 2.0) * math.exp(-math.sqrt(lam0) * y) * mass
        # leading correction is O(w^2)
        assert np.allclose(f.evaluate(x, y), ref, rtol=0, atol=1e-4 * mass)


def test_sup_bound(field):
    u = field.grid(np.linspace(-10, 10, 81), np.linspace(0, 3, 13))
    assert np.max(np.abs(u)) <= field.sup_bound()


def test_linearity_of_synthesis(profile):
    a = GaussianBump(3.0, 0.5, support=(0.5, 7.0))
    b = GaussianBump(9.0, 0.8, 1 - 2j)
    x, y = np.linspace(-3, 3, 7), np.linspace(0, 2, 5)
    fa = synthesize_solution({"+": [a]}, profile).grid(x, y)
    fb = synthesize_solution({"-": [b]}, profile).grid(x, y)
    fab = synthesize_solution({"+": [a], "-": [b]}, profile).grid(x, y)
    assert np.allclose(fab, fa + fb, atol=1e-13)


def test_l2_norm_matches_grid_integration(profile, field):
    eps = field.geometry.epsilon
    tx, wx = np.polynomial.legendre.leggauss(400)
    xs, wxs = 40 * tx, 40 * wx
    ty, wy = np.polynomial.legendre.leggauss(80)
    ys, wys = -eps + 4 * (ty + 1), 4 * wy
    u = field.grid(xs, ys)
    direct = float(wxs @ np.abs(u) ** 2 @ wys)
    assert abs(direct - field.l2_norm_sq()) < 0.01 * direct


def test_weighted_integrability(profile, field):
    c, _ = spectral_trace(trace_of(field), profile, WIDE)
    for s in (-0.5, -0.6, -0.7):
        assert np.isfinite(field.weighted_l1(s)) and field.weighted_l1(s) > 0
        pos = [d for d in (c.minus, c.plus)]
        val = sum(np.sum(d.weights[d.nodes > 0] * d.nodes[d.nodes > 0] ** s
                         * np.abs(d.values[d.nodes > 0])) for d in pos)
        assert np.isfinite(val)


@pytest.mark.parametrize("alpha", [math.pi / 4, math.pi / 2, 3 * math.pi / 4])
def test_ray_converges(field, alpha):
    r = ray_l1_norm(field, alpha)
    assert r.converged and r.tail_bound < 1e-8 * r.value
    assert r.value <= ray_l1_norm(field, alpha, t_max=r.t_max).total_bound * (1 + 1e-12)
    # |u| is only piecewise smooth, so compare with a much finer rule
    fine = ray_l1_norm(field, alpha, t_max=2 * r.t_max, order=40, phase=1.0, quad_tol=1e-12)
    assert abs(fine.value - r.value) <= 1e-8 * r.value


@pytest.mark.parametrize("alpha", [0.0, math.pi, -0.5, 4.0])
def test_ray_angle_domain(field, alpha):
    with pytest.raises(SpectralDomainError):
        ray_l1_norm(field, alpha)


@settings(max_examples=10)
@given(st.floats(1.0, 20.0), st.floats(0.2, 1.0), st.floats(-3, 3), st.floats(0.0, 3.0))
def test_bound_holds_random_fields(center, width, x, y):
    p = make_two_layer(3.0, 2.0)
    b = GaussianBump(center, width, support=(max(0.05, center - 8 * width), center + 8 * width))
    f = synthesize_solution({"+": [b]}, p)
    assert abs(f.evaluate(x, y)) <= f.sup_bound()

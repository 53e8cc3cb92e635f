import math
import warnings

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.optimize import newton

from stratwave import (InvalidProfileError, NearPoleWarning, SpectralDomainError,
                       analyticity_curves, make_junction, make_profile, synthesize_solution,
                       transfer_general, transfer_right_angle, uniqueness_probe)
from stratwave.junction import (check_compatibility, curve_points, denominator_D,
                                kernels_west_explicit, local_coordinates, north_star,
                                split_points, split_trace, touch_point, transfer,
                                transfer_kernel, transfer_right_angle_east, cauchy_residual)
from stratwave.twolayer import beta

from junction_setup import (EAST, NORTH, WEST, fixture_fields, fubini_errors, general_angle,
                            random_field, right_angle)


# coordinates and configuration

def test_local_coordinates_examples():
    jc = right_angle()
    assert local_coordinates(jc, "N", 1.5, -2.0) == (1.5, -2.0)
    X, Y = local_coordinates(jc, "W", -5.0, -1.0)
    assert abs(X) < 1e-15 and abs(Y) < 1e-15
    x, y = 0.3, 2.1
    X, Y = local_coordinates(jc, "W", x, y)
    assert X == pytest.approx(y + 1) and Y == pytest.approx(-x - 5)
    X, Y = local_coordinates(jc, "E", x, y)
    assert X == pytest.approx(-y - 1) and Y == pytest.approx(x - 5)
    g = general_angle()
    _, Y = local_coordinates(g, "W", g.a_NW, 0.0)
    assert abs(Y) < 1e-14
    _, Y = local_coordinates(g, "E", g.a_NE, 0.0)
    assert abs(Y) < 1e-14


def test_kinds_and_angles():
    assert right_angle().kind == "right_angle"
    assert general_angle().kind == "general_angle"
    with pytest.raises(InvalidProfileError):
        make_junction(WEST, NORTH, EAST, theta_W=math.pi)
    with pytest.raises(InvalidProfileError):
        make_junction(WEST, NORTH, EAST, theta_E=-0.3)


def test_compatibility():
    assert check_compatibility(general_angle()) == []
    east_other = make_profile([], 6.25, 3.0, interface=0.0)
    assert check_compatibility(make_junction(WEST, NORTH, east_other,
                                             center_W=(-5, -1), center_E=(5, -1))) == []
    west_bad = make_profile([], 2.25, 5.0, interface=0.0)
    v = check_compatibility(make_junction(west_bad, NORTH, EAST, 2 * math.pi / 3,
                                          -2 * math.pi / 3, (-5, -1), (5, -1)))
    assert len(v) == 1
    north_far = make_profile([], 4.0, 6.25, interface=7.0)
    assert check_compatibility(make_junction(WEST, north_far, EAST, center_W=(-5, -1),
                                             center_E=(5, -1)))


def test_split_points():
    assert split_points(right_angle()) == (-5.0, 5.0)
    g = general_angle()
    assert g.a_NW == pytest.approx(-5.0 + 1.0 / math.tan(2 * math.pi / 3))
    assert split_points(g) == (g.a_NW, g.a_NE)


def test_split_trace():
    x = np.linspace(-10, 10, 401)
    v = np.exp(-x ** 2) * (1 + 1j * x)
    seg = split_trace(x, v, -2.0, 3.0)
    assert seg.left[0].size + seg.middle[0].size + seg.right[0].size == x.size
    inside = np.where(np.abs(x) < 1.5, v, 0)
    s2 = split_trace(x, inside, -2.0, 3.0)
    assert np.all(s2.left[1] == 0) and np.all(s2.right[1] == 0)
    with pytest.raises(SpectralDomainError):
        split_trace(x, v, 1.0, 1.0)


def test_split_transform_additivity():
    from stratwave.gft import psi_matrix
    t, w = np.polynomial.legendre.leggauss(200)
    x, w = 12 * t, 12 * w
    v = np.exp(-0.3 * x ** 2) * np.cos(x)
    lam = np.linspace(-6, 20, 9)
    full = psi_matrix(NORTH, "+", lam, x).conj() @ (w * v)
    seg = split_trace(x, w * v, -2.0, 3.0)
    parts = sum(psi_matrix(NORTH, "+", lam, s[0]).conj() @ s[1]
                for s in (seg.left, seg.middle, seg.right))
    assert np.allclose(parts, full, atol=1e-10)


# transfer kernels

def test_zero_spectrum():
    jc = right_angle()
    f = synthesize_solution({}, WEST, jc.west[0])
    assert np.all(transfer_right_angle(f, jc, [1.0, 5.0]) == 0)
    assert np.all(transfer_general(f, general_angle(), [1.0, 5.0]) == 0)
    g = synthesize_solution({}, EAST, jc.east[0])
    assert np.all(transfer(g, jc, "E", [2.0]) == 0)


@pytest.mark.parametrize("make", [right_angle, general_angle])
@pytest.mark.parametrize("branch", ["+", "-"])
def test_fubini(make, branch):
    errs = fubini_errors(make(), n_fields=4, n_lam=4, seed=11, north_branch=branch)
    assert max(errs["W"].max(), errs["E"].max()) < 1e-5


def test_explicit_forms_match_kernel():
    rng = np.random.default_rng(3)
    lam = np.concatenate([rng.uniform(-6.2, 30, 6), [-5.0, -4.5]])
    for jc in (right_angle(), general_angle()):
        w = random_field(jc, "W", rng)
        k = transfer(w, jc, "W", lam)
        if jc.kind == "right_angle":
            ex = transfer_right_angle(w, jc, lam)
            e = random_field(jc, "E", rng)
            assert np.allclose(transfer_right_angle_east(e, jc, lam), transfer(e, jc, "E", lam),
                               rtol=1e-12, atol=1e-15)
        else:
            ex = transfer_general(w, jc, lam)
        assert np.allclose(ex, k, rtol=1e-12, atol=1e-15)


def test_north_star_on_real_axis():
    lam = np.array([-5.0, -1.0, 3.0])
    bm, bp, R, T = north_star(NORTH, lam)
    # on the cut of beta^- the continuation is the conjugate of the plain value
    assert np.allclose(bm, np.conj(beta(lam, 4.0)))
    assert np.allclose(bp, beta(lam, 6.25))


def test_right_angle_transfer_is_analytic():
    jc = right_angle()
    w, _ = fixture_fields(jc)
    for center, radius in ((5 + 3j, 2.0), (12 - 4j, 3.0), (-2 + 2j, 1.5)):
        assert cauchy_residual(lambda z: transfer_right_angle(w, jc, z), center, radius) < 1e-10


def test_exact_right_angle_general_formula():
    jc = right_angle()
    w, _ = fixture_fields(jc)
    lam = np.linspace(-3.9, 25, 13)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", NearPoleWarning)
        a = transfer_general(w, jc, lam)
    b = transfer_right_angle(w, jc, lam)
    assert np.max(np.abs(a - b)) <= 1e-10 * np.max(np.abs(b))


def degeneration_errors(deltas, lam):
    base = right_angle()
    w, _ = fixture_fields(base)
    ref = transfer_right_angle(w, base, lam)
    errs = []
    for d in deltas:
        jc = make_junction(WEST, NORTH, EAST, math.pi / 2 + d, -math.pi / 2,
                           (-5.0, -1.0), (5.0, -1.0))
        wd = synthesize_solution({}, WEST, jc.west[0])
        wd.trace_spectrum = w.trace_spectrum
        errs.append(np.max(np.abs(transfer_general(wd, jc, lam) - ref)))
    return np.array(errs), np.max(np.abs(ref))


def test_degeneration_first_order():
    lam = np.linspace(-3.5, 25, 15)
    errs, scale = degeneration_errors([1e-2, 1e-3, 1e-4], lam)
    assert errs[1] < 1e-3
    rates = np.log10(errs[:-1] / errs[1:])
    assert np.all(np.abs(rates - 1) < 0.1)


def test_near_pole_warning():
    g = general_angle()
    w, _ = fixture_fields(right_angle())
    lam = curve_points("Lambda_NW", g.west[0].theta, 4.0, 3.0)
    with pytest.warns(NearPoleWarning):
        transfer_general(synthesize_solution({}, WEST, g.west[0]), g, [lam])


# denominators and curves

def test_denominator_right_angle():
    lam = np.array([1 + 1j, -3.0 + 0.5j, 7.0])
    mu = 2.5
    for s in "+-":
        assert np.allclose(denominator_D(s, lam, mu, math.pi / 2, 4.0),
                           math.sqrt(mu) + 1j * beta(lam, 4.0))


def test_dminus_never_vanishes():
    rng = np.random.default_rng(5)
    theta = 2 * math.pi / 3
    lam = rng.uniform(-40, 40, 200) + 1j * rng.uniform(-40, 40, 200)
    lam[:20] = rng.uniform(-3.99, 40, 20)
    mu = np.linspace(1e-6, 100, 200)
    D = denominator_D("-", lam[:, None], mu[None, :], theta, 4.0)
    assert np.min(np.abs(D)) > 0
    assert np.all(D.imag > 0)
    expect = -beta(mu, 4.0)[None, :].real * math.cos(theta) + beta(lam, 4.0)[:, None].real
    assert np.allclose(D.imag, expect)


@pytest.mark.filterwarnings("ignore:Tolerance of")
@given(st.floats(math.pi / 2 + 1e-3, math.pi - 1e-3), st.floats(0.5, 100), st.floats(0.01, 100))
def test_dplus_zero_locus_is_curve(theta, k_sq, mu):
    lam_c = curve_points("Lambda_NW", theta, k_sq, mu)
    f = lambda z: complex(denominator_D("+", z, mu, theta, k_sq))
    # start inside the root's basin, which shrinks near the branch point -k_sq; the
    # secant stalls at ulp level near large roots, so accuracy is asserted below
    start = lam_c + 1e-3 * abs(lam_c + k_sq) * (1 + 1j)
    z = newton(f, start, tol=1e-14, maxiter=100, disp=False)
    assert abs(z - lam_c) <= 1e-10 * max(1.0, abs(lam_c))


def test_touch_points_fig5():
    assert touch_point(2 * math.pi / 3, 81.0) == pytest.approx(-60.75, abs=4 * 2.0 ** -46)
    assert touch_point(-5 * math.pi / 6, 100.0) == pytest.approx(-25.0, abs=4 * 2.0 ** -48)
    s = analyticity_curves(2 * math.pi / 3, 81.0, [0.0, 1.0])
    assert s[0].lam == s[0].touch_point and s[0].lam.imag == 0


@given(st.floats(math.pi / 2, math.pi - 1e-6), st.floats(0.1, 200), st.floats(0, 500))
def test_curve_properties(theta, k_sq, mu):
    nw = curve_points("Lambda_NW", theta, k_sq, mu)
    assert nw.imag >= 0
    p = curve_points("Lambda_NE_plus", -theta, k_sq, mu)
    m = curve_points("Lambda_NE_minus", -theta, k_sq, mu)
    assert m == np.conj(p)
    assert curve_points("Lambda_NW", theta, k_sq, 0.0) == touch_point(theta, k_sq)


@given(st.floats(0.1, 200), st.floats(0, 500))
def test_right_angle_curve_is_half_line(k_sq, mu):
    z = curve_points("Lambda_NW", math.pi / 2, k_sq, mu)
    assert z.real == pytest.approx(-mu - k_sq, rel=1e-14, abs=1e-13)
    assert abs(z.imag) <= 1e-15 * (mu + k_sq)


# probe

def test_zero_probe():
    jc = right_angle()
    w = synthesize_solution({}, WEST, jc.west[0])
    e = synthesize_solution({}, EAST, jc.east[0])
    rep = uniqueness_probe(jc, lambda x: np.zeros(np.shape(x), dtype=complex), w, e,
                           n_interval=20, n_positive=20)
    assert rep.interval_max == 0 and rep.positive_sup == 0 and rep.ratio == 0
    assert all(np.all(v == 0) for v in rep.parts.values())
    assert not rep.flagged


def test_kernel_shapes():
    jc = general_angle()
    w, _ = fixture_fields(right_angle())
    K = transfer_kernel(jc, "W", "+", np.array([1.0, 2.0, 3.0]), w, "+", np.array([5.0, 6.0]))
    assert K.shape == (3, 2)
    Am, Ap = kernels_west_explicit(jc, np.array([1.0, 2.0]), np.array([5.0, 6.0, 7.0]))
    assert Am.shape == Ap.shape == (2, 3)

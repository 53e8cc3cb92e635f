"""Junction configurations and random fields shared by the junction tests."""
import math

import numpy as np

from stratwave import GaussianBump, make_junction, make_profile, synthesize_solution

WEST = make_profile([], 2.25, 4.0, interface=0.0)
NORTH = make_profile([], 4.0, 6.25, interface=0.0)
EAST = make_profile([], 6.25, 2.25, interface=0.0)


def right_angle(center_W=(-5.0, -1.0), center_E=(5.0, -1.0)):
    return make_junction(WEST, NORTH, EAST, center_W=center_W, center_E=center_E)


def general_angle(theta_W=2 * math.pi / 3, theta_E=-2 * math.pi / 3, center_W=(-5.0, -1.0),
                  center_E=(5.0, -1.0)):
    return make_junction(WEST, NORTH, EAST, theta_W, theta_E, center_W, center_E)


def random_field(config, j, rng):
    """A west or east field with one random bump per branch."""
    geo, prof = config.part(j)
    dens = {}
    for br in "+-":
        c = rng.uniform(4.0, 30.0)
        w = rng.uniform(0.3, 1.0)
        amp = complex(rng.normal(), rng.normal())
        dens[br] = [GaussianBump(c, w, amp, support=(max(0.5, c - 8 * w), c + 8 * w))]
    return synthesize_solution(dens, prof, geo)


def fixture_fields(config):
    w = synthesize_solution({"+": [GaussianBump(16.0, 0.4)], "-": [GaussianBump(24.0, 0.5, 0.5j)]},
                            config.west[1], config.west[0])
    e = synthesize_solution({"+": [GaussianBump(14.0, 0.4)], "-": [GaussianBump(20.0, 0.5, 0.3)]},
                            config.east[1], config.east[0])
    return w, e


def fubini_errors(config, n_fields=10, n_lam=5, seed=0, north_branch="+"):
    """Relative kernel-vs-direct errors for random (field, lambda) pairs on both sides."""
    from stratwave.junction import transfer, transfer_direct
    rng = np.random.default_rng(seed)
    k_sq = config.north[1].exterior_k_sq(north_branch)
    out = {"W": [], "E": []}
    for j in ("W", "E"):
        for _ in range(n_fields):
            f = random_field(config, j, rng)
            lam = rng.uniform(-0.98 * k_sq, 30.0, n_lam)
            k = transfer(f, config, j, lam, north_branch)
            d = transfer_direct(f, config, j, lam, north_branch)
            scale = max(float(np.max(np.abs(d))), 1e-300)
            out[j].extend(np.abs(k - d) / scale)
    return {j: np.array(v) for j, v in out.items()}

"""Command-line front end.

Every command reads a JSON config and writes one JSON, CSV or SVG file that
starts with a metadata header (tool version, config hash, quadrature
parameters).  Exit codes: 0 success, 1 invalid input, 2 numerical
non-convergence, 3 I/O failure.
"""
from __future__ import annotations

import argparse
import json
import math
import re
import sys
import warnings

import numpy as np

from . import export
from .errors import ConvergenceError, ResonancePoleError, StratwaveError
from .gft import GaussianPacket, Transform, diagonalization_check
from .halfplane import (HalfPlaneField, density_from_dict, helmholtz_residual,
                        ray_l1_norm, synthesize_solution)
from .junction import (JunctionConfig, analyticity_curves, check_compatibility,
                       consistent_north_trace, transfer, transfer_direct, uniqueness_probe)
from .ode_spectral import (Rectangle, check_existence_condition, eigenfunction_family,
                           find_guided_modes, find_resonances, guided_window, robin_determinant)
from .profile import HalfPlaneGeometry, default_epsilon, profile_from_dict
from .quadrature import QuadratureSpec

COMMANDS = ("modes", "spectrum", "gft-check", "represent", "ray-check", "curves", "resonances",
            "transfer-check", "probe")

EXIT_OK, EXIT_INVALID, EXIT_NONCONVERGED, EXIT_IO = 0, 1, 2, 3


class ConfigError(ValueError):
    """Missing or malformed config entry."""


class NotConverged(Exception):
    """Raised after output is written when some computation did not converge."""


# --------------------------------------------------------------------------
# config helpers

_ANGLE = re.compile(r"^\s*([+-]?\d*\.?\d*)\s*\*?\s*pi\s*(?:/\s*(\d+(?:\.\d*)?))?\s*$")


def parse_angle(v):
    """Number, or a string like ``'2pi/3'``, ``'-5*pi/6'``, ``'pi/2'``."""
    if isinstance(v, (int, float)):
        return float(v)
    if isinstance(v, str):
        m = _ANGLE.match(v)
        if m:
            num = m.group(1)
            num = -1.0 if num == "-" else 1.0 if num in ("", "+") else float(num)
            den = float(m.group(2)) if m.group(2) else 1.0
            return num * math.pi / den
    raise ConfigError(f"cannot read angle {v!r}")


def require(cfg, *keys):
    missing = [k for k in keys if k not in cfg]
    if missing:
        raise ConfigError(f"missing required field(s): {', '.join(missing)}")


def read_grid(v, name):
    """``[start, stop, num]``, ``{'start', 'stop', 'num'}`` or an explicit list."""
    if isinstance(v, dict):
        require(v, "start", "stop", "num")
        return np.linspace(float(v["start"]), float(v["stop"]), int(v["num"]))
    if isinstance(v, (list, tuple)):
        if len(v) == 3 and isinstance(v[2], int) and not isinstance(v[2], bool) and v[2] > 3:
            return np.linspace(float(v[0]), float(v[1]), int(v[2]))
        return np.asarray(v, dtype=float)
    raise ConfigError(f"cannot read grid {name!r}")


def read_complex(v):
    if isinstance(v, (list, tuple)):
        return complex(float(v[0]), float(v[1]))
    return complex(float(v))


def read_densities(d):
    if not isinstance(d, dict) or not set(d) <= {"+", "-"}:
        raise ConfigError("densities must map '+' and/or '-' to lists of bumps")
    return {b: [density_from_dict(x) for x in d.get(b, [])] for b in ("+", "-")}


def read_geometry(d, profile, default_theta=0.0):
    theta = parse_angle(d.get("theta", default_theta))
    center = tuple(float(c) for c in d.get("center", (0.0, 0.0)))
    eps = float(d.get("epsilon", default_epsilon(profile)))
    return HalfPlaneGeometry(theta, center, eps)


def read_junction(d):
    require(d, "west", "north", "east")
    parts = []
    for key, th in (("west", math.pi / 2), ("north", 0.0), ("east", -math.pi / 2)):
        p = d[key]
        require(p, "profile")
        prof = profile_from_dict(p["profile"])
        parts.append((read_geometry(p, prof, th), prof))
    return JunctionConfig(*parts)


def read_quadrature(cfg, args):
    q = dict(cfg.get("quadrature", {}))
    for name in ("order", "phase", "t_max", "tail_tol"):
        v = getattr(args, name, None)
        if v is not None:
            q[name] = v
    kw = {}
    if "window" in q:
        kw["window"] = tuple(float(v) for v in q["window"])
    if "order" in q:
        kw["order"] = int(q["order"])
    for k in ("phase", "tail_tol", "max_t"):
        if k in q:
            kw[k] = float(q[k])
    if q.get("t_max") is not None:
        kw["t_max"] = float(q["t_max"])
    return QuadratureSpec(**kw)


# --------------------------------------------------------------------------
# commands; each returns (payload, (header, rows), svg spec)


def cmd_modes(cfg, args):
    require(cfg, "profile")
    prof = profile_from_dict(cfg["profile"])
    modes = find_guided_modes(prof, tol=float(cfg.get("tol", 1e-12)),
                              n_grid=int(cfg.get("n_grid", 2048)))
    lo, hi = guided_window(prof)
    try:
        exist = check_existence_condition(prof)
    except StratwaveError:
        exist = None
    payload = {"profile": prof.to_dict(), "window": [lo, hi], "count": len(modes),
               "existence_condition": exist,
               "modes": [dict(index=i, **m.to_dict(int(cfg.get("samples_per_piece", 32))))
                         for i, m in enumerate(modes)]}
    rows = [(i, m.lambda_n, m.kappa_minus, m.kappa_plus) for i, m in enumerate(modes)]
    tail = 4.0 / min([min(m.kappa_minus, m.kappa_plus) for m in modes], default=2.0)
    x = np.linspace(prof.x_minus - tail, prof.x_plus + tail, 400)
    series = [{"x": x, "y": m.evaluate(x), "label": f"lambda={m.lambda_n:.5g}"} for m in modes]
    return payload, (["index", "lambda", "decay_minus", "decay_plus"], rows), \
        {"series": series, "title": "guided modes", "xlabel": "x", "ylabel": "psi_n(x)"}


def cmd_spectrum(cfg, args):
    require(cfg, "profile", "lambda", "x")
    prof = profile_from_dict(cfg["profile"])
    lam = np.array([read_complex(v) for v in cfg["lambda"]])
    x = read_grid(cfg["x"], "x")
    sides = ["+", "-"] if cfg.get("side", "both") == "both" else [cfg["side"]]
    if not set(sides) <= {"+", "-"}:
        raise ConfigError("side must be '+', '-' or 'both'")
    out, rows, series = [], [], []
    det = robin_determinant(lam, prof)
    pole_tol = float(cfg.get("pole_tol", 1e-12))
    for side in sides:
        fam = eigenfunction_family(lam, side, prof, pole_tol=pole_tol)
        psi = fam.evaluate(x)
        for i, l in enumerate(lam):
            entry = {"side": side, "lambda": l, "R": fam.R[i], "T": fam.T[i],
                     "beta_minus": fam.beta_minus[i], "beta_plus": fam.beta_plus[i],
                     "determinant": det[i]}
            if l.imag == 0 and l.real > -min(prof.k_minus_sq, prof.k_plus_sq):
                entry["flux_defect"] = float(abs(abs(fam.R[i]) ** 2 + (
                    fam.beta_minus[i] / fam.beta_plus[i] if side == "+" else
                    fam.beta_plus[i] / fam.beta_minus[i]).real * abs(fam.T[i]) ** 2 - 1))
            out.append(entry)
            rows.extend((side, l.real, l.imag, xv, p.real, p.imag) for xv, p in zip(x, psi[i]))
            series.append({"x": x, "y": psi[i].real, "label": f"Re Psi{side}({l.real:.3g})"})
    payload = {"profile": prof.to_dict(), "x": x, "eigenfunctions": out}
    return payload, (["side", "lambda_re", "lambda_im", "x", "psi_re", "psi_im"], rows), \
        {"series": series, "title": "generalized eigenfunctions", "xlabel": "x",
         "ylabel": "Re Psi"}


def _battery(cfg, args):
    if "functions" in cfg:
        return [GaussianPacket.from_dict(f) for f in cfg["functions"]]
    if "battery" in cfg:
        b = cfg["battery"]
        rng = np.random.default_rng(args.seed if args.seed is not None else b.get("seed", 0))
        n = int(b.get("count", 20))
        c0, c1 = b.get("center_range", [-2.0, 2.0])
        w0, w1 = b.get("width_range", [0.5, 1.5])
        f0, f1 = b.get("frequency_range", [0.0, 0.0])
        return [GaussianPacket(rng.uniform(c0, c1), rng.uniform(w0, w1),
                               complex(*rng.normal(size=2)), rng.uniform(f0, f1))
                for _ in range(n)]
    raise ConfigError("gft-check needs 'functions' or 'battery'")


def cmd_gft_check(cfg, args):
    require(cfg, "profile")
    prof = profile_from_dict(cfg["profile"])
    spec = read_quadrature(cfg, args)
    funcs = _battery(cfg, args)
    tr = Transform(prof, spec)
    results = []
    first = None
    for f in funcs:
        c = tr.forward(f)
        err = abs(c.input_norm_sq - c.norm_sq()) / c.input_norm_sq
        entry = {"function": f.to_dict(), "plancherel_error": err,
                 "nodes": int(c.minus.nodes.size + c.plus.nodes.size),
                 "t_max": float(max(c.minus.t.max(), c.plus.t.max())),
                 "point": c.point}
        if cfg.get("diagonalization", True):
            entry["diagonalization_error"] = diagonalization_check(
                f, prof, a_phi=f.operator(prof), transform=tr)
        results.append(entry)
        first = first or c
    payload = {"profile": prof.to_dict(), "results": results,
               "max_plancherel_error": max(r["plancherel_error"] for r in results),
               "eigenvalues": [m.lambda_n for m in tr.modes]}
    if cfg.get("diagonalization", True):
        payload["max_diagonalization_error"] = max(r["diagonalization_error"] for r in results)
    header = ["index", "plancherel_error", "diagonalization_error", "nodes", "t_max"]
    rows = [(i, r["plancherel_error"], r.get("diagonalization_error", float("nan")),
             r["nodes"], r["t_max"]) for i, r in enumerate(results)]
    series = [{"x": d.nodes, "y": np.abs(d.values), "label": f"|phi_hat{d.branch}|"}
              for d in (first.minus, first.plus)]
    return payload, (header, rows), {"series": series, "title": "transform of the first input",
                                     "xlabel": "lambda", "ylabel": "|phi_hat|"}


def _field(cfg, key="densities", profile_key="profile"):
    require(cfg, profile_key, key)
    prof = profile_from_dict(cfg[profile_key])
    geo = read_geometry(cfg.get("geometry", {}), prof)
    f = synthesize_solution(read_densities(cfg[key]), prof, geo,
                            extent=float(cfg.get("extent", 20.0)))
    return prof, f


def cmd_represent(cfg, args):
    require(cfg, "grid")
    prof, f = _field(cfg)
    require(cfg["grid"], "x", "y")
    x = read_grid(cfg["grid"]["x"], "x")
    y = read_grid(cfg["grid"]["y"], "y")
    u = f.grid(x, y)
    payload = {"profile": prof.to_dict(), "l2_norm_sq": f.l2_norm_sq(),
               "sup_bound": f.sup_bound(), "x": x, "y": y,
               "values_re": u.real, "values_im": u.imag}
    if x.size > 8 and y.size > 8 and np.allclose(np.diff(x), x[1] - x[0]) \
            and np.allclose(np.diff(y), y[1] - y[0]) and abs((x[1] - x[0]) - (y[1] - y[0])) < 1e-12:
        h = float(x[1] - x[0])
        if y[0] - 4 * h >= -f.geometry.epsilon:
            res, count = helmholtz_residual(f, x, y, h)
            payload["helmholtz_residual"] = res
            payload["residual_points"] = count
    rows = [(xv, yv, u[i, j].real, u[i, j].imag) for i, xv in enumerate(x)
            for j, yv in enumerate(y)]
    series = [{"x": x, "y": u[:, j].real, "label": f"y={y[j]:.3g}"}
              for j in np.unique(np.linspace(0, y.size - 1, min(4, y.size)).astype(int))]
    return payload, (["x", "y", "re", "im"], rows), \
        {"series": series, "title": "half-plane field", "xlabel": "x", "ylabel": "Re u"}


def cmd_ray_check(cfg, args):
    prof, f = _field(cfg)
    alphas = [parse_angle(a) for a in cfg.get("alphas", ["pi/4", "pi/2", "3pi/4"])]
    tol = float(cfg.get("tol", 1e-8))
    res = [ray_l1_norm(f, a, tol=tol) for a in alphas]
    payload = {"profile": prof.to_dict(), "rays": [
        {"alpha": a, "value": r.value, "tail_bound": r.tail_bound, "converged": r.converged,
         "t_max": r.t_max, "total_bound": r.total_bound} for a, r in zip(alphas, res)]}
    rows = [(a, r.value, r.tail_bound, r.converged, r.t_max) for a, r in zip(alphas, res)]
    series = []
    for a, r in zip(alphas, res):
        t = np.linspace(0, r.t_max, 300)
        series.append({"x": t, "y": np.abs(f.evaluate(t * math.cos(a), t * math.sin(a))),
                       "label": f"alpha={a:.4g}"})
    if not all(r.converged for r in res):
        payload["not_converged"] = [a for a, r in zip(alphas, res) if not r.converged]
    return payload, (["alpha", "value", "tail_bound", "converged", "t_max"], rows), \
        {"series": series, "title": "|u| along rays", "xlabel": "t", "ylabel": "|u|"}


def cmd_curves(cfg, args):
    require(cfg, "k_N_minus", "k_N_plus", "theta_W", "theta_E")
    km, kp = float(cfg["k_N_minus"]), float(cfg["k_N_plus"])
    tw, te = parse_angle(cfg["theta_W"]), parse_angle(cfg["theta_E"])
    if not math.pi / 2 <= tw < math.pi or not -math.pi < te <= -math.pi / 2:
        raise ConfigError("theta_W must lie in [pi/2, pi) and theta_E in (-pi, -pi/2]")
    mu = read_grid(cfg.get("mu", [0.0, 100.0, 201]), "mu")
    samples = (analyticity_curves(tw, km * km, mu, "Lambda_NW")
               + analyticity_curves(te, kp * kp, mu, ["Lambda_NE_plus", "Lambda_NE_minus"]))
    rows = [(s.which, s.mu, s.lam.real, s.lam.imag) for s in samples]
    touch = {"Lambda_NW": -km * km * math.sin(tw) ** 2, "Lambda_NE": -kp * kp * math.sin(te) ** 2}
    payload = {"touch_points": touch,
               "curves": [{"which": s.which, "mu": s.mu, "lambda": s.lam} for s in samples]}
    series = []
    for w in ("Lambda_NW", "Lambda_NE_plus", "Lambda_NE_minus"):
        pts = [s.lam for s in samples if s.which == w]
        series.append({"x": [p.real for p in pts], "y": [p.imag for p in pts], "label": w})
    return payload, (["curve", "mu", "re_lambda", "im_lambda"], rows), \
        {"series": series, "title": "analyticity curves", "xlabel": "Re lambda",
         "ylabel": "Im lambda"}


def cmd_resonances(cfg, args):
    require(cfg, "profile")
    prof = profile_from_dict(cfg["profile"])
    rects = cfg.get("rectangles", [cfg["rectangle"]] if "rectangle" in cfg else None)
    if not rects:
        raise ConfigError("missing required field(s): rectangles")
    out, rows, pts = [], [], []
    for i, r in enumerate(rects):
        if len(r) != 4:
            raise ConfigError("a rectangle is [re0, re1, im0, im1]")
        rect = Rectangle(*map(float, r))
        zs = find_resonances(prof, rect, min_size=float(cfg.get("min_size", 1e-3)))
        det = robin_determinant(np.array(zs, dtype=complex), prof) if zs else np.zeros(0)
        out.append({"rectangle": list(map(float, r)), "count": len(zs), "zeros": zs,
                    "residuals": np.abs(det)})
        rows.extend((i, z.real, z.imag, abs(d)) for z, d in zip(zs, det))
        pts.extend(zs)
    payload = {"profile": prof.to_dict(), "regions": out}
    series = [{"x": [z.real for z in pts], "y": [z.imag for z in pts], "label": "zeros",
               "style": "points"}]
    return payload, (["rectangle", "re", "im", "abs_det"], rows), \
        {"series": series, "title": "determinant zeros", "xlabel": "Re lambda",
         "ylabel": "Im lambda"}


def _junction_fields(cfg):
    require(cfg, "junction", "west", "east")
    jc = read_junction(cfg["junction"])
    issues = check_compatibility(jc)
    if issues and not cfg.get("allow_incompatible", False):
        raise ConfigError("incompatible junction: " + "; ".join(issues))
    ext = float(cfg.get("extent", 30.0))
    fw = synthesize_solution(read_densities(cfg["west"]), jc.west[1], jc.west[0], extent=ext)
    fe = synthesize_solution(read_densities(cfg["east"]), jc.east[1], jc.east[0], extent=ext)
    return jc, fw, fe, issues


def cmd_transfer_check(cfg, args):
    jc, fw, fe, issues = _junction_fields(cfg)
    if "lambda" in cfg:
        lam = np.asarray(cfg["lambda"], dtype=float)
    else:
        r = cfg.get("random", {"count": 20})
        rng = np.random.default_rng(args.seed if args.seed is not None else r.get("seed", 0))
        pn = jc.north[1]
        lo = float(r.get("low", -0.95 * min(pn.k_minus_sq, pn.k_plus_sq)))
        lam = np.sort(rng.uniform(lo, float(r.get("high", 20.0)), int(r.get("count", 20))))
    branch = cfg.get("north_branch", "+")
    out, rows, series = {}, [], []
    worst = 0.0
    for j, f in (("W", fw), ("E", fe)):
        k = transfer(f, jc, j, lam, branch)
        d = transfer_direct(f, jc, j, lam, branch)
        scale = max(float(np.max(np.abs(d))), 1e-300)
        err = np.abs(k - d) / scale
        worst = max(worst, float(np.max(err)))
        out[j] = {"kernel": k, "direct": d, "relative_error": err}
        rows.extend((j, l, a.real, a.imag, b.real, b.imag, e) for l, a, b, e in zip(lam, k, d, err))
        series.append({"x": lam, "y": np.abs(k), "label": f"|kernel {j}|"})
        series.append({"x": lam, "y": np.abs(d), "label": f"|direct {j}|", "style": "points"})
    payload = {"kind": jc.kind, "a_NW": jc.a_NW, "a_NE": jc.a_NE, "north_branch": branch,
               "lambda": lam, "sides": out, "max_relative_error": worst,
               "compatibility_issues": issues}
    return payload, (["side", "lambda", "kernel_re", "kernel_im", "direct_re", "direct_im",
                      "relative_error"], rows), \
        {"series": series, "title": "transfer: kernel vs direct", "xlabel": "lambda",
         "ylabel": "|phi_hat_N part|"}


def cmd_probe(cfg, args):
    jc, fw, fe, issues = _junction_fields(cfg)
    north = cfg.get("north", {"mode": "consistent"})
    if north.get("mode", "consistent") != "consistent":
        raise ConfigError("only north mode 'consistent' is supported")
    trace = consistent_north_trace(jc, fw, fe, degree=int(north.get("degree", 60)),
                                   penalty=float(north.get("penalty", 1e-13)))
    if cfg.get("zero_east", False):
        ts = fe.trace_spectrum
        zero = type(ts)(ts.minus.with_values(0 * ts.minus.values),
                        ts.plus.with_values(0 * ts.plus.values), ts.point)
        fe = HalfPlaneField(fe.profile, fe.geometry, zero)
    rep = uniqueness_probe(jc, trace, fw, fe)
    payload = rep.to_dict()
    payload["fit_residual"] = trace.fit_residual
    payload["zero_east"] = bool(cfg.get("zero_east", False))
    rows = [(l, abs(t), abs(a), abs(b), abs(c)) for l, t, a, b, c in
            zip(rep.interval_lambda, rep.interval_values, rep.parts["W"], rep.parts["0"],
                rep.parts["E"])]
    rows += [(l, abs(t), "", "", "") for l, t in zip(rep.positive_lambda, rep.positive_values)]
    series = [{"x": rep.interval_lambda, "y": np.abs(rep.interval_values), "label": "interval"},
              {"x": rep.positive_lambda, "y": np.abs(rep.positive_values), "label": "lambda > 0"}]
    for k in ("W", "0", "E"):
        series.append({"x": rep.interval_lambda, "y": np.abs(rep.parts[k]), "label": f"part {k}"})
    return payload, (["lambda", "abs_total", "abs_W", "abs_0", "abs_E"], rows), \
        {"series": series, "title": "north transform", "xlabel": "lambda",
         "ylabel": "|phi_hat+_N|"}


HANDLERS = {"modes": cmd_modes, "spectrum": cmd_spectrum, "gft-check": cmd_gft_check,
            "represent": cmd_represent, "ray-check": cmd_ray_check, "curves": cmd_curves,
            "resonances": cmd_resonances, "transfer-check": cmd_transfer_check,
            "probe": cmd_probe}


# --------------------------------------------------------------------------


def build_parser():
    p = argparse.ArgumentParser(prog="stratwave", description=__doc__.splitlines()[0])
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--config", required=True, help="JSON config file")
    p.add_argument("--out", required=True, help="output file")
    p.add_argument("--format", choices=("csv", "json", "svg"), default=None,
                   help="output format (default: from the file suffix, else json)")
    p.add_argument("--threads", type=int, default=None, help="cap on BLAS worker threads")
    p.add_argument("--seed", type=int, default=None, help="seed for random batteries")
    p.add_argument("--order", type=int, default=None, help="Gauss-Legendre points per panel")
    p.add_argument("--phase", type=float, default=None, help="largest phase per panel")
    p.add_argument("--t-max", dest="t_max", type=float, default=None, help="spectral cut-off")
    p.add_argument("--tail-tol", dest="tail_tol", type=float, default=None,
                   help="adaptive truncation tolerance")
    return p


def _limit_threads(n):
    if n is None:
        return None
    try:
        from threadpoolctl import threadpool_limits
    except ImportError:
        return None
    return threadpool_limits(limits=n)


def run(argv=None):
    args = build_parser().parse_args(argv)
    fmt = args.format
    if fmt is None:
        suffix = args.out.rsplit(".", 1)[-1].lower() if "." in args.out else ""
        fmt = suffix if suffix in ("csv", "json", "svg") else "json"
    try:
        with open(args.config) as fh:
            text = fh.read()
    except OSError as exc:
        print(f"error: cannot read config: {exc}", file=sys.stderr)
        return EXIT_IO
    try:
        cfg = json.loads(text)
        if not isinstance(cfg, dict):
            raise ConfigError("config must be a JSON object")
        if cfg.get("command", args.command) != args.command:
            raise ConfigError(f"config is for command {cfg['command']!r}, not {args.command!r}")
        spec = read_quadrature(cfg, args)
        _limit_threads(args.threads)
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            payload, (header, rows), svg = HANDLERS[args.command](cfg, args)
    except (json.JSONDecodeError, ConfigError, KeyError, TypeError) as exc:
        print(f"error: invalid config: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (ConvergenceError, ResonancePoleError) as exc:
        print(f"error: no convergence: {exc}", file=sys.stderr)
        return EXIT_NONCONVERGED
    except (StratwaveError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVALID
    for w in caught:
        print(f"warning: {w.category.__name__}: {w.message}", file=sys.stderr)
    quad = spec.to_dict() if args.command in ("gft-check",) else {
        k: v for k, v in spec.to_dict().items() if k in ("order", "phase")}
    meta = export.metadata(args.command, cfg, quad)
    if fmt == "json":
        text = export.dumps_json(meta, payload)
    elif fmt == "csv":
        text = export.dumps_csv(meta, header, rows)
    else:
        text = export.dumps_svg(meta, svg["series"], svg.get("title", ""), svg.get("xlabel", ""),
                                svg.get("ylabel", ""))
    try:
        with open(args.out, "w") as fh:
            fh.write(text)
    except OSError as exc:
        print(f"error: cannot write output: {exc}", file=sys.stderr)
        return EXIT_IO
    if payload.get("not_converged"):
        print(f"error: rays did not converge: {payload['not_converged']}", file=sys.stderr)
        return EXIT_NONCONVERGED
    return EXIT_OK


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()

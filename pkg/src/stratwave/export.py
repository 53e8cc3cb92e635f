"""Deterministic JSON, CSV and SVG writers with a metadata header."""
from __future__ import annotations

import csv
import hashlib
import io
import json
import math

import numpy as np


def to_jsonable(obj):
    """Plain Python structure; complex numbers become ``[re, im]``."""
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return to_jsonable(obj.tolist())
    if isinstance(obj, (complex, np.complexfloating)):
        return [float(obj.real), float(obj.imag)]
    if isinstance(obj, (np.floating, float)):
        v = float(obj)
        return v if math.isfinite(v) else str(v)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    return obj


def canonical_json(obj):
    return json.dumps(to_jsonable(obj), sort_keys=True, separators=(",", ":"))


def config_hash(config):
    return hashlib.sha256(canonical_json(config).encode()).hexdigest()


def metadata(command, config, quadrature=None):
    from . import __version__
    return {"tool": "stratwave", "version": __version__, "command": command,
            "config_hash": config_hash(config), "quadrature": to_jsonable(quadrature or {})}


def dumps_json(meta, payload):
    return json.dumps({"metadata": to_jsonable(meta), "result": to_jsonable(payload)},
                      sort_keys=True, indent=2) + "\n"


def _fmt(v):
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (float, np.floating)):
        return "%.15g" % v
    return str(v)


def dumps_csv(meta, header, rows):
    """CSV text; metadata goes first as ``# key: value`` lines."""
    buf = io.StringIO()
    for k in sorted(meta):
        v = meta[k]
        buf.write(f"# {k}: {canonical_json(v) if isinstance(v, dict) else v}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([_fmt(v) for v in r])
    return buf.getvalue()


# --------------------------------------------------------------------------
# SVG

_COLORS = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b"]


def _ticks(lo, hi, n=5):
    if hi <= lo:
        return [lo]
    step = 10 ** math.floor(math.log10((hi - lo) / n))
    for m in (1, 2, 5, 10):
        if (hi - lo) / (m * step) <= n:
            step *= m
            break
    start = math.ceil(lo / step) * step
    return [start + i * step for i in range(int((hi - start) / step + 1e-9) + 1)]


def dumps_svg(meta, series, title="", xlabel="", ylabel="", width=640, height=420):
    """Line/point plot.

    ``series`` is a list of dicts with ``x``, ``y``, ``label`` and optional
    ``style`` (``'line'`` or ``'points'``).
    """
    pad_l, pad_r, pad_t, pad_b = 70, 150, 40, 50
    xs = np.concatenate([np.asarray(s["x"], float) for s in series]) if series else np.zeros(1)
    ys = np.concatenate([np.asarray(s["y"], float) for s in series]) if series else np.zeros(1)
    ok = np.isfinite(xs) & np.isfinite(ys)
    xs, ys = (xs[ok], ys[ok]) if ok.any() else (np.zeros(1), np.zeros(1))
    x0, x1 = float(xs.min()), float(xs.max())
    y0, y1 = float(ys.min()), float(ys.max())
    if x1 == x0:
        x0, x1 = x0 - 1, x1 + 1
    if y1 == y0:
        y0, y1 = y0 - 1, y1 + 1
    pw, ph = width - pad_l - pad_r, height - pad_t - pad_b
    X = lambda v: pad_l + (v - x0) / (x1 - x0) * pw
    Y = lambda v: pad_t + (y1 - v) / (y1 - y0) * ph
    out = ['<?xml version="1.0" encoding="UTF-8"?>',
           f"<!-- {canonical_json(meta)} -->",
           f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
           f'font-family="sans-serif" font-size="11">',
           f'<rect x="{pad_l}" y="{pad_t}" width="{pw}" height="{ph}" fill="none" stroke="#000"/>']
    for t in _ticks(x0, x1):
        out.append(f'<line x1="{X(t):.2f}" y1="{pad_t + ph}" x2="{X(t):.2f}" '
                   f'y2="{pad_t + ph + 4}" stroke="#000"/>')
        out.append(f'<text x="{X(t):.2f}" y="{pad_t + ph + 16}" text-anchor="middle">{t:.4g}</text>')
    for t in _ticks(y0, y1):
        out.append(f'<line x1="{pad_l - 4}" y1="{Y(t):.2f}" x2="{pad_l}" y2="{Y(t):.2f}" '
                   f'stroke="#000"/>')
        out.append(f'<text x="{pad_l - 6}" y="{Y(t) + 4:.2f}" text-anchor="end">{t:.4g}</text>')
    out.append(f'<text x="{pad_l + pw / 2}" y="{height - 10}" text-anchor="middle">{xlabel}</text>')
    out.append(f'<text x="16" y="{pad_t + ph / 2}" text-anchor="middle" '
               f'transform="rotate(-90 16 {pad_t + ph / 2})">{ylabel}</text>')
    out.append(f'<text x="{pad_l + pw / 2}" y="22" text-anchor="middle" font-size="13">'
               f'{title}</text>')
    for i, s in enumerate(series):
        col = _COLORS[i % len(_COLORS)]
        x = np.asarray(s["x"], float)
        y = np.asarray(s["y"], float)
        m = np.isfinite(x) & np.isfinite(y)
        if s.get("style", "line") == "points":
            for a, b in zip(x[m], y[m]):
                out.append(f'<circle cx="{X(a):.2f}" cy="{Y(b):.2f}" r="2.5" fill="{col}"/>')
        else:
            pts = " ".join(f"{X(a):.2f},{Y(b):.2f}" for a, b in zip(x[m], y[m]))
            out.append(f'<polyline points="{pts}" fill="none" stroke="{col}" stroke-width="1.4"/>')
        ly = pad_t + 14 + 16 * i
        out.append(f'<line x1="{width - pad_r + 10}" y1="{ly - 4}" x2="{width - pad_r + 28}" '
                   f'y2="{ly - 4}" stroke="{col}" stroke-width="2"/>')
        out.append(f'<text x="{width - pad_r + 32}" y="{ly}">{s.get("label", "")}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"

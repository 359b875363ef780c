"""Deterministic SVG output for Euclidean and Poincare-disk drawings.

Coordinates are printed with a fixed number of decimals, so the same drawing
always gives the same bytes.
"""

from __future__ import annotations

import math

from .hyperbolic import geodesic_through

SIZE = 800
PAD = 20
DIGITS = 3


def _f(x: float) -> str:
    s = f"{x:.{DIGITS}f}"
    return "0.000" if s == "-0.000" else s


def _header(extra=""):
    return (f'<?xml version="1.0" encoding="UTF-8"?>\n'
            f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" height="{SIZE}" '
            f'viewBox="0 0 {SIZE} {SIZE}">\n{extra}')


def _vertices(pts, r):
    return "".join(f'<circle cx="{_f(x)}" cy="{_f(y)}" r="{r}" fill="black"/>\n' for x, y in pts)


def _euclid_frame(coords):
    xs = [float(x) for x, _ in coords]
    ys = [float(y) for _, y in coords]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    span = max(x1 - x0, y1 - y0) or 1.0
    s = (SIZE - 2 * PAD) / span
    cx, cy = (x0 + x1) / 2, (y0 + y1) / 2
    return lambda p: (SIZE / 2 + (float(p[0]) - cx) * s, SIZE / 2 - (float(p[1]) - cy) * s)


def svg_euclid(coords, edges) -> str:
    """Straight-line drawing scaled to fit the canvas (y axis pointing up)."""
    if not coords:
        return _header() + "</svg>\n"
    tr = _euclid_frame(coords)
    pts = [tr(p) for p in coords]
    out = [_header()]
    out.append('<g stroke="black" stroke-width="1" fill="none">\n')
    for u, v in edges:
        (a, b), (c, d) = pts[u], pts[v]
        out.append(f'<line x1="{_f(a)}" y1="{_f(b)}" x2="{_f(c)}" y2="{_f(d)}"/>\n')
    out.append("</g>\n")
    out.append(_vertices(pts, 2))
    out.append("</svg>\n")
    return "".join(out)


def svg_poincare(coords, edges) -> str:
    """Poincare-disk drawing: unit circle plus one circular arc (or segment) per edge."""
    R = (SIZE - 2 * PAD) / 2

    def tr(z):
        return SIZE / 2 + z.real * R, SIZE / 2 - z.imag * R

    zs = [complex(float(x), float(y)) for x, y in coords]
    out = [_header()]
    out.append(f'<circle cx="{_f(SIZE / 2)}" cy="{_f(SIZE / 2)}" r="{_f(R)}" stroke="gray" fill="none"/>\n')
    out.append('<g stroke="black" stroke-width="1" fill="none">\n')
    for u, v in edges:
        p, q = zs[u], zs[v]
        (a, b), (c, d) = tr(p), tr(q)
        G = geodesic_through(p, q)
        if G.is_diameter:
            out.append(f'<line x1="{_f(a)}" y1="{_f(b)}" x2="{_f(c)}" y2="{_f(d)}"/>\n')
            continue
        cz = G.center
        cr = (p - cz).conjugate() * (q - cz)
        # the screen y axis points down, so counterclockwise in the disk is the
        # negative SVG angle direction (sweep flag 0)
        sweep = 0 if cr.imag > 0 else 1
        rad = G.radius * R
        out.append(f'<path d="M {_f(a)} {_f(b)} A {_f(rad)} {_f(rad)} 0 0 {sweep} {_f(c)} {_f(d)}"/>\n')
    out.append("</g>\n")
    out.append(_vertices([tr(z) for z in zs], 1.5))
    out.append("</svg>\n")
    return "".join(out)


def render(df) -> str:
    """SVG for a ``DrawingFile``; needs its ``edges``."""
    edges = df.edges or []
    if df.model == "poincare":
        return svg_poincare(df.coords, edges)
    return svg_euclid(df.coords, edges)

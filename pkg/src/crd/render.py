"""SVG rendering of ideal polygons and orbits in the Poincare disk.

Real-field vertices sit on RP^1 and are moved to the unit circle by the Cayley
transform; edges become circular arcs orthogonal to the boundary. Complex-field
vertices live on the sphere at infinity and are drawn through the inverse
stereographic projection onto the equatorial disk, with straight chords.
"""

from __future__ import annotations

import cmath
import math
from typing import Iterable, Optional

from .polygon import TwistedPolygon
from .projective import ProjectivePoint, chordal
from .tolerances import DEFAULT, Tolerances

_SIZE = 500.0
_R = 230.0
_CX = _CY = _SIZE / 2.0


def _fmt(x: float) -> str:
    return f"{x:.2f}"


def _disk_xy(w: complex):
    return _CX + _R * w.real, _CY - _R * w.imag


def boundary_point(v: ProjectivePoint, field: str) -> complex:
    """Position of an ideal vertex on/inside the closed unit disk."""
    if field == "real":
        # Cayley: x -> (x - i)/(x + i) sends RP^1 to the unit circle
        num = v.num - 1j * v.den
        den = v.num + 1j * v.den
        return num / den
    z = v.affine()
    if cmath.isinf(z):
        return 0.0 + 0j
    r2 = abs(z) ** 2
    return 2.0 * z / (1.0 + r2)


def _geodesic_path(w1: complex, w2: complex) -> str:
    """SVG path of the hyperbolic geodesic between two boundary points."""
    x1, y1 = _disk_xy(w1)
    x2, y2 = _disk_xy(w2)
    dot = (w1 * w2.conjugate()).real
    if abs(w1 + w2) < 1e-9:  # diameter
        return f"M {_fmt(x1)} {_fmt(y1)} L {_fmt(x2)} {_fmt(y2)}"
    # orthogonal circle: Re(conj(w1) zc) = 1 = Re(conj(w2) zc)
    a1, b1 = w1.real, w1.imag
    a2, b2 = w2.real, w2.imag
    det = a1 * b2 - a2 * b1
    if abs(det) < 1e-12:
        return f"M {_fmt(x1)} {_fmt(y1)} L {_fmt(x2)} {_fmt(y2)}"
    xc = (b2 - b1) / det
    yc = (a1 - a2) / det
    r = math.sqrt(max(xc * xc + yc * yc - 1.0, 0.0)) * _R
    cross = (w1.conjugate() * w2).imag
    sweep = 1 if cross < 0 else 0
    return (
        f"M {_fmt(x1)} {_fmt(y1)} A {_fmt(r)} {_fmt(r)} 0 0 {sweep} "
        f"{_fmt(x2)} {_fmt(y2)}"
    )


def polygon_svg_group(p: TwistedPolygon, color: str = "#1f6feb",
                      tol: Tolerances = DEFAULT, label: Optional[str] = None) -> str:
    ws = [boundary_point(v, p.field) for v in p.vertices]
    parts = [f'<g stroke="{color}" fill="none" stroke-width="1.5">']
    n = p.n
    warn = []
    for i in range(n):
        j = (i + 1) % n
        if chordal(p.vertices[i], p.vertices[j]) <= tol.deg:
            warn.append(i)
            continue
        if p.field == "real":
            parts.append(f'<path d="{_geodesic_path(ws[i], ws[j])}"/>')
        else:
            x1, y1 = _disk_xy(ws[i])
            x2, y2 = _disk_xy(ws[j])
            parts.append(
                f'<line x1="{_fmt(x1)}" y1="{_fmt(y1)}" x2="{_fmt(x2)}" y2="{_fmt(y2)}"/>'
            )
    for i, w in enumerate(ws):
        x, y = _disk_xy(w)
        parts.append(f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="2.5" fill="{color}"/>')
    for i in warn:
        x, y = _disk_xy(ws[i])
        parts.append(
            f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="6" fill="none" stroke="#d03030">'
            f"<title>vertices {i + 1}, {(i + 1) % n + 1} nearly coincide</title></circle>"
        )
    if label:
        parts.append(
            f'<text x="10" y="{_SIZE - 10}" fill="{color}" stroke="none" '
            f'font-size="12">{label}</text>'
        )
    parts.append("</g>")
    return "\n".join(parts)


def _palette(k: int, total: int) -> str:
    t = k / max(total - 1, 1)
    r = int(31 + t * (214 - 31))
    g = int(111 - t * (111 - 60))
    b = int(235 - t * (235 - 60))
    return f"#{r:02x}{g:02x}{b:02x}"


def render_svg(polygons: Iterable[TwistedPolygon], tol: Tolerances = DEFAULT) -> str:
    polys = list(polygons)
    body = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{int(_SIZE)}" '
        f'height="{int(_SIZE)}" viewBox="0 0 {int(_SIZE)} {int(_SIZE)}">',
        f'<rect width="{int(_SIZE)}" height="{int(_SIZE)}" fill="white"/>',
        f'<circle cx="{_fmt(_CX)}" cy="{_fmt(_CY)}" r="{_fmt(_R)}" fill="none" '
        f'stroke="#444" stroke-width="1"/>',
    ]
    for k, p in enumerate(polys):
        body.append(polygon_svg_group(p, _palette(k, len(polys)), tol))
    body.append("</svg>")
    return "\n".join(body)

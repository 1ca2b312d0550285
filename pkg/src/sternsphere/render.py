"""SVG figures in the azimuthal-equidistant view from the north pole.

A point (theta, phi) is drawn at polar coordinates (theta, phi) in a disk of
radius pi, so the north pole is the centre and the south pole is the dotted
outer circle. Styling is fixed so that output is reproducible byte for byte.
"""

import math
from xml.sax.saxutils import escape

import numpy as np

CANVAS = 1000
CENTER = CANVAS / 2
RADIUS = 480.0            # pixels for theta = pi
JUMP_PX = 40.0            # split a chain when consecutive points are further apart

BACKGROUND = "#ffffff"
POSITIVE_FILL = "#d6d6d6"
GRID_STROKE = "#888888"
NODAL_STROKE = "#000000"
NODAL_WIDTH = 3.0
ARC_SAMPLES = 24


def project(theta, phi):
    """Pixel coordinates of (theta, phi); y grows downwards."""
    rho = RADIUS * np.asarray(theta, dtype=float) / math.pi
    phi = np.asarray(phi, dtype=float)
    return CENTER + rho * np.cos(phi), CENTER - rho * np.sin(phi)


def _points(x, y):
    return " ".join(f"{a:.2f},{b:.2f}" for a, b in zip(np.atleast_1d(x), np.atleast_1d(y)))


def _split_chain(chain):
    x, y = project(chain[:, 0], chain[:, 1])
    if len(x) < 2:
        return []
    jumps = np.nonzero(np.hypot(np.diff(x), np.diff(y)) > JUMP_PX)[0]
    pieces, start = [], 0
    for k in jumps:
        pieces.append((x[start:k + 1], y[start:k + 1]))
        start = k + 1
    pieces.append((x[start:], y[start:]))
    return [p for p in pieces if len(p[0]) >= 2]


def _cell_polygon(cell):
    arc = np.linspace(cell.phi_lo, cell.phi_hi, ARC_SAMPLES)
    # a cell touching the north pole has a single apex instead of an inner arc
    n_in = 1 if cell.theta_lo == 0.0 else ARC_SAMPLES
    th = np.concatenate([np.full(n_in, cell.theta_lo), np.full(ARC_SAMPLES, cell.theta_hi)])
    ph = np.concatenate([arc[:n_in], arc[::-1]])
    return project(th, ph)


def svg_document(ns=None, cb=None, title=None):
    """SVG text for a nodal set and an optional checkerboard underlay."""
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{CANVAS}" height="{CANVAS}" '
        f'viewBox="0 0 {CANVAS} {CANVAS}">',
    ]
    if title:
        out.append(f"<title>{escape(title)}</title>")
    out.append(f'<rect x="0" y="0" width="{CANVAS}" height="{CANVAS}" fill="{BACKGROUND}"/>')
    if cb is not None:
        out.append(f'<g id="cells" fill="{POSITIVE_FILL}" stroke="none">')
        for cell in cb.cells:
            if cell.sign > 0:
                out.append(f'<polygon points="{_points(*_cell_polygon(cell))}"/>')
        out.append("</g>")
        out.append(f'<g id="checkerboard" fill="none" stroke="{GRID_STROKE}" stroke-width="1">')
        for t in cb.latitudes:
            out.append(f'<circle cx="{CENTER:.2f}" cy="{CENTER:.2f}" r="{RADIUS * t / math.pi:.2f}"/>')
        for ph in list(cb.meridians) + list(cb.great_circle):
            x, y = project([0.0, math.pi], [ph, ph])
            out.append(f'<polyline points="{_points(x, y)}"/>')
        out.append("</g>")
    out.append(f'<circle id="cut-locus" cx="{CENTER:.2f}" cy="{CENTER:.2f}" r="{RADIUS:.2f}" '
               f'fill="none" stroke="{NODAL_STROKE}" stroke-width="1" stroke-dasharray="4 4"/>')
    if ns is not None and not ns.is_empty:
        out.append(f'<g id="nodal" fill="none" stroke="{NODAL_STROKE}" '
                   f'stroke-width="{NODAL_WIDTH}" stroke-linejoin="round">')
        for chain in ns.chains:
            for x, y in _split_chain(chain):
                out.append(f'<polyline points="{_points(x, y)}"/>')
        out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render_svg(ns, cb=None, path=None, title=None):
    """Write the figure to ``path`` (if given) and return the SVG text."""
    text = svg_document(ns, cb, title)
    if path is not None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    return text

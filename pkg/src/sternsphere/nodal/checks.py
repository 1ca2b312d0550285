"""Structural checks on an extracted nodal set.

Each check compares the numerics against a statement about the Stern
families: confinement to checkerboard cells of one sign, zero counts along
bisecting meridians, the checkerboard vertices lying on the nodal set, and
(for the even family) hemisphere confinement and antipodal pairing.
"""

from dataclasses import asdict, dataclass, field
import math

import numpy as np
from scipy.spatial import cKDTree

from .. import legendre as lg
from ..harmonics import EvenStern, OddStern, build_checkerboard
from .contour import extract_nodal_set
from .domains import count_nodal_domains
from .grid import DEFAULT_GRID, sample_sign_grid

TWO_PI = 2.0 * math.pi
CERTIFY_TOL = 1e-10


def _xyz(theta, phi):
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    st = np.sin(theta)
    return np.column_stack([st * np.cos(phi), st * np.sin(phi), np.cos(theta)])


def _geodesic(chord):
    return 2.0 * np.arcsin(np.clip(0.5 * np.asarray(chord), 0.0, 1.0))


def _interior_vertices(ns):
    pole = (ns.vertices[:, 0] == 0.0) | (ns.vertices[:, 0] == math.pi)
    return ~pole


# ---------------------------------------------------------------- inclusion

def checkerboard_signs(cb, theta, phi):
    """Sign of u v on the checkerboard cell of each point (0 on boundaries)."""
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float) % TWO_PI
    i = np.searchsorted(cb.latitudes, theta)
    jf = phi / (math.pi / cb.ell)
    j = np.floor(jf).astype(np.int64)
    sign = np.where((i + j) % 2 == 0, 1, -1)
    on_edge = (jf == j) | np.isin(theta, cb.latitudes)
    if cb.kind == "even":
        d = (phi - cb.great_circle[0]) % TWO_PI
        k = (d >= math.pi).astype(np.int64)
        sign = -sign * np.where(k == 0, 1, -1)
        on_edge |= (d == 0.0) | (d == math.pi)
    return np.where(on_edge, 0, sign)


def _boundary_distance(cb, theta, phi):
    """Geodesic distance (upper bound) to the nearest checkerboard boundary."""
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    d_lat = np.min(np.abs(theta[:, None] - cb.latitudes[None, :]), axis=1)
    step = math.pi / cb.ell
    r = np.mod(phi, step)
    d_mer = np.sin(theta) * np.minimum(r, step - r)
    d = np.minimum(d_lat, d_mer)
    if cb.kind == "even":
        d_gc = np.arcsin(np.clip(np.abs(np.sin(theta) * np.sin(phi - cb.great_circle[0])), 0, 1))
        d = np.minimum(d, d_gc)
    return d


@dataclass(frozen=True)
class InclusionResult:
    violations: int
    checked: int
    guarded: int


def verify_inclusion(ns, cb, guard=None):
    """Count nodal vertices strictly inside forbidden checkerboard cells.

    The odd family W + mu Z must avoid {Z W > 0}, the even family W - mu V
    must avoid {W V < 0}. Vertices within ``guard`` (one grid cell by
    default) of a cell boundary are not tested.
    """
    guard = ns.cell_size if guard is None else guard
    keep = _interior_vertices(ns)
    th, ph = ns.vertices[keep, 0], ns.vertices[keep, 1]
    near = _boundary_distance(cb, th, ph) <= guard
    c = 1 if cb.kind == "odd" else -1
    signs = checkerboard_signs(cb, th[~near], ph[~near])
    return InclusionResult(violations=int(np.sum(c * signs > 0)),
                           checked=int((~near).sum()), guarded=int(near.sum()))


# ---------------------------------------------------------------- separation

def separation_profile(fam, meridian_phi, n_samples=4096, tol=1e-13):
    """Co-latitudes in (0, pi) where ``fam`` vanishes along a meridian.

    A sign scan over the open interval is refined by bisection; the poles are
    excluded since the even family vanishes there identically.
    """
    theta = math.pi * (np.arange(1, n_samples) / n_samples)
    vals = np.asarray(fam.value(theta, np.full_like(theta, meridian_phi)))
    out = list(theta[vals == 0.0])
    idx = np.nonzero(vals[:-1] * vals[1:] < 0)[0]
    if len(idx):
        f = lambda t: np.asarray(fam.value(t, np.full_like(t, meridian_phi)))
        lo, hi = lg.bisect_brackets(f, theta[idx], theta[idx + 1], tol)
        out.extend((0.5 * (lo + hi)).tolist())
    return sorted(float(t) for t in out)


@dataclass(frozen=True)
class SeparationResult:
    j: int
    phi: float
    crossings: tuple
    counts: tuple
    expected: tuple
    cap: float

    @property
    def ok(self):
        return self.counts == self.expected


def expected_crossings(fam, j):
    """Expected zero counts (north cap, middle band, south cap) on B_j or C_j.

    Odd family, cap theta_1(l), meridian B_j at (j + 1/2) pi / l:
    l even, j even: none.  l even, j odd: one in each cap.
    l odd, j even: one in the south cap.  l odd, j odd: one in the north cap.

    Even family, cap theta'_1(2r), meridian C_j through the zero of f in the
    sector (j pi/2r, (j+1) pi/2r), 2r+1 <= j <= 4r-1:
    j odd: one in the south cap.  j even: one in the north cap.
    Numbering the 4r-2 zeros of f consecutively from 1 instead gives these
    meridians the labels j - 1, which swaps the parity in the statement.
    """
    if isinstance(fam, OddStern):
        ell = fam.ell
        if ell % 2 == 0:
            return (0, 0, 0) if j % 2 == 0 else (1, 0, 1)
        return (0, 0, 1) if j % 2 == 0 else (1, 0, 0)
    if isinstance(fam, EvenStern):
        if not fam.ell < j < 2 * fam.ell:
            raise ValueError(f"C_j is covered for 2r+1 <= j <= 4r-1, got j={j}")
        return (0, 0, 1) if j % 2 == 1 else (1, 0, 0)
    raise TypeError("expected crossings are known for the Stern families only")


def _cap(fam):
    if isinstance(fam, OddStern):
        return float(lg.legendre_zeros(fam.ell).thetas[0])
    return float(lg.legendre_deriv_zeros(fam.ell).thetas[0])


def _counts(crossings, a):
    c = np.asarray(crossings)
    return (int(np.sum(c < a)), int(np.sum((c >= a) & (c <= math.pi - a))),
            int(np.sum(c > math.pi - a)))


def check_separation(fam, n_samples=4096):
    """Profiles along every B_j (odd family) or C_j, 2r+1 <= j <= 4r-1 (even)."""
    cb = build_checkerboard(fam)
    a = _cap(fam)
    if isinstance(fam, OddStern):
        js = sorted(cb.bisectors)
    else:
        js = [j for j in sorted(cb.bisectors) if j > fam.ell]
    out = []
    for j in js:
        phi = cb.bisectors[j]
        cr = separation_profile(fam, phi, n_samples)
        out.append(SeparationResult(j=j, phi=phi, crossings=tuple(cr), counts=_counts(cr, a),
                                    expected=expected_crossings(fam, j), cap=a))
    return out


# ---------------------------------------------------------------- vertices

def checkerboard_vertex_distances(ns, cb):
    """Geodesic distance from each checkerboard vertex to the nearest nodal vertex."""
    if ns.is_empty:
        return np.full(len(cb.vertices), math.inf)
    tree = cKDTree(_xyz(ns.vertices[:, 0], ns.vertices[:, 1]))
    d, _ = tree.query(_xyz(cb.vertices[:, 0], cb.vertices[:, 1]))
    return _geodesic(d)


def certify_vertices(ns, tol=CERTIFY_TOL):
    """Bisect the field along each vertex's grid edge (transverse to the chain).

    Returns ``(residuals, distances)``: |field| at the bisected point and its
    geodesic distance to the interpolated vertex. Pole nodes are skipped.
    """
    fam = ns.family
    keep = _interior_vertices(ns)
    e = ns.edge_ends[keep]
    v = ns.vertices[keep]
    if len(v) == 0:
        return np.zeros(0), np.zeros(0)
    t0 = e[:, [0, 1]]
    dt = e[:, [2, 3]] - t0

    def along(t):
        t = np.asarray(t)
        return np.asarray(fam.value(t0[:, 0] + t * dt[:, 0], t0[:, 1] + t * dt[:, 1]), dtype=float)

    f0, f1 = along(np.zeros(len(v))), along(np.ones(len(v)))
    # lattice samples that are exact zeros may re-evaluate to +-1e-16; such an
    # edge has no strict sign change and its smaller end is the certificate
    change = np.sign(f0) * np.sign(f1) <= 0
    t = np.where(np.abs(f0) <= np.abs(f1), 0.0, 1.0)
    if change.any():
        sub0, subd = t0[change], dt[change]
        g = lambda s: np.asarray(fam.value(sub0[:, 0] + s * subd[:, 0],
                                           sub0[:, 1] + s * subd[:, 1]), dtype=float)
        k = int(change.sum())
        lo, hi = lg.bisect_brackets(g, np.zeros(k), np.ones(k), 1e-15)
        t[change] = 0.5 * (lo + hi)
    res = np.abs(along(t))
    pts = _xyz(t0[:, 0] + t * dt[:, 0], t0[:, 1] + t * dt[:, 1])
    dist = _geodesic(np.linalg.norm(pts - _xyz(v[:, 0], v[:, 1]), axis=1))
    return res, dist


# ---------------------------------------------------------------- even family

def hemisphere_sides(ns, alpha, tol=None):
    """Per component: +1 (closed M'_0, sin(phi - alpha) >= 0), -1, or 0 if it straddles."""
    tol = 2.0 * ns.cell_size if tol is None else tol
    s = np.sin(ns.vertices[:, 0]) * np.sin(ns.vertices[:, 1] - alpha)
    sides = []
    for c in range(ns.n_components):
        sc = s[ns.vertex_component == c]
        if np.all(sc >= -tol):
            sides.append(1)
        elif np.all(sc <= tol):
            sides.append(-1)
        else:
            sides.append(0)
    return sides


def antipodal_partners(ns, tol=None):
    """Per component: the component its antipodal image lands on, or -1.

    The image must lie within ``tol`` (two grid cells by default) of a single
    other component.
    """
    tol = 2.0 * ns.cell_size if tol is None else tol
    if ns.is_empty:
        return []
    xyz = _xyz(ns.vertices[:, 0], ns.vertices[:, 1])
    tree = cKDTree(xyz)
    out = []
    for c in range(ns.n_components):
        d, idx = tree.query(-xyz[ns.vertex_component == c])
        hit = np.unique(ns.vertex_component[idx])
        ok = len(hit) == 1 and np.all(_geodesic(d) <= tol)
        out.append(int(hit[0]) if ok else -1)
    return out


# ---------------------------------------------------------------- report

@dataclass
class TopologyReport:
    """Counts and structural check outcomes for one configuration."""

    family: str
    params: dict
    grid: tuple
    n_components: int
    n_domains: int
    inclusion_violations: int
    separation_profiles: list = field(default_factory=list)
    vertex_max_distance: float = 0.0
    certified_max_residual: float = 0.0
    certified_max_distance: float = 0.0
    all_closed: bool = True
    at_critical: bool = False
    hemisphere_sides: list = field(default_factory=list)
    antipodal_partners: list = field(default_factory=list)
    diagnostics: dict = field(default_factory=dict)

    @property
    def separation_ok(self):
        return all(p["ok"] for p in self.separation_profiles)

    @property
    def vertices_on_nodal_set(self):
        return self.vertex_max_distance <= self.diagnostics.get("cell_size", math.inf)

    def to_dict(self):
        return asdict(self)


def family_params(fam):
    if isinstance(fam, OddStern):
        return {"ell": fam.ell, "mu": fam.mu}
    if isinstance(fam, EvenStern):
        return {"r": fam.r, "epsilon": fam.epsilon, "alpha": fam.alpha, "mu": fam.mu}
    return {"name": getattr(fam, "name", "custom")}


def analyze(fam, n_theta=DEFAULT_GRID[0], n_phi=DEFAULT_GRID[1], separation=True,
            certify=True, workers=1):
    """Sample, extract, count and run every applicable structural check.

    Returns ``(report, nodal_set, grid)``.
    """
    grid = sample_sign_grid(fam, n_theta, n_phi, workers=workers)
    ns = extract_nodal_set(fam, grid)
    n_dom = count_nodal_domains(grid)
    stern = isinstance(fam, (OddStern, EvenStern))
    violations, vmax, seps = 0, 0.0, []
    sides, partners = [], []
    if stern and fam.mu > 0:
        cb = build_checkerboard(fam)
        violations = verify_inclusion(ns, cb).violations
        vmax = float(np.max(checkerboard_vertex_distances(ns, cb)))
        if separation:
            seps = [{"j": s.j, "phi": s.phi, "counts": list(s.counts),
                     "expected": list(s.expected), "ok": s.ok}
                    for s in check_separation(fam)]
    if isinstance(fam, EvenStern):
        sides = hemisphere_sides(ns, fam.alpha)
        partners = antipodal_partners(ns)
    res_max = dist_max = 0.0
    if certify and not ns.is_empty:
        res, dist = certify_vertices(ns)
        res_max, dist_max = float(res.max(initial=0.0)), float(dist.max(initial=0.0))
    diag = dict(ns.diagnostics)
    diag["cell_size"] = grid.cell_size
    return TopologyReport(
        family=getattr(fam, "kind", "custom"),
        params=family_params(fam),
        grid=(n_theta, n_phi),
        n_components=ns.n_components,
        n_domains=n_dom,
        inclusion_violations=violations,
        separation_profiles=seps,
        vertex_max_distance=vmax,
        certified_max_residual=res_max,
        certified_max_distance=dist_max,
        all_closed=all(ns.closed),
        at_critical=bool(ns.diagnostics.get("at_critical")),
        hemisphere_sides=sides,
        antipodal_partners=partners,
        diagnostics=diag,
    ), ns, grid

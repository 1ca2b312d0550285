"""Marching-squares extraction of the zero set on the sphere lattice.

Interior cells are the squares between consecutive interior rows, wrapped in
phi. The first and last interior rows are joined to the poles by triangles
(pole, (1, b), (1, b + 1)). A pole whose value is zero is a single graph node:
every contour arriving at it is stitched through it.

Samples equal to zero are classified as positive.
"""

from dataclasses import dataclass, field
import logging
import math
import warnings

import numpy as np

from .._unionfind import UnionFind
from ..harmonics import SphericalPoint, eval_gradient

log = logging.getLogger(__name__)

_POLE_ZERO_RTOL = 1e-13


class CriticalParameterWarning(UserWarning):
    """The family sits at a critical parameter; its nodal set self-intersects."""


@dataclass(frozen=True, eq=False)
class NodalSet:
    """Polyline approximation of {field = 0}.

    ``vertices`` holds every contour vertex as (theta, phi); ``edge_ends``
    the grid edge (theta0, phi0, theta1, phi1) it was interpolated on (NaN
    for pole nodes). ``chains`` are vertex-coordinate arrays; a chain stops
    when it reaches a pole node or closes up.
    """

    family: object
    grid_shape: tuple
    cell_size: float
    vertices: np.ndarray
    vertex_component: np.ndarray
    edge_ends: np.ndarray
    chains: tuple
    chain_component: np.ndarray
    pole_incident: np.ndarray
    closed: tuple
    n_components: int
    diagnostics: dict = field(default_factory=dict)

    @property
    def is_empty(self):
        return len(self.vertices) == 0

    def component_vertices(self, k):
        return self.vertices[self.vertex_component == k]


def _interp(v0, v1):
    with np.errstate(divide="ignore", invalid="ignore"):
        t = v0 / (v0 - v1)
    return np.clip(np.nan_to_num(t, nan=0.5), 0.0, 1.0)


def _pick_two(ids, crosses):
    first = np.argmax(crosses, axis=1)
    second = crosses.shape[1] - 1 - np.argmax(crosses[:, ::-1], axis=1)
    rows = np.arange(len(ids))
    return np.column_stack([ids[rows, first], ids[rows, second]])


def _at_critical(fam):
    from ..critical import nearest_critical, report_for

    if getattr(fam, "mu", 0) <= 0:
        return False
    try:
        rep = report_for(fam)
    except TypeError:
        return False
    return nearest_critical(rep, fam.mu)[2]


def extract_nodal_set(fam, grid):
    """Zero level set of ``fam`` from its sampled grid."""
    n, m = grid.n_theta, grid.n_phi
    V = grid.values
    thetas, phis = grid.thetas, grid.phis
    dth, dph = grid.dtheta, grid.dphi
    scale = grid.scale
    I = V[1:n]                     # interior rows, I[r] is theta_{r+1}
    S = I >= 0
    rows_i = n - 1

    nH = rows_i * m
    nV = (rows_i - 1) * m
    SN, SS = nH + nV, nH + nV + m
    NP, SP = nH + nV + 2 * m, nH + nV + 2 * m + 1
    n_nodes = SP + 1

    poles = grid.pole_values
    zero_pole = [abs(p) <= _POLE_ZERO_RTOL * scale for p in poles]

    Sr = np.roll(S, -1, axis=1)
    Ir = np.roll(I, -1, axis=1)
    crH = S != Sr
    crV = S[:-1] != S[1:]
    crSN = np.zeros(m, bool) if zero_pole[0] else (S[0] != (poles[0] > 0))
    crSS = np.zeros(m, bool) if zero_pole[1] else (S[-1] != (poles[1] > 0))

    # node coordinates and source edges
    coords = np.full((n_nodes, 2), np.nan)
    ends = np.full((n_nodes, 4), np.nan)
    th_rows = thetas[1:n]
    bb = np.broadcast_to(phis, (rows_i, m))

    t = _interp(I, Ir)
    coords[:nH, 0] = np.repeat(th_rows, m)
    coords[:nH, 1] = (bb + t * dph).ravel()
    ends[:nH] = np.column_stack([np.repeat(th_rows, m), bb.ravel(),
                                 np.repeat(th_rows, m), (bb + dph).ravel()])

    t = _interp(I[:-1], I[1:])
    th0 = np.repeat(th_rows[:-1], m)
    coords[nH:SN, 0] = th0 + t.ravel() * dth
    coords[nH:SN, 1] = bb[:-1].ravel()
    ends[nH:SN] = np.column_stack([th0, bb[:-1].ravel(), th0 + dth, bb[:-1].ravel()])

    t = _interp(np.full(m, poles[0]), I[0])
    coords[SN:SS] = np.column_stack([t * dth, phis])
    ends[SN:SS] = np.column_stack([np.zeros(m), phis, np.full(m, dth), phis])
    t = _interp(I[-1], np.full(m, poles[1]))
    coords[SS:NP] = np.column_stack([thetas[n - 1] + t * dth, phis])
    ends[SS:NP] = np.column_stack([np.full(m, thetas[n - 1]), phis, np.full(m, math.pi), phis])
    coords[NP] = (0.0, 0.0)
    coords[SP] = (math.pi, 0.0)
    coords[:, 1] %= 2 * math.pi

    segs = []

    # square cells
    r_idx = np.arange(rows_i - 1)[:, None]
    b_idx = np.arange(m)[None, :]
    b_next = (b_idx + 1) % m
    e0 = r_idx * m + b_idx
    e1 = nH + r_idx * m + b_next
    e2 = (r_idx + 1) * m + b_idx
    e3 = nH + r_idx * m + b_idx
    E = np.stack(np.broadcast_arrays(e0, e1, e2, e3), axis=-1)
    CR = np.stack([crH[:-1], np.roll(crV, -1, axis=1), crH[1:], crV], axis=-1)
    ncross = CR.sum(axis=-1)
    two = ncross == 2
    if two.any():
        segs.append(_pick_two(E[two], CR[two]))

    saddle = ncross == 4
    n_ties = 0
    if saddle.any():
        rr, bs = np.nonzero(saddle)
        centre = np.asarray(fam.value(thetas[rr + 1] + 0.5 * dth, phis[bs] + 0.5 * dph), dtype=float)
        centre = np.broadcast_to(centre, rr.shape)
        c0 = S[rr, bs]
        ties = centre == 0.0
        n_ties = int(ties.sum())
        if n_ties:
            log.info("%d saddle cells with a zero centre value; positive corners left "
                     "unconnected", n_ties)
        # c0 and c2 connected through the centre; a tie keeps the positive pair apart
        joined = np.where(ties, ~c0, (centre > 0) == c0)
        Es = E[saddle]
        a = np.where(joined[:, None], Es[:, [0, 2]], Es[:, [3, 1]])
        b = np.where(joined[:, None], Es[:, [1, 3]], Es[:, [0, 2]])
        segs.append(np.column_stack([a[:, 0], b[:, 0]]))
        segs.append(np.column_stack([a[:, 1], b[:, 1]]))

    # polar triangles
    bn = np.arange(m)
    split_poles = []
    for top, h_row, cr_spoke, spoke0, pole_id in (
        (True, 0, crSN, SN, NP),
        (False, rows_i - 1, crSS, SS, SP),
    ):
        h_ids = h_row * m + bn
        crh = crH[h_row]
        spoke_ids = spoke0 + bn
        if zero_pole[0 if top else 1]:
            u, v = eval_gradient(fam, SphericalPoint(0.0 if top else math.pi, 0.0))
            if math.hypot(u, v) * dth <= _POLE_ZERO_RTOL * scale:
                # singular zero pole: every arriving contour meets there
                k = np.nonzero(crh)[0]
                segs.append(np.column_stack([h_ids[k], np.full(len(k), pole_id)]))
                split_poles.append(False)
                continue
            # regular zero pole: the linear part u cos(phi) + v sin(phi) gives each
            # fan triangle a pole sign; the two spokes where it flips carry the
            # branch through the pole
            mid = phis + 0.5 * dph
            s = (u * np.cos(mid) + v * np.sin(mid)) >= 0
            row = S[h_row]
            left = np.where(np.roll(s, 1) != s, pole_id, spoke_ids)
            right = np.where(np.roll(s, -1) != s, pole_id, spoke0 + (bn + 1) % m)
            ids = np.column_stack([left, h_ids, right])
            crs = np.column_stack([row != s, crh, np.roll(row, -1) != s])
            spoke_nodes = np.concatenate([left[crs[:, 0]], right[crs[:, 2]]])
            spoke_nodes = spoke_nodes[spoke_nodes != pole_id]
            coords[spoke_nodes, 0] = (0.5 * dth) if top else (math.pi - 0.5 * dth)
            split_poles.append(True)
        else:
            ids = np.column_stack([spoke_ids, h_ids, spoke0 + (bn + 1) % m])
            crs = np.column_stack([cr_spoke, crh, np.roll(cr_spoke, -1)])
        sel = crs.sum(axis=1) == 2
        if sel.any():
            segs.append(_pick_two(ids[sel], crs[sel]))

    segs = np.concatenate(segs) if segs else np.zeros((0, 2), dtype=np.int64)
    segs = segs.astype(np.int64)
    at_crit = _at_critical(fam)
    if at_crit:
        warnings.warn("family is at a critical parameter value; component counts "
                      "of a self-intersecting nodal set are not meaningful",
                      CriticalParameterWarning, stacklevel=2)
    diagnostics = {
        "saddle_cells": int(saddle.sum()),
        "saddle_ties": n_ties,
        "zero_poles": [bool(z) for z in zero_pole],
        "split_zero_poles": split_poles,
        "at_critical": bool(at_crit),
    }
    return _assemble(fam, grid, segs, coords, ends, (NP, SP), diagnostics)


def _assemble(fam, grid, segs, coords, ends, pole_ids, diagnostics):
    used, inv = np.unique(segs, return_inverse=True)
    inv = inv.reshape(-1, 2)
    k = len(used)
    uf = UnionFind(k)
    for a, b in inv:
        uf.union(int(a), int(b))
    roots = uf.roots()
    _, comp = np.unique(roots, return_inverse=True)
    n_comp = int(comp.max()) + 1 if k else 0

    deg = np.bincount(inv.ravel(), minlength=k)
    closed = tuple(bool(np.all((deg[comp == c] % 2 == 0) & (deg[comp == c] >= 2)))
                   for c in range(n_comp))

    # incidence lists for chain walking
    order = np.argsort(inv.ravel(), kind="stable")
    seg_of = order // 2
    indptr = np.concatenate([[0], np.cumsum(deg)])
    is_pole = np.isin(used, pole_ids)
    seg_done = np.zeros(len(inv), dtype=bool)

    def walk(start, s):
        path = [start]
        cur = start
        while True:
            seg_done[s] = True
            a, b = inv[s]
            nxt = b if a == cur else a
            path.append(nxt)
            if nxt == start or is_pole[nxt]:
                break
            cand = [q for q in seg_of[indptr[nxt]:indptr[nxt + 1]] if not seg_done[q]]
            if not cand:
                break
            cur, s = nxt, cand[0]
        return path

    paths = []
    for p in np.nonzero(is_pole)[0]:
        for s in seg_of[indptr[p]:indptr[p + 1]]:
            if not seg_done[s]:
                paths.append(walk(p, s))
    for s in range(len(inv)):
        if not seg_done[s]:
            paths.append(walk(inv[s][0], s))

    vertices = coords[used]
    chains = tuple(vertices[np.array(p)] for p in paths)
    chain_comp = np.array([comp[p[0]] for p in paths], dtype=np.int64)
    pole_inc = np.array([bool(is_pole[p].any()) for p in paths], dtype=bool)
    return NodalSet(
        family=fam,
        grid_shape=(grid.n_theta, grid.n_phi),
        cell_size=grid.cell_size,
        vertices=vertices,
        vertex_component=comp.astype(np.int64),
        edge_ends=ends[used],
        chains=chains,
        chain_component=chain_comp,
        pole_incident=pole_inc,
        closed=closed,
        n_components=n_comp,
        diagnostics=diagnostics,
    )


def count_components(ns):
    """Number of connected components of the extracted nodal set."""
    if ns.diagnostics.get("at_critical"):
        warnings.warn("component count at a critical parameter value",
                      CriticalParameterWarning, stacklevel=2)
    return ns.n_components

"""Nodal domain counting by flood fill of the sign grid."""

import math

import numpy as np
from scipy import ndimage

from .._unionfind import UnionFind

_ZERO_RTOL = 1e-12


class DegenerateGridError(ValueError):
    """The sampled field is (numerically) zero everywhere."""


def _barrier_mask(grid, points, radius):
    """Interior samples within geodesic ``radius`` of any of ``points``."""
    th = grid.thetas[1:grid.n_theta][:, None]
    ph = grid.phis[None, :]
    mask = np.zeros((grid.n_theta - 1, grid.n_phi), dtype=bool)
    for p in points:
        cosd = (np.cos(th) * math.cos(p.theta)
                + np.sin(th) * math.sin(p.theta) * np.cos(ph - p.phi))
        mask |= cosd >= math.cos(radius)
    return mask


def critical_barriers(grid):
    """Critical zeros of the grid's family when it sits at a critical mu."""
    from ..critical import report_for

    fam = grid.family
    if getattr(fam, "mu", 0) <= 0:
        return []
    try:
        rep = report_for(fam)
    except TypeError:
        return []
    return rep.zeros_at(fam.mu)


def domain_labels(grid, barriers=None, barrier_radius=None):
    """Label strictly positive and strictly negative regions of the grid.

    Returns ``(labels, n_domains)`` where ``labels`` covers the interior rows
    (theta_1..theta_{n-1}) with 0 on near-zero samples and the domain index
    (1-based, consecutive) elsewhere. The phi seam is wrapped and each nonzero
    pole joins every domain touching its adjacent row with the pole's sign.

    ``barriers`` are points known to lie on the nodal set (the critical zeros
    at a critical mu); samples within ``barrier_radius`` (default 1.5 grid
    cells) of one are treated as zero. At a crossing of the nodal set the
    sample lattice cannot otherwise tell touching domains apart.
    """
    scale = grid.scale
    if not scale > 0:
        raise DegenerateGridError("field vanishes on the whole grid")
    tol = _ZERO_RTOL * scale
    interior = grid.values[1:grid.n_theta]
    pos = interior > tol
    neg = interior < -tol
    if barriers:
        radius = 1.5 * grid.cell_size if barrier_radius is None else barrier_radius
        cut = _barrier_mask(grid, barriers, radius)
        pos &= ~cut
        neg &= ~cut
    lab_p, n_p = ndimage.label(pos)
    lab_n, n_n = ndimage.label(neg)
    labels = np.where(neg, lab_n + n_p, lab_p)
    total = n_p + n_n
    # index total + 1 and total + 2 stand for the poles
    uf = UnionFind(total + 3)
    first, last = labels[:, 0], labels[:, -1]
    same = (first > 0) & (last > 0) & (pos[:, 0] == pos[:, -1])
    uf.union_pairs(np.column_stack([first[same], last[same]]))
    pole_ids = []
    for node, row, value in ((total + 1, 0, grid.pole_values[0]),
                             (total + 2, -1, grid.pole_values[1])):
        if abs(value) <= tol:
            continue
        mask = pos[row] if value > 0 else neg[row]
        ids = np.unique(labels[row][mask])
        uf.union_pairs(np.column_stack([np.full(len(ids), node), ids]))
        pole_ids.append(node)
    keep = list(range(1, total + 1)) + pole_ids
    roots = uf.roots(keep)
    uniq, relabel = np.unique(roots, return_inverse=True)
    lut = np.zeros(total + 3, dtype=np.int64)
    lut[keep] = relabel + 1
    return lut[labels] * (labels > 0), len(uniq)


def count_nodal_domains(grid, barriers=None):
    """Number of nodal domains of the sampled field.

    At a critical mu of a Stern family the critical zeros are used as
    barriers automatically; pass ``barriers=[]`` to disable that.
    """
    if barriers is None:
        barriers = critical_barriers(grid)
    return domain_labels(grid, barriers)[1]

"""Sampling a field on the (theta, phi) lattice of the sphere."""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
import math

import numpy as np

MIN_RESOLUTION = 8
DEFAULT_GRID = (1024, 2048)


@dataclass(frozen=True, eq=False)
class SignGrid:
    """Samples at theta_a = a pi / n_theta (a = 0..n_theta), phi_b = 2 pi b / n_phi.

    Rows 0 and n_theta are the poles and hold the exact pole values; column
    n_phi is identified with column 0.
    """

    family: object
    n_theta: int
    n_phi: int
    values: np.ndarray
    pole_values: tuple
    wrap: bool = True

    @property
    def thetas(self):
        return math.pi * np.arange(self.n_theta + 1) / self.n_theta

    @property
    def phis(self):
        return 2.0 * math.pi * np.arange(self.n_phi) / self.n_phi

    @property
    def dtheta(self):
        return math.pi / self.n_theta

    @property
    def dphi(self):
        return 2.0 * math.pi / self.n_phi

    @property
    def cell_size(self):
        """Largest side of a grid cell, as an arc length."""
        return max(self.dtheta, self.dphi)

    @property
    def scale(self):
        return float(np.max(np.abs(self.values)))


def sample_sign_grid(fam, n_theta=DEFAULT_GRID[0], n_phi=DEFAULT_GRID[1], workers=1,
                     block=256):
    """Evaluate ``fam`` on the lattice; deterministic for fixed inputs."""
    if n_theta < MIN_RESOLUTION or n_phi < MIN_RESOLUTION:
        raise ValueError(f"grid resolution must be at least {MIN_RESOLUTION} in each direction")
    thetas = math.pi * np.arange(n_theta + 1) / n_theta
    starts = range(0, n_theta + 1, block)

    def rows(a):
        return fam.grid(thetas[a:a + block], n_phi)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(rows, starts))
    else:
        parts = [rows(a) for a in starts]
    values = np.vstack(parts)
    north, south = fam.pole_values()
    values[0, :] = north
    values[-1, :] = south
    if not np.all(np.isfinite(values)):
        raise ValueError("field produced non-finite samples")
    return SignGrid(family=fam, n_theta=n_theta, n_phi=n_phi, values=values,
                    pole_values=(float(north), float(south)))

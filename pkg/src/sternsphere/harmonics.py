"""Stern's spherical-harmonic families in spherical coordinates.

Coordinates are co-latitude ``theta`` in [0, pi] and longitude ``phi`` taken
mod 2 pi; the north pole is ``theta = 0``.

Families
--------
``OddStern(ell, mu)``
    sin^l(theta) sin(l phi) + mu P_l(cos theta), i.e. W_l + mu Z_l.
``EvenStern(r, epsilon, mu)``
    sin^{2r}(theta) sin(2r phi) + mu sin(theta) P'_{2r}(cos theta) sin(phi - alpha),
    i.e. W - mu V_alpha with alpha = epsilon pi / (2r).
``Custom(func)``
    any scalar field of (theta, phi); gradients by central differences unless
    supplied.
"""

from dataclasses import dataclass, field
from typing import Callable, Optional
import math

import numpy as np

from . import legendre as lg

__all__ = [
    "SphericalPoint",
    "Family",
    "OddStern",
    "EvenStern",
    "Custom",
    "Cell",
    "Checkerboard",
    "eval_field",
    "eval_gradient",
    "eval_cartesian",
    "symmetry_check",
    "build_checkerboard",
    "sin_power",
]

TWO_PI = 2.0 * math.pi
_LOG_POWER_THRESHOLD = 64


@dataclass(frozen=True)
class SphericalPoint:
    """A point of the unit sphere; poles are stored with ``phi = 0``."""

    theta: float
    phi: float = 0.0

    def __post_init__(self):
        theta = float(self.theta)
        if not 0.0 <= theta <= math.pi:
            raise ValueError(f"co-latitude must lie in [0, pi], got {theta}")
        phi = float(self.phi) % TWO_PI
        if theta in (0.0, math.pi):
            phi = 0.0
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "phi", phi)

    @classmethod
    def north(cls):
        return cls(0.0, 0.0)

    @classmethod
    def south(cls):
        return cls(math.pi, 0.0)

    @property
    def is_pole(self):
        return self.theta in (0.0, math.pi)

    def cartesian(self):
        st = math.sin(self.theta)
        return np.array([st * math.cos(self.phi), st * math.sin(self.phi), math.cos(self.theta)])

    def antipode(self):
        return SphericalPoint(math.pi - self.theta, self.phi + math.pi)


def sin_power(theta, n):
    """sin(theta)**n, through exp(n log sin theta) when n is large.

    Plain powering underflows to zero for large ``n`` and small theta, which
    would wipe out the sign information carried by the other factor.
    """
    s = np.sin(np.asarray(theta, dtype=float))
    if n <= _LOG_POWER_THRESHOLD:
        return s**n
    with np.errstate(divide="ignore"):
        out = np.exp(n * np.log(np.abs(s)))
    return np.where(s < 0, (-1.0) ** n, 1.0) * out


def _sin_multiple(k, n_phi):
    """sin(k * 2 pi b / n_phi) for b = 0..n_phi-1, exactly 0 on half turns."""
    b = np.arange(n_phi)
    rem = (k * b) % n_phi
    out = np.sin(TWO_PI * rem / n_phi)
    out[(rem == 0) | (2 * rem == n_phi)] = 0.0
    return out


class Family:
    """Common interface of the fields handled by the nodal machinery."""

    #: sign c in u + c*|mu|*v; inclusion says N(u + c v) avoids {c u v > 0}
    perturbation_sign = 0
    kind = "custom"

    def value(self, theta, phi):
        raise NotImplementedError

    def gradient(self, theta, phi):
        """(d/dtheta, d/dphi); central differences unless overridden."""
        h = 1e-6
        theta = np.asarray(theta, dtype=float)
        phi = np.asarray(phi, dtype=float)
        dt = (self.value(theta + h, phi) - self.value(theta - h, phi)) / (2 * h)
        dp = (self.value(theta, phi + h) - self.value(theta, phi - h)) / (2 * h)
        return dt, dp

    def pole_values(self):
        return (float(self.value(0.0, 0.0)), float(self.value(math.pi, 0.0)))

    def grid(self, thetas, n_phi):
        """Values at (thetas[a], 2 pi b / n_phi), shape (len(thetas), n_phi)."""
        phis = TWO_PI * np.arange(n_phi) / n_phi
        tt, pp = np.meshgrid(np.asarray(thetas, dtype=float), phis, indexing="ij")
        return np.asarray(self.value(tt, pp), dtype=float)

    def parts(self, theta, phi):
        """(u, v) with field = u + perturbation_sign * mu * v."""
        raise NotImplementedError(f"{type(self).__name__} has no checkerboard")


@dataclass(frozen=True)
class OddStern(Family):
    """W_l + mu Z_l (named after its use for odd l; any l >= 1 works)."""

    ell: int
    mu: float = 0.0
    perturbation_sign = 1
    kind = "odd"

    def __post_init__(self):
        lg._check_degree(self.ell, 1)
        if self.mu < 0:
            raise ValueError("mu must be >= 0; use symmetry_check's identity for mu < 0")

    def value(self, theta, phi):
        return _odd_value(self.ell, self.mu, theta, phi)

    def gradient(self, theta, phi):
        ell, mu = self.ell, self.mu
        theta = np.asarray(theta, dtype=float)
        phi = np.asarray(phi, dtype=float)
        c = np.cos(theta)
        dt = ell * c * sin_power(theta, ell - 1) * np.sin(ell * phi) \
            - mu * np.sin(theta) * lg.legendre_deriv(ell, c)
        dp = ell * sin_power(theta, ell) * np.cos(ell * phi)
        return dt, dp

    def pole_values(self):
        return (self.mu, (-1) ** self.ell * self.mu)

    def grid(self, thetas, n_phi):
        thetas = np.asarray(thetas, dtype=float)
        sp = sin_power(thetas, self.ell)
        z = lg.legendre_eval(self.ell, np.cos(thetas))
        return np.outer(sp, _sin_multiple(self.ell, n_phi)) + self.mu * z[:, None]

    def parts(self, theta, phi):
        w = sin_power(theta, self.ell) * np.sin(self.ell * np.asarray(phi))
        z = lg.legendre_eval(self.ell, np.cos(theta))
        return w, np.broadcast_to(z, np.shape(w))

    def with_mu(self, mu):
        return OddStern(self.ell, mu)


def _odd_value(ell, mu, theta, phi):
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    out = sin_power(theta, ell) * np.sin(ell * phi) + mu * lg.legendre_eval(ell, np.cos(theta))
    # exact pole values
    out = np.where(theta == 0.0, mu, out)
    out = np.where(theta == math.pi, (-1) ** ell * mu, out)
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class EvenStern(Family):
    """W - mu V_alpha in degree 2r, alpha = epsilon pi / (2r)."""

    r: int
    epsilon: float = 0.4
    mu: float = 0.0
    perturbation_sign = -1
    kind = "even"

    def __post_init__(self):
        lg._check_degree(self.r, 1)
        if not 0.0 < self.epsilon < 0.5:
            raise ValueError(f"epsilon must lie in (0, 1/2), got {self.epsilon}")
        if self.mu < 0:
            raise ValueError("mu must be >= 0; use symmetry_check's identity for mu < 0")

    @property
    def ell(self):
        return 2 * self.r

    @property
    def alpha(self):
        return self.epsilon * math.pi / (2 * self.r)

    def value(self, theta, phi):
        return _even_value(self.r, self.alpha, self.mu, theta, phi)

    def gradient(self, theta, phi):
        n, mu, alpha = 2 * self.r, self.mu, self.alpha
        theta = np.asarray(theta, dtype=float)
        phi = np.asarray(phi, dtype=float)
        c = np.cos(theta)
        p, _ = lg.legendre_pair(n, c)
        dp_ = lg.legendre_deriv(n, c)
        # d/dtheta [sin P'(cos)] = n(n+1) P - cos P' by the Legendre equation
        dt = n * c * sin_power(theta, n - 1) * np.sin(n * phi) \
            + mu * np.sin(phi - alpha) * (n * (n + 1) * p - c * dp_)
        dph = n * sin_power(theta, n) * np.cos(n * phi) \
            + mu * np.sin(theta) * dp_ * np.cos(phi - alpha)
        return dt, dph

    def pole_values(self):
        return (0.0, 0.0)

    def grid(self, thetas, n_phi):
        thetas = np.asarray(thetas, dtype=float)
        n = 2 * self.r
        phis = TWO_PI * np.arange(n_phi) / n_phi
        sp = sin_power(thetas, n)
        v = np.sin(thetas) * lg.legendre_deriv(n, np.cos(thetas))
        out = np.outer(sp, _sin_multiple(n, n_phi)) + self.mu * np.outer(v, np.sin(phis - self.alpha))
        out[thetas == 0.0] = 0.0
        out[thetas == math.pi] = 0.0
        return out

    def parts(self, theta, phi):
        n = 2 * self.r
        theta = np.asarray(theta, dtype=float)
        phi = np.asarray(phi, dtype=float)
        w = sin_power(theta, n) * np.sin(n * phi)
        v = -np.sin(theta) * lg.legendre_deriv(n, np.cos(theta)) * np.sin(phi - self.alpha)
        return w, v

    def with_mu(self, mu):
        return EvenStern(self.r, self.epsilon, mu)


def _even_value(r, alpha, mu, theta, phi):
    n = 2 * r
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    out = sin_power(theta, n) * np.sin(n * phi) \
        + mu * np.sin(theta) * lg.legendre_deriv(n, np.cos(theta)) * np.sin(phi - alpha)
    out = np.where((theta == 0.0) | (theta == math.pi), 0.0, out)
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class Custom(Family):
    """Wraps a user field ``func(theta, phi)`` (numpy-broadcastable)."""

    func: Callable
    grad: Optional[Callable] = None
    name: str = "custom"

    @classmethod
    def from_cartesian(cls, f, name="custom", grad=None):
        """Build from ``f(x, y, z)`` restricted to the unit sphere."""

        def func(theta, phi):
            st = np.sin(theta)
            return f(st * np.cos(phi), st * np.sin(phi), np.cos(theta))

        return cls(func=func, grad=grad, name=name)

    def value(self, theta, phi):
        return self.func(np.asarray(theta, dtype=float), np.asarray(phi, dtype=float))

    def gradient(self, theta, phi):
        if self.grad is not None:
            return self.grad(theta, phi)
        return super().gradient(theta, phi)


def _point(p):
    return p if isinstance(p, SphericalPoint) else SphericalPoint(*p)


def eval_field(fam, p):
    """Field value at a point (``SphericalPoint`` or (theta, phi) pair)."""
    p = _point(p)
    if p.theta == 0.0:
        return float(fam.pole_values()[0])
    if p.theta == math.pi:
        return float(fam.pole_values()[1])
    return float(fam.value(p.theta, p.phi))


def eval_gradient(fam, p):
    """Coordinate gradient (d_theta, d_phi) away from the poles.

    At a pole the (u, v) components of the gradient are returned in the
    exponential chart centred at that pole, u + iv = s e^{i phi} with s the
    geodesic distance to the pole.
    """
    p = _point(p)
    if not p.is_pole:
        dt, dp = fam.gradient(p.theta, p.phi)
        return float(dt), float(dp)
    if p.theta == 0.0:
        du, _ = fam.gradient(0.0, 0.0)
        dv, _ = fam.gradient(0.0, 0.5 * math.pi)
        return float(du), float(dv)
    du, _ = fam.gradient(math.pi, 0.0)
    dv, _ = fam.gradient(math.pi, 0.5 * math.pi)
    return -float(du), -float(dv)


def symmetry_check(fam, p):
    """Residual of the mu -> -mu symmetry at p.

    Odd family:  h^{-mu}(theta, phi) = -h^{mu}(theta, phi + pi/l).
    Even family: h^{-mu}(theta, phi) =  h^{mu}(theta, phi + pi).
    """
    p = _point(p)
    if isinstance(fam, OddStern):
        neg = _odd_value(fam.ell, -fam.mu, p.theta, p.phi)
        return abs(neg + _odd_value(fam.ell, fam.mu, p.theta, p.phi + math.pi / fam.ell))
    if isinstance(fam, EvenStern):
        neg = _even_value(fam.r, fam.alpha, -fam.mu, p.theta, p.phi)
        return abs(neg - _even_value(fam.r, fam.alpha, fam.mu, p.theta, p.phi + math.pi))
    raise TypeError("symmetry_check applies to the Stern families only")


def _poly_coefficients(ell):
    return [float(c) for c in lg.rodrigues_coefficients(ell)]


def eval_cartesian(fam, x, y, z):
    """Evaluate through the homogeneous-polynomial form (cross-check path)."""
    x, y, z = (np.asarray(a, dtype=float) for a in (x, y, z))
    if isinstance(fam, OddStern):
        w = np.imag((x + 1j * y) ** fam.ell)
        zonal = np.polyval(_poly_coefficients(fam.ell), z)
        return w + fam.mu * zonal
    if isinstance(fam, EvenStern):
        n = 2 * fam.r
        c = _poly_coefficients(n)
        # a_j multiplies z^(2r-2j-1) (x^2+y^2+z^2)^j
        a = [c[2 * j] * (n - 2 * j) for j in range(fam.r)]
        rho2 = x * x + y * y + z * z
        s = sum(a[j] * z ** (n - 2 * j - 1) * rho2**j for j in range(fam.r))
        v = (math.sin(fam.alpha) * x - math.cos(fam.alpha) * y) * s
        return np.imag((x + 1j * y) ** n) - fam.mu * v
    if isinstance(fam, Custom):
        rho = np.sqrt(x * x + y * y + z * z)
        return fam.value(np.arccos(np.clip(z / rho, -1, 1)), np.arctan2(y, x))
    raise TypeError(f"unsupported family {fam!r}")


@dataclass(frozen=True)
class Cell:
    """One connected component of {u v != 0}; ``k`` is None for the odd case."""

    i: int
    j: int
    k: Optional[int]
    theta_lo: float
    theta_hi: float
    phi_lo: float
    phi_hi: float
    sign: int

    def center(self):
        return SphericalPoint(0.5 * (self.theta_lo + self.theta_hi),
                              0.5 * (self.phi_lo + self.phi_hi))

    def contains(self, theta, phi):
        dphi = (phi - self.phi_lo) % TWO_PI
        return (self.theta_lo < theta < self.theta_hi) and 0 < dphi < (self.phi_hi - self.phi_lo)


@dataclass(frozen=True)
class Checkerboard:
    """Sign decomposition of the sphere by N(u) and N(v).

    ``latitudes`` are the co-latitudes of the latitude circles (theta_i(l) in
    the odd case, theta'_i(2r) in the even case), ``meridians`` the longitudes
    j pi / l, ``great_circle`` the longitudes alpha, alpha + pi of M'_0, M'_1
    (even case only). ``bisectors`` maps j to the longitude of B_j (odd) or
    C_j (even; j indexes the sector (j pi/2r, (j+1) pi/2r) holding it).
    """

    kind: str
    ell: int
    latitudes: np.ndarray
    meridians: np.ndarray
    great_circle: np.ndarray
    vertices: np.ndarray
    cells: tuple
    bisectors: dict = field(default_factory=dict)

    def expected_sign(self, theta, phi):
        """Sign of u v on the cell holding (theta, phi); 0 on boundaries."""
        i = int(np.searchsorted(self.latitudes, theta))
        if i < len(self.latitudes) and self.latitudes[i] == theta:
            return 0
        j_float = (phi % TWO_PI) / (math.pi / self.ell)
        if j_float == int(j_float):
            return 0
        j = int(j_float)
        if self.kind == "odd":
            return (-1) ** (i + j)
        alpha = self.great_circle[0]
        d = (phi - alpha) % TWO_PI
        if d in (0.0, math.pi):
            return 0
        k = 0 if d < math.pi else 1
        return (-1) ** (i + j + k + 1)


def build_checkerboard(fam):
    """Checkerboard for an ``OddStern`` or ``EvenStern`` family."""
    if isinstance(fam, OddStern):
        ell = fam.ell
        lats = lg.legendre_zeros(ell).thetas
        step = math.pi / ell
        mer = step * np.arange(2 * ell)
        verts = np.array([(t, m) for t in lats for m in mer])
        bounds = np.concatenate([[0.0], lats, [math.pi]])
        cells = tuple(
            Cell(i, j, None, bounds[i], bounds[i + 1], mer[j], mer[j] + step, (-1) ** (i + j))
            for i in range(ell + 1)
            for j in range(2 * ell)
        )
        bis = {j: (j + 0.5) * step for j in range(2 * ell)}
        return Checkerboard("odd", ell, lats, mer, np.array([]), verts, cells, bis)

    if isinstance(fam, EvenStern):
        from .critical import f_roots

        n, alpha = fam.ell, fam.alpha
        lats = lg.legendre_deriv_zeros(n).thetas
        step = math.pi / n
        mer = step * np.arange(2 * n)
        verts = [(0.0, 0.0), (math.pi, 0.0)] + [(t, m) for t in lats for m in mer]
        bounds = np.concatenate([[0.0], lats, [math.pi]])
        cells = []
        for i in range(n):
            for j in range(2 * n):
                lo, hi = mer[j], mer[j] + step
                # alpha < pi/(4r) sits inside sector 0, alpha + pi inside sector 2r
                if j == 0:
                    pieces = [(lo, alpha, 1), (alpha, hi, 0)]
                elif j == n:
                    pieces = [(lo, alpha + math.pi, 0), (alpha + math.pi, hi, 1)]
                else:
                    pieces = [(lo, hi, 0 if j < n else 1)]
                for plo, phi_hi, k in pieces:
                    cells.append(Cell(i, j, k, bounds[i], bounds[i + 1], plo, phi_hi,
                                      (-1) ** (i + j + k + 1)))
        roots = f_roots(fam.r, alpha)
        return Checkerboard("even", n, lats, mer, np.array([alpha, alpha + math.pi]),
                            np.array(verts), tuple(cells), dict(roots))

    raise TypeError("checkerboards exist for the Stern families only")

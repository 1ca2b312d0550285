"""Critical parameter values and critical zeros of the two Stern families.

A critical zero is a point where the field and its differential both vanish.
For the odd family W_l + mu Z_l they can only sit at
(theta_i(l-1), (j + 1/2) pi / l) and only for

    mu_i(l) = sin^l(theta_i(l-1)) / |P_l(cos theta_i(l-1))|.

For the even family W - mu V_alpha they sit at (omega_i, phi_j) and
(pi - omega_i, phi_j), where cos(omega_i) are the zeros of
Q(t) = 2r P_2r(t) - t P_2r'(t) and phi_j those of

    f(phi) = 2r cos(2r phi) sin(phi - alpha) - sin(2r phi) cos(phi - alpha),

and only for

    mu_ij = |sin^{2r-1}(omega_i) sin(2r phi_j) / (P_2r'(cos omega_i) sin(phi_j - alpha))|.

mu_c is the smallest of these values; below it the nodal set is a disjoint
union of regular simple closed curves.
"""

from dataclasses import dataclass, field
import math

import numpy as np

from . import legendre as lg
from .bessel import bessel_j_prime, first_zero
from .harmonics import EvenStern, OddStern, SphericalPoint, sin_power

__all__ = [
    "MATCH_RTOL",
    "CriticalValue",
    "CriticalReport",
    "AuxiliaryRoots",
    "critical_mus_odd",
    "critical_zeros_odd",
    "critical_mus_even",
    "critical_zeros_even",
    "q_roots",
    "f_roots",
    "auxiliary_roots",
    "mu1_asymptotic",
    "lower_bound_comparison",
    "mu_c_epsilon_sweep",
    "nearest_critical",
]

MATCH_RTOL = 1e-9
_ROOT_TOL = 1e-14


@dataclass(frozen=True)
class CriticalValue:
    value: float
    indices: tuple
    zeros: tuple


@dataclass(frozen=True)
class CriticalReport:
    """Critical values of mu > 0 for one family, with their critical zeros.

    ``mu_c`` is ``math.inf`` (and ``unbounded`` is True) when the index range
    is empty, which happens for the even family with r = 1.
    """

    kind: str
    ell: int
    alpha: float | None
    mus: tuple
    mu_c: float
    lower_bound: float | None = None
    lower_bound_2: float | None = None
    unbounded: bool = False
    extra: dict = field(default_factory=dict)

    @property
    def values(self):
        return np.array([c.value for c in self.mus])

    def zeros_at(self, mu, rtol=MATCH_RTOL):
        for c in self.mus:
            if abs(mu - c.value) <= rtol * c.value:
                return list(c.zeros)
        return []

    def to_dict(self):
        d = {"family": self.kind}
        if self.kind == "odd":
            d["ell"] = self.ell
        else:
            d["r"] = self.ell // 2
            d["alpha"] = self.alpha
        d["mus"] = [c.value for c in self.mus]
        d["mu_c"] = None if self.unbounded else self.mu_c
        d["unbounded"] = self.unbounded
        d["lower_bound"] = self.lower_bound
        d["zeros"] = [
            {"mu": c.value, "theta": p.theta, "phi": p.phi} for c in self.mus for p in c.zeros
        ]
        return d


def _dedupe(candidates, rtol=MATCH_RTOL):
    """Merge (value, index, zeros) triples whose values agree to rtol."""
    merged = []
    for value, idx, zeros in sorted(candidates, key=lambda c: c[0]):
        if merged and abs(value - merged[-1][0]) <= rtol * merged[-1][0]:
            merged[-1][1].append(idx)
            merged[-1][2].extend(zeros)
        else:
            merged.append([value, [idx], list(zeros)])
    return tuple(CriticalValue(v, tuple(i), tuple(z)) for v, i, z in merged)


def _odd_zeros_for(ell, theta):
    """Critical zeros on the latitude theta = theta_i(l-1)."""
    p = lg.legendre_eval(ell, math.cos(theta))
    # sin(l phi) = -sign(P_l) and sin(l (j+1/2) pi/l) = (-1)^j
    parity = 0 if p < 0 else 1
    return [SphericalPoint(theta, (j + 0.5) * math.pi / ell)
            for j in range(2 * ell) if j % 2 == parity]


def critical_mus_odd(ell):
    """Critical values mu_i(l), i = 1..floor(l/2), for W_l + mu Z_l."""
    ell = lg._check_degree(ell, 2)
    roots = lg.legendre_zeros(ell - 1).thetas
    cands = []
    for i in range(1, ell // 2 + 1):
        theta = roots[i - 1]
        value = float(sin_power(theta, ell) / abs(lg.legendre_eval(ell, math.cos(theta))))
        # theta_{l-i}(l-1) = pi - theta_i gives the same value
        thetas = {theta, roots[ell - 1 - i]}
        zeros = [z for t in sorted(thetas) for z in _odd_zeros_for(ell, t)]
        cands.append((value, (i,), zeros))
    mus = _dedupe(cands)
    p = lg.legendre_local_maxima(ell).values
    lb = float(sin_power(roots[0], ell) / p[0])
    lb2 = None
    if len(p) >= 2:
        theta2 = lg.legendre_zeros(ell).thetas[1]
        first = float(sin_power(roots[0], ell) / abs(lg.legendre_eval(ell, math.cos(roots[0]))))
        lb2 = min(first, float(sin_power(theta2, ell) / p[1]))
    return CriticalReport(kind="odd", ell=ell, alpha=None, mus=mus,
                          mu_c=min(c.value for c in mus), lower_bound=lb, lower_bound_2=lb2)


def critical_zeros_odd(ell, mu, rtol=MATCH_RTOL):
    """Critical zeros of W_l + mu Z_l; empty unless mu is a critical value."""
    if mu <= 0:
        raise ValueError("mu must be positive")
    return critical_mus_odd(ell).zeros_at(mu, rtol)


def q_polynomial(r, t):
    n = 2 * r
    p, _ = lg.legendre_pair(n, t)
    return n * p - np.asarray(t) * lg.legendre_deriv(n, t)


def q_roots(r):
    """omega_i, i = 1..r-1: zeros of Q(cos omega) in (theta'_i(2r), theta_{i+1}(2r))."""
    r = lg._check_degree(r, 1)
    if r == 1:
        return np.array([])
    n = 2 * r
    t_p = lg.legendre_zeros(n).ts           # decreasing
    t_dp = lg.legendre_deriv_zeros(n).ts    # decreasing
    lo = t_p[1:r]        # t_{i+1}
    hi = t_dp[: r - 1]   # t'_i
    blo, bhi = lg.bisect_brackets(lambda t: q_polynomial(r, t), lo, hi, _ROOT_TOL)
    return np.arccos(0.5 * (blo + bhi))


def f_function(r, alpha, phi):
    n = 2 * r
    phi = np.asarray(phi, dtype=float)
    return n * np.cos(n * phi) * np.sin(phi - alpha) - np.sin(n * phi) * np.cos(phi - alpha)


def f_roots(r, alpha):
    """Zeros of f in [0, 2 pi), keyed by the sector index j of (j pi/2r, (j+1) pi/2r).

    There is one zero per sector for j in 1..2r-1 and 2r+1..4r-1, and none in
    sectors 0 and 2r, since f(phi + pi) = -f(phi).
    """
    r = lg._check_degree(r, 1)
    n = 2 * r
    if not 0 < alpha < math.pi / (2 * n):
        raise ValueError("alpha must lie in (0, pi/(4r))")
    sectors = [j for j in range(1, 2 * n) if j != n]
    step = math.pi / n
    lo = np.array([j * step for j in sectors])
    blo, bhi = lg.bisect_brackets(lambda ph: f_function(r, alpha, ph), lo, lo + step, _ROOT_TOL)
    return dict(zip(sectors, (0.5 * (blo + bhi)).tolist()))


@dataclass(frozen=True)
class AuxiliaryRoots:
    r: int
    alpha: float
    omegas: np.ndarray
    phis: dict


def auxiliary_roots(r, alpha):
    return AuxiliaryRoots(r=r, alpha=alpha, omegas=q_roots(r), phis=f_roots(r, alpha))


def _even_candidates(r, alpha):
    n = 2 * r
    omegas = q_roots(r)
    phis = f_roots(r, alpha)
    cands = []
    for i, om in enumerate(omegas, start=1):
        for j in range(1, n):
            ph = phis[j]
            zeros = []
            for theta in (om, math.pi - om):
                for phi in (ph, ph + math.pi):
                    # mu solving sin^{2r-1} sin(2r phi) + mu P' sin(phi - alpha) = 0
                    need = -sin_power(theta, n - 1) * math.sin(n * phi) / (
                        lg.legendre_deriv(n, math.cos(theta)) * math.sin(phi - alpha))
                    if need > 0:
                        zeros.append(SphericalPoint(theta, phi))
            value = abs(sin_power(om, n - 1) * math.sin(n * ph)
                        / (lg.legendre_deriv(n, math.cos(om)) * math.sin(ph - alpha)))
            cands.append((float(value), (i, j), zeros))
    return cands


def critical_mus_even(r, alpha):
    """Critical values mu_ij(alpha), 1 <= i <= r-1, 1 <= j <= 2r-1."""
    r = lg._check_degree(r, 1)
    mus = _dedupe(_even_candidates(r, alpha))
    if not mus:
        return CriticalReport(kind="even", ell=2 * r, alpha=alpha, mus=(), mu_c=math.inf,
                              unbounded=True)
    return CriticalReport(kind="even", ell=2 * r, alpha=alpha, mus=mus,
                          mu_c=min(c.value for c in mus))


def critical_zeros_even(r, alpha, mu, rtol=MATCH_RTOL):
    if mu <= 0:
        raise ValueError("mu must be positive")
    return critical_mus_even(r, alpha).zeros_at(mu, rtol)


def report_for(fam):
    """Critical report of a Stern family instance."""
    if isinstance(fam, OddStern):
        return critical_mus_odd(fam.ell)
    if isinstance(fam, EvenStern):
        return critical_mus_even(fam.r, fam.alpha)
    raise TypeError("critical values are defined for the Stern families only")


def nearest_critical(report, mu):
    """(closest critical value, |mu - value|, is_critical) for a sweep entry."""
    if not report.mus:
        return None, math.inf, False
    vals = report.values
    k = int(np.argmin(np.abs(vals - mu)))
    d = float(abs(vals[k] - mu))
    return float(vals[k]), d, d <= MATCH_RTOL * vals[k]


def mu1_asymptotic(ell):
    """(j01 / (l - 1/2))^(l-1) / |J0'(j01)|, the large-l form of mu_1(l)."""
    j01 = first_zero(0).value
    return (j01 / (ell - 0.5)) ** (ell - 1) / abs(bessel_j_prime(0, j01))


def lower_bound_comparison(ell_max=60):
    """Compare the two terms of the second lower bound on mu_c for 4 <= l <= ell_max.

    Returns rows (l, mu_1(l), sin^l(theta_2(l))/p_2(l), second_is_bigger).
    """
    rows = []
    for ell in range(4, ell_max + 1):
        theta1 = lg.legendre_zeros(ell - 1).thetas[0]
        mu1 = float(sin_power(theta1, ell) / abs(lg.legendre_eval(ell, math.cos(theta1))))
        theta2 = lg.legendre_zeros(ell).thetas[1]
        second = float(sin_power(theta2, ell) / lg.legendre_local_maxima(ell).values[1])
        rows.append((ell, mu1, second, second > mu1))
    return rows


def mu_c_epsilon_sweep(r, epsilons):
    """mu_c(alpha, 2r) for alpha = eps pi / (2r) over the given eps values."""
    return [(float(e), critical_mus_even(r, e * math.pi / (2 * r)).mu_c) for e in epsilons]

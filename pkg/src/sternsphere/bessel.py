"""Bessel functions J0, J1 and their first positive zeros.

Only what the asymptotic checks on Legendre zeros and maxima need: a power
series on [0, 12], the Hankel asymptotic expansion beyond, and bisection for
the first zero of each order.
"""

from dataclasses import dataclass
from functools import lru_cache
import math

import numpy as np

__all__ = ["BesselZero", "bessel_j", "bessel_j_prime", "first_zero"]

_SERIES_CUTOFF = 12.0
_BRACKETS = {0: (2.0, 3.0), 1: (3.0, 4.5)}


@dataclass(frozen=True)
class BesselZero:
    order: int
    index: int
    value: float


def _check_order(order):
    if order not in (0, 1):
        raise ValueError(f"only orders 0 and 1 are supported, got {order!r}")


def _series(order, x):
    half = 0.5 * x
    term = half**order / math.factorial(order)
    total = term.copy()
    q = -half * half
    for k in range(1, 80):
        term = term * q / (k * (k + order))
        total += term
        if np.all(np.abs(term) <= 1e-18 * np.maximum(np.abs(total), 1e-300)):
            break
    return total


def _hankel(order, x):
    mu = 4.0 * order * order
    z = 8.0 * x
    p = np.ones_like(x)
    q = np.zeros_like(x)
    coeff = np.ones_like(x)
    prev = np.full_like(x, np.inf)
    for k in range(1, 30):
        coeff = coeff * (mu - (2 * k - 1) ** 2) / (k * z)
        # asymptotic series: stop once terms stop shrinking
        if np.all(np.abs(coeff) >= prev):
            break
        prev = np.abs(coeff)
        sign = -1.0 if (k // 2) % 2 else 1.0
        if k % 2:
            q += sign * coeff
        else:
            p += sign * coeff
    chi = x - (0.5 * order + 0.25) * math.pi
    return np.sqrt(2.0 / (math.pi * x)) * (p * np.cos(chi) - q * np.sin(chi))


def bessel_j(order, x):
    """Bessel function of the first kind, J0 or J1, for x >= 0.

    Absolute error stays below 1e-10 on [0, 20].
    """
    _check_order(order)
    xa = np.asarray(x, dtype=float)
    if np.any(xa < 0):
        raise ValueError("bessel_j is defined here for x >= 0 only")
    flat = np.atleast_1d(xa).ravel()
    out = np.empty_like(flat)
    small = flat <= _SERIES_CUTOFF
    if small.any():
        out[small] = _series(order, flat[small])
    if (~small).any():
        out[~small] = _hankel(order, flat[~small])
    if xa.ndim == 0:
        return float(out[0])
    return out.reshape(xa.shape)


def bessel_j_prime(order, x):
    """Derivative of J0 or J1 from the standard recurrences."""
    _check_order(order)
    if order == 0:
        return -bessel_j(1, x)
    xa = np.asarray(x, dtype=float)
    # J1' = J0 - J1/x, with J1'(0) = 1/2
    with np.errstate(divide="ignore", invalid="ignore"):
        val = bessel_j(0, xa) - bessel_j(1, xa) / xa
    val = np.where(xa == 0, 0.5, val)
    return float(val) if val.ndim == 0 else val


@lru_cache(maxsize=None)
def first_zero(order):
    """First positive zero j_{order,1}, located by bisection to ~1e-15."""
    _check_order(order)
    a, b = _BRACKETS[order]
    fa = bessel_j(order, a)
    if fa * bessel_j(order, b) >= 0:
        raise ArithmeticError("bracket does not straddle a sign change")
    for _ in range(200):
        m = 0.5 * (a + b)
        fm = bessel_j(order, m)
        if fm == 0.0:
            a = b = m
            break
        if (fm > 0) == (fa > 0):
            a, fa = m, fm
        else:
            b = m
        if b - a <= 4e-16 * b:
            break
    return BesselZero(order=order, index=1, value=0.5 * (a + b))

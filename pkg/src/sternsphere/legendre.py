"""Legendre polynomials, associated Legendre functions, and their zeros.

Evaluation uses the three-term (Bonnet) recurrence. Derivatives come from

    (1 - t^2) P_l'(t) = l P_{l-1}(t) - l t P_l(t),

except for |t| > 0.999, where that quotient loses digits and the recurrence
P_n' = n P_{n-1} + t P_{n-1}' is used instead. The endpoint values
P_l'(+-1) = (+-1)^(l+1) l(l+1)/2 are filled in explicitly.

Associated functions follow the convention

    P_l^m(t) = (-1)^m (1 - t^2)^(m/2) d^m/dt^m P_l(t),

i.e. the Condon-Shortley phase is included and no further normalisation is
applied.

Zeros are isolated from a priori brackets (Szego's bounds for the zeros of
P_l, interlacing for the zeros of P_l'), refined by bisection and polished by
at most two Newton steps that are rejected if they leave the bracket.
"""

from dataclasses import dataclass
import enum
import math

import numpy as np

__all__ = [
    "RootIsolationError",
    "RootKind",
    "LegendreRoots",
    "MaximaSequence",
    "legendre_eval",
    "legendre_pair",
    "legendre_deriv",
    "assoc_legendre",
    "legendre_zeros",
    "legendre_deriv_zeros",
    "legendre_local_maxima",
    "bisect_brackets",
]

DEFAULT_TOL = 1e-13
_ENDPOINT_BAND = 0.999


class RootIsolationError(ArithmeticError):
    """A bracket failed to enclose a sign change, or bisection stalled."""


class RootKind(enum.Enum):
    ZEROS_OF_P = "zeros_of_p"
    ZEROS_OF_P_DERIV = "zeros_of_p_deriv"


@dataclass(frozen=True)
class LegendreRoots:
    """Certified zeros of P_l or P_l', ordered by increasing co-latitude.

    ``brackets[k] = (lo, hi)`` is an interval in t = cos(theta) on whose
    endpoints the function takes opposite signs, and ``ts[k]`` lies in it.
    """

    ell: int
    kind: RootKind
    thetas: np.ndarray
    ts: np.ndarray
    brackets: np.ndarray
    tol: float

    def __len__(self):
        return len(self.thetas)

    def __getitem__(self, k):
        return self.thetas[k]


@dataclass(frozen=True)
class MaximaSequence:
    """Local maxima p_j(l) of |P_l| on [0, 1), by decreasing t."""

    ell: int
    values: np.ndarray
    locations: np.ndarray


def _check_degree(ell, minimum=0):
    if isinstance(ell, bool) or int(ell) != ell:
        raise TypeError(f"degree must be an integer, got {ell!r}")
    ell = int(ell)
    if ell < minimum:
        raise ValueError(f"degree must be >= {minimum}, got {ell}")
    return ell


def _as_t(t, closed=True):
    ta = np.asarray(t, dtype=float)
    bad = np.abs(ta) > 1.0 if closed else np.abs(ta) >= 1.0
    if np.any(bad) or np.any(np.isnan(ta)):
        raise ValueError("Legendre functions are evaluated for |t| <= 1 only")
    return ta


def _scalarize(x, like):
    return float(x) if np.ndim(like) == 0 else x


def legendre_pair(ell, t):
    """Return (P_l(t), P_{l-1}(t)) from one pass of the recurrence.

    For ``ell == 0`` the second entry is 0.
    """
    ell = _check_degree(ell)
    ta = _as_t(t)
    prev = np.zeros_like(ta)
    cur = np.ones_like(ta)
    for k in range(ell):
        prev, cur = cur, ((2 * k + 1) * ta * cur - k * prev) / (k + 1)
    return _scalarize(cur, t), _scalarize(prev, t)


def legendre_eval(ell, t):
    """Legendre polynomial P_l(t) for |t| <= 1.

    Examples
    --------
    >>> round(legendre_eval(3, 0.4), 12)
    -0.44
    """
    p, _ = legendre_pair(ell, t)
    ta = np.asarray(t, dtype=float)
    if ta.ndim == 0:
        if ta == 1.0:
            return 1.0
        if ta == -1.0:
            return float((-1) ** ell)
        return p
    p = np.where(ta == 1.0, 1.0, p)
    return np.where(ta == -1.0, float((-1) ** ell), p)


def legendre_deriv(ell, t):
    """First derivative P_l'(t) for |t| <= 1."""
    ell = _check_degree(ell)
    ta = _as_t(t)
    p, pm1 = legendre_pair(ell, ta)
    edge = ell * (ell + 1) / 2.0
    with np.errstate(divide="ignore", invalid="ignore"):
        d = ell * (pm1 - ta * p) / (1.0 - ta * ta)
    near = np.abs(ta) > _ENDPOINT_BAND
    if np.any(near):
        # the quotient cancels badly next to t = +-1; P_n' = n P_{n-1} + t P_{n-1}'
        # is stable there
        tn = np.where(near, ta, 0.0)
        q_prev, dq = np.ones_like(tn), np.zeros_like(tn)
        q = tn.copy()
        for n in range(1, ell):
            dq = n * q_prev + tn * dq
            q_prev, q = q, ((2 * n + 1) * tn * q - n * q_prev) / (n + 1)
        dq = ell * q_prev + tn * dq
        d = np.where(near, dq, d)
    d = np.where(ta == 1.0, edge, d)
    d = np.where(ta == -1.0, (-1) ** (ell + 1) * edge, d)
    return _scalarize(d, t)


def _legendre_deriv2(ell, t, p, dp):
    # from the Legendre ODE; interior points only
    return (2.0 * t * dp - ell * (ell + 1) * p) / (1.0 - t * t)


def assoc_legendre(ell, m, t):
    """Associated Legendre function P_l^m(t), Condon-Shortley phase included.

    Seeded at P_m^m = (-1)^m (2m-1)!! (1-t^2)^(m/2) and raised in degree with
    the fixed-order recurrence.
    """
    ell = _check_degree(ell)
    m = _check_degree(m)
    if m > ell:
        raise ValueError(f"order m={m} exceeds degree l={ell}")
    ta = _as_t(t)
    if m == 0:
        return legendre_eval(ell, t)
    s = np.sqrt(np.maximum(0.0, 1.0 - ta * ta))
    pmm = np.ones_like(ta)
    for k in range(1, m + 1):
        pmm = -pmm * (2 * k - 1) * s
    if ell == m:
        return _scalarize(pmm, t)
    prev, cur = pmm, (2 * m + 1) * ta * pmm
    for n in range(m + 2, ell + 1):
        prev, cur = cur, ((2 * n - 1) * ta * cur - (n + m - 1) * prev) / (n - m)
    return _scalarize(cur, t)


def bisect_brackets(f, lo, hi, tol, max_iter=200):
    """Vectorised bisection of ``f`` on brackets [lo, hi] (lo < hi elementwise).

    Returns the final (lo, hi) arrays; raises ``RootIsolationError`` if a
    bracket has no sign change or the width stays above ``tol``.
    """
    lo = np.array(lo, dtype=float)
    hi = np.array(hi, dtype=float)
    flo = f(lo)
    fhi = f(hi)
    if np.any(np.sign(flo) * np.sign(fhi) > 0):
        raise RootIsolationError("a bracket does not enclose a sign change")
    exact = np.zeros(lo.shape, dtype=bool)
    for _ in range(max_iter):
        active = ~exact & (hi - lo > tol)
        if not active.any():
            break
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        hit = active & (fm == 0.0)
        lo = np.where(hit, mid, lo)
        hi = np.where(hit, mid, hi)
        exact |= hit
        go_right = active & ~hit & (np.sign(fm) == np.sign(flo))
        go_left = active & ~hit & ~go_right
        lo = np.where(go_right, mid, lo)
        flo = np.where(go_right, fm, flo)
        hi = np.where(go_left, mid, hi)
    else:
        if np.any(~exact & (hi - lo > tol)):
            raise RootIsolationError(f"bisection did not reach tol={tol}")
    return lo, hi


def _polish(f, fprime, root, lo, hi, steps=2):
    """Safeguarded Newton: keep a step only if it stays in the bracket and
    does not increase |f|."""
    x = root.copy()
    fx = f(x)
    for _ in range(steps):
        d = fprime(x)
        with np.errstate(divide="ignore", invalid="ignore"):
            cand = x - fx / d
        ok = np.isfinite(cand) & (cand >= lo) & (cand <= hi)
        fc = f(np.where(ok, cand, x))
        ok &= np.abs(fc) <= np.abs(fx)
        x = np.where(ok, cand, x)
        fx = np.where(ok, fc, fx)
    return x


def _make_roots(ell, kind, f, fprime, lo, hi, tol):
    blo, bhi = bisect_brackets(f, lo, hi, tol)
    ts = _polish(f, fprime, 0.5 * (blo + bhi), blo, bhi)
    order = np.argsort(-ts)
    ts = ts[order]
    brackets = np.column_stack([blo[order], bhi[order]])
    return LegendreRoots(ell=ell, kind=kind, thetas=np.arccos(ts), ts=ts,
                         brackets=brackets, tol=tol)


def legendre_zeros(ell, tol=DEFAULT_TOL):
    """The l zeros theta_j(l) of theta -> P_l(cos theta), increasing.

    Each zero is sought in ((2j-1)pi/(2l+1), 2j pi/(2l+1)).
    """
    ell = _check_degree(ell, 1)
    j = np.arange(1, ell + 1)
    # t-brackets, cos is decreasing
    lo = np.cos(2 * j * np.pi / (2 * ell + 1))
    hi = np.cos((2 * j - 1) * np.pi / (2 * ell + 1))
    return _make_roots(
        ell, RootKind.ZEROS_OF_P,
        lambda t: legendre_eval(ell, t),
        lambda t: legendre_deriv(ell, t),
        lo, hi, tol,
    )


def legendre_deriv_zeros(ell, tol=DEFAULT_TOL):
    """The l-1 zeros theta'_j(l) of theta -> P_l'(cos theta), increasing.

    The j-th one is bracketed by consecutive zeros theta_j(l), theta_{j+1}(l).
    """
    ell = _check_degree(ell, 2)
    zeros = legendre_zeros(ell, tol)
    # both brackets are open: P_l' does not vanish at zeros of P_l
    lo = zeros.ts[1:]
    hi = zeros.ts[:-1]

    def dp(t):
        return legendre_deriv(ell, t)

    def d2p(t):
        p, _ = legendre_pair(ell, t)
        return _legendre_deriv2(ell, t, p, dp(t))

    return _make_roots(ell, RootKind.ZEROS_OF_P_DERIV, dp, d2p, lo, hi, tol)


def legendre_local_maxima(ell, tol=DEFAULT_TOL):
    """Local maxima p_1(l) > p_2(l) > ... of |P_l| as t decreases from 1 to 0.

    There are floor(l/2) of them, attained at the theta'_j(l) <= pi/2.
    """
    ell = _check_degree(ell, 2)
    crit = legendre_deriv_zeros(ell, tol)
    n = ell // 2
    locations = crit.thetas[:n]
    values = np.abs(legendre_eval(ell, np.cos(locations)))
    return MaximaSequence(ell=ell, values=values, locations=locations)


def rodrigues_coefficients(ell):
    """Exact monomial coefficients of P_l as fractions, highest degree first.

    Expands the Rodrigues formula; meant for symbolic cross-checks, not for
    evaluation.
    """
    from fractions import Fraction

    ell = _check_degree(ell)
    coeffs = [Fraction(0)] * (ell + 1)
    for k in range(ell // 2 + 1):
        c = Fraction((-1) ** k * math.comb(ell, k) * math.comb(2 * ell - 2 * k, ell), 2**ell)
        coeffs[2 * k] = c
    return coeffs

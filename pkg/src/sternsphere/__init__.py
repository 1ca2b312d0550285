"""Nodal sets of the Stern spherical harmonics.

Two one-parameter families of spherical harmonics are provided,
``OddStern`` (W_l + mu Z_l) and ``EvenStern`` (W - mu V_alpha in degree 2r),
with their critical parameter values, checkerboards, sampled nodal sets and
nodal domain counts.
"""

from .bessel import BesselZero, bessel_j, bessel_j_prime, first_zero
from .critical import (
    CriticalReport,
    critical_mus_even,
    critical_mus_odd,
    critical_zeros_even,
    critical_zeros_odd,
    f_roots,
    q_roots,
    report_for,
)
from .harmonics import (
    Custom,
    EvenStern,
    OddStern,
    SphericalPoint,
    build_checkerboard,
    eval_cartesian,
    eval_field,
    eval_gradient,
    symmetry_check,
)
from .legendre import (
    legendre_deriv,
    legendre_deriv_zeros,
    legendre_eval,
    legendre_local_maxima,
    legendre_zeros,
)
from .nodal import (
    analyze,
    count_components,
    count_nodal_domains,
    extract_nodal_set,
    sample_sign_grid,
)

__version__ = "0.1.0"

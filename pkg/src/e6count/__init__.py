"""Exact rational-point counting on the cubic surface
x1*x2^2 + x2*x0^2 + x3^3 = 0, with its conjectural leading constant."""

from __future__ import annotations

from .arith import (
    Q_coprime,
    S_q,
    T_q,
    delta,
    delta_weights,
    main_term_sum,
    mobius,
    phi_prime,
    phi_star,
    theta,
)
from .constants import (
    ConstantReport,
    alpha_const,
    euler_product,
    fit_report,
    leading_coefficient,
    omega_p,
)
from .enumerator import (
    count_E_torsor,
    count_total,
    iter_accepted,
    solve_tau2_congruence,
    sqrt_mod_prime_power,
)
from .region import g1, g2, g3, omega_inf_3d, omega_inf_g3, region_params
from .surface import (
    CountReport,
    SurfacePoint,
    canonicalize,
    count_mod_p,
    count_naive,
    enumerate_E,
    family_counts,
)
from .torsor import TorsorPoint, lift_T1, phi_T1_to_T2, phi_T2_to_T1, psi, validate

__version__ = "0.1.0"

__all__ = [
    "ConstantReport",
    "CountReport",
    "Q_coprime",
    "S_q",
    "SurfacePoint",
    "T_q",
    "TorsorPoint",
    "alpha_const",
    "canonicalize",
    "count_E_torsor",
    "count_mod_p",
    "count_naive",
    "count_total",
    "delta",
    "delta_weights",
    "enumerate_E",
    "euler_product",
    "family_counts",
    "fit_report",
    "g1",
    "g2",
    "g3",
    "iter_accepted",
    "leading_coefficient",
    "lift_T1",
    "main_term_sum",
    "mobius",
    "omega_inf_3d",
    "omega_inf_g3",
    "omega_p",
    "phi_T1_to_T2",
    "phi_T2_to_T1",
    "phi_prime",
    "phi_star",
    "psi",
    "region_params",
    "solve_tau2_congruence",
    "sqrt_mod_prime_power",
    "theta",
    "validate",
]

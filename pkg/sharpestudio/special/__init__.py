"""
SharpeStudio Special Functions

Distribution functions for the normal, Student-t, Fisher-Snedecor and Beta laws.
"""

from .functions import (
    DegreesOfFreedom,
    Probability,
    beta_cdf,
    erfc,
    f_cdf,
    f_sf,
    log_beta,
    log_gamma,
    normal_cdf,
    normal_inv,
    normal_pdf,
    normal_sf,
    reg_inc_beta,
    reg_inc_gamma_lower,
    reg_inc_gamma_upper,
    t_cdf,
    t_inv,
    t_pdf,
    t_sf,
)

__all__ = [
    "DegreesOfFreedom",
    "Probability",
    "beta_cdf",
    "erfc",
    "f_cdf",
    "f_sf",
    "log_beta",
    "log_gamma",
    "normal_cdf",
    "normal_inv",
    "normal_pdf",
    "normal_sf",
    "reg_inc_beta",
    "reg_inc_gamma_lower",
    "reg_inc_gamma_upper",
    "t_cdf",
    "t_inv",
    "t_pdf",
    "t_sf",
]

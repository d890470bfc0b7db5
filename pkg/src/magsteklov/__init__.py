"""Magnetic Steklov eigenvalues on annuli: closed forms, oracles and geometry."""

from .errors import SteklovError
from .flux import Flux, reduce_flux
from .cylinder import Family, branch_value, first_eigenvalue, second_eigenvalue, sorted_spectrum
from .rotinv import RotInvAnnulus, branch_pair, crossing_length, dtn_mode_eigenvalues, fd_mode_eigenvalues
from .maximizer import m0, m_star, m_star_derivative, sigma2_star, sigma2_star_derivative
from .catenoid_slab import slab_data, g_monotonicity_scan
from .alpha_surface import alpha_of_modulus, free_boundary_radius, modulus_of_alpha, profile
from .embedding import embedding_data, normalization_constant
from .weighted_planar import WeightedAnnulus, radial_eigenvalues

__version__ = "0.1.0"

__all__ = [
    "SteklovError",
    "Flux",
    "reduce_flux",
    "Family",
    "branch_value",
    "first_eigenvalue",
    "second_eigenvalue",
    "sorted_spectrum",
    "RotInvAnnulus",
    "branch_pair",
    "crossing_length",
    "dtn_mode_eigenvalues",
    "fd_mode_eigenvalues",
    "m0",
    "m_star",
    "m_star_derivative",
    "sigma2_star",
    "sigma2_star_derivative",
    "slab_data",
    "g_monotonicity_scan",
    "alpha_of_modulus",
    "free_boundary_radius",
    "modulus_of_alpha",
    "profile",
    "embedding_data",
    "normalization_constant",
    "WeightedAnnulus",
    "radial_eigenvalues",
]

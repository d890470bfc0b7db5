"""Tabular data behind the three figures: cylinder branches, alpha profiles and
critical sections.  Rendering lives in ``plotting``."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .alpha_surface import critical_section, free_boundary_radius, profile, profile_extent
from .cylinder import Family, branch_value

FIG1_FLUXES = (0.0, 1.0 / 3.0, 0.5)
FIG1_MODES = ((Family.TANH, 0), (Family.COTH, 0), (Family.TANH, 1), (Family.COTH, 1), (Family.TANH, -1), (Family.COTH, -1))
FIG1_COLUMNS = ("M", "sigma_1_0", "sigma_2_0", "sigma_1_1", "sigma_2_1", "sigma_1_m1", "sigma_2_m1")
FIG2_ALPHAS = (-2.0, -1.0, -0.5, 0.5, 1.0, 2.0)
FIG3_ALPHAS = (0.25, 0.5, 1.0, 2.0, 4.0)
PROFILE_HALF_WIDTH = 2.0


@dataclass(frozen=True)
class Table:
    columns: tuple[str, ...]
    rows: np.ndarray


def fig1_table(flux: float, m_max: float = 5.0, grid: int = 200) -> Table:
    """Normalized cylinder branches on M in (0, m_max]; M_i = m_max i / grid."""
    ms = m_max * np.arange(1, grid + 1) / grid
    rows = [[M] + [branch_value(float(M), flux, k, fam).normalized for fam, k in FIG1_MODES] for M in ms]
    return Table(FIG1_COLUMNS, np.array(rows))


def fig2_table(alphas=FIG2_ALPHAS, n: int = 201) -> Table:
    """Profiles (alpha, t, rho) of the reference alpha-surfaces.

    The t range is |t| <= 2, cut to 97% of the existence interval when the
    profile blows up or pinches off earlier.
    """
    rows = []
    for a in alphas:
        half = min(PROFILE_HALF_WIDTH, 0.97 * profile_extent(a))
        prof = profile(a, half)
        for t, rho, _ in prof.samples(n, symmetric=True):
            rows.append((a, t, rho))
    return Table(("alpha", "t", "rho"), np.array(rows))


def fig3_table(alphas=FIG3_ALPHAS, n: int = 201) -> Table:
    """Sections (alpha, x, z) of the critical alpha-surfaces in the unit ball."""
    rows = []
    for a in alphas:
        for x, z in critical_section(free_boundary_radius(a), n):
            rows.append((a, x, z))
    return Table(("alpha", "x", "z"), np.array(rows))


def flux_tag(flux: float) -> str:
    """File-name tag for a fig1 flux: 0, 1_3, 1_2 or the decimal value."""
    for tag, val in (("0", 0.0), ("1_3", 1.0 / 3.0), ("1_2", 0.5)):
        if math.isclose(flux, val, abs_tol=1e-15):
            return tag
    return f"{flux:.6g}".replace(".", "p")

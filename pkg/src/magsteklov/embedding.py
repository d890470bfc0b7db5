"""Free-boundary immersion of the optimal cylinder built from its second eigenfunctions.

On [-M*, M*] x S^1 the pair
    u1 = (a/(1-v)) cosh((1-v) t) e^{i theta},   u2 = (a/v) sinh(v t)
spans the double second eigenspace.  The constant a(v) puts the boundary
circles on the unit sphere.  Everything checked here is independent of theta,
so only t is sampled.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import OutOfRange
from .flux import Flux, reduce_flux
from .maximizer import _open_flux, m_star
from .numerics import coth


def normalization_constant(flux) -> float:
    nu = _open_flux(flux)
    M = m_star(nu)
    return (math.cosh((1.0 - nu) * M) ** 2 / (1.0 - nu) ** 2 + math.sinh(nu * M) ** 2 / nu**2) ** -0.5


def _checked_t(nu: float, t: float, M: float) -> float:
    if abs(t) > M * (1.0 + 1e-12):
        raise OutOfRange(f"|t|={abs(t)} exceeds M*={M}")
    return float(t)


def immersion_modulus(flux, t: float) -> tuple[float, float]:
    """(|u1|, u2) at height t."""
    nu = _open_flux(flux)
    M = m_star(nu)
    t = _checked_t(nu, t, M)
    a = normalization_constant(nu)
    return a / (1.0 - nu) * math.cosh((1.0 - nu) * t), a / nu * math.sinh(nu * t)


def boundary_norm_squared(flux, t: float) -> float:
    u1, u2 = immersion_modulus(flux, t)
    return u1 * u1 + u2 * u2


def conformal_factor(flux, t: float) -> float:
    """psi(t) = a^2 (sinh^2((1-v)t) + cosh^2(v t))."""
    nu = _open_flux(flux)
    t = _checked_t(nu, t, m_star(nu))
    a = normalization_constant(nu)
    return a * a * (math.sinh((1.0 - nu) * t) ** 2 + math.cosh(nu * t) ** 2)


def conformal_factor_alt(flux, t: float) -> float:
    """psi(t) in the form a^2 (cosh^2((1-v)t) + sinh^2(v t))."""
    nu = _open_flux(flux)
    t = _checked_t(nu, t, m_star(nu))
    a = normalization_constant(nu)
    return a * a * (math.cosh((1.0 - nu) * t) ** 2 + math.sinh(nu * t) ** 2)


def metric_components(flux, t: float) -> tuple[float, float, float]:
    """(g11, g22, g12) of the metric pulled back with the magnetic differential."""
    return conformal_factor(flux, t), conformal_factor_alt(flux, t), 0.0


def free_boundary_inner_product(flux, t: float) -> float:
    """<F, U> with U the normal (-cosh(v t) e^{i theta}, sinh((1-v) t))."""
    nu = _open_flux(flux)
    t = _checked_t(nu, t, m_star(nu))
    a = normalization_constant(nu)
    return a * a / (nu * (1.0 - nu)) * (
        -nu * math.cosh((1.0 - nu) * t) * math.cosh(nu * t)
        + (1.0 - nu) * math.sinh(nu * t) * math.sinh((1.0 - nu) * t)
    )


def robin_ratios(flux) -> tuple[float, float]:
    """Boundary ratios u'/u of u1 and u2 at t = M* on the flat cylinder.

    Both equal the double eigenvalue at the crossing modulus.
    """
    nu = _open_flux(flux)
    M = m_star(nu)
    return (1.0 - nu) * math.tanh((1.0 - nu) * M), nu * coth(nu * M)


@dataclass(frozen=True)
class EmbeddingData:
    flux: Flux
    M_star: float
    a_norm: float
    samples: np.ndarray  # rows (t, |u1|, u2, psi, <F,U>)

    @property
    def columns(self) -> tuple[str, ...]:
        return ("t", "u1_modulus", "u2", "psi", "inner_product")


def embedding_data(flux, n: int = 41) -> EmbeddingData:
    f = reduce_flux(flux)
    nu = _open_flux(f)
    M = m_star(nu)
    a = normalization_constant(nu)
    rows = []
    for t in np.linspace(-M, M, n):
        t = float(t)
        u1, u2 = immersion_modulus(nu, t)
        rows.append((t, u1, u2, conformal_factor(nu, t), free_boundary_inner_product(nu, t)))
    return EmbeddingData(f, M, a, np.array(rows))

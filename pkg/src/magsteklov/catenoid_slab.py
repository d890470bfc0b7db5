"""Off-centre catenoid slabs and the boundary-ratio family they generate.

For a catenoid centred at height a, the functions
    u1 = cosh((1-v)(z-a)) e^{i theta},   u2 = sinh(v z)
are magnetically harmonic.  Slicing at the two roots z1 < 0 < z2 of
    F(z) = (1-v) tanh((1-v)(z-a)) - v coth(v z)
makes u1 and u2 share a Robin ratio on each boundary circle.  Rescaling the
metric near the lower circle equalizes the two ratios, giving an annulus whose
second eigenvalue is double; ``g(a)`` is its normalized value and ``ratio``
its boundary-length ratio.

Boundary-length convention: the Robin ratio scales like 1/length, so matching
the lower ratio s1 to the upper ratio s2 rescales the lower circle by
s1/s2 = 1/T.  With this convention g is even in a, g(0) = sigma_2^*(v), and the
slab of height z2 - z1 is the crossing-length annulus of the same ratio.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import FluxOutOfRange
from .flux import Flux, reduce_flux
from .numerics import Bracket, coth, csch, solve_bracketed


def _nu(flux) -> tuple[Flux, float]:
    f = reduce_flux(flux)
    if not 0.0 < f.reduced < 0.5:
        raise FluxOutOfRange(f"reduced flux must lie in (0, 1/2), got {f.reduced!r}")
    return f, f.reduced


def slab_residual(z: float, a: float, nu: float) -> float:
    return (1.0 - nu) * math.tanh((1.0 - nu) * (z - a)) - nu * coth(nu * z)


def slab_roots(a: float, flux, rel_tol: float | None = None) -> tuple[float, float]:
    """The negative and positive roots (z1, z2) of the slab equation."""
    _, nu = _nu(flux)
    a = float(a)
    f = lambda z: slab_residual(z, a, nu)
    eps = 1e-8 / nu
    z2 = solve_bracketed(f, Bracket.of(f, eps, max(1.0, a) + 50.0), rel_tol)
    z1 = solve_bracketed(f, Bracket.of(f, -(max(1.0, -a) + 50.0), -eps), rel_tol)
    return z1, z2


def z1_asymptote(flux) -> float:
    """Limit of z1 as a -> +infinity: -(1/v) arccoth((1-v)/v)."""
    _, nu = _nu(flux)
    x = (1.0 - nu) / nu
    return -0.5 * math.log((x + 1.0) / (x - 1.0)) / nu


@dataclass(frozen=True)
class SlabData:
    a: float
    flux: Flux
    z1: float
    z2: float
    T: float
    ratio: float
    g: float

    @property
    def height(self) -> float:
        return self.z2 - self.z1

    @property
    def sigma(self) -> float:
        """Common Robin ratio at the upper circle (the double eigenvalue)."""
        nu = self.flux.reduced
        return nu * coth(nu * self.z2) / math.cosh(self.z2 - self.a)


def robin_ratios(a: float, z1: float, z2: float, nu: float) -> dict[str, float]:
    """Normal-derivative ratios of u1 and u2 on both slab circles."""
    c1, c2 = math.cosh(z1 - a), math.cosh(z2 - a)
    return {
        "u1_z2": (1.0 - nu) * math.tanh((1.0 - nu) * (z2 - a)) / c2,
        "u2_z2": nu * coth(nu * z2) / c2,
        "u1_z1": -(1.0 - nu) * math.tanh((1.0 - nu) * (z1 - a)) / c1,
        "u2_z1": -nu * coth(nu * z1) / c1,
    }


def slab_data(a: float, flux) -> SlabData:
    f, nu = _nu(flux)
    a = float(a)
    z1, z2 = slab_roots(a, f)
    c1, c2 = math.cosh(z1 - a), math.cosh(z2 - a)
    T = -(coth(nu * z2) * c1) / (coth(nu * z1) * c2)
    length = 2.0 * math.pi * (c2 + c1 / T)
    g = length * nu * coth(nu * z2) / c2
    ratio = c2 * T / c1
    return SlabData(a, f, z1, z2, T, ratio, g)


def g_expanded(a: float, flux) -> float:
    """g(a) from the root data alone: 2 pi v (coth(v z2) - coth(v z1))."""
    _, nu = _nu(flux)
    z1, z2 = slab_roots(a, nu)
    return 2.0 * math.pi * nu * (coth(nu * z2) - coth(nu * z1))


def z_prime(a: float, flux, which: str = "z2") -> float:
    """dz/da = 1 - v^2 / ((1-2v) sinh^2(v z)) at the chosen root."""
    _, nu = _nu(flux)
    z1, z2 = slab_roots(a, nu)
    z = {"z1": z1, "z2": z2}[which]
    s = csch(nu * z)
    return 1.0 - nu * nu / (1.0 - 2.0 * nu) * s * s


def z_prime_implicit(a: float, flux, which: str = "z2") -> float:
    """dz/da = -F_a/F_z before eliminating cosh with the slab equation."""
    _, nu = _nu(flux)
    z1, z2 = slab_roots(a, nu)
    z = {"z1": z1, "z2": z2}[which]
    ratio = (nu / (1.0 - nu)) ** 2 * math.cosh((z - a) * (1.0 - nu)) ** 2 * csch(nu * z) ** 2
    return 1.0 / (1.0 + ratio)


@dataclass(frozen=True)
class MonotonicityVerdict:
    a: np.ndarray
    g: np.ndarray
    strictly_decreasing: bool
    argmax: float

    @property
    def max_at_zero(self) -> bool:
        return self.argmax == 0.0


def g_monotonicity_scan(flux, a_max: float, n: int) -> MonotonicityVerdict:
    """Sample g on [0, a_max] at n+1 points and report strict decrease."""
    if a_max <= 0 or n < 16:
        raise ValueError("need a_max > 0 and n >= 16")
    f, _ = _nu(flux)
    grid = np.linspace(0.0, a_max, n + 1)
    vals = np.array([slab_data(a, f).g for a in grid])
    dec = bool(np.all(np.diff(vals) < 0))
    return MonotonicityVerdict(grid, vals, dec, float(grid[int(np.argmax(vals))]))

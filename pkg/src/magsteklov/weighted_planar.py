"""Weighted Steklov problem on the concentric planar annulus r0 < |x| < 1.

The boundary weight is 1 on the outer circle and 1/r0 on the inner one, so the
weighted perimeter is 4 pi.  The radial mode u = a r^v + b r^-v gives two
eigenvalues whose product is v^2; the smaller one is the ground state and its
normalized value tends to 4 pi v as r0 -> 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import FluxOutOfRange, InvalidRadius
from .flux import Flux, reduce_flux


@dataclass(frozen=True)
class WeightedAnnulus:
    r0: float
    flux: Flux

    def __post_init__(self) -> None:
        if not (math.isfinite(self.r0) and 0.0 < self.r0 < 1.0):
            raise InvalidRadius(f"inner radius must lie in (0, 1), got {self.r0!r}")
        if not 0.0 < self.flux.reduced <= 0.5:
            raise FluxOutOfRange(f"reduced flux must lie in (0, 1/2], got {self.flux.reduced!r}")

    @classmethod
    def make(cls, r0: float, flux) -> "WeightedAnnulus":
        return cls(float(r0), reduce_flux(flux))


def radial_eigenvalues(annulus: WeightedAnnulus) -> tuple[float, float]:
    nu = annulus.flux.reduced
    p = annulus.r0**nu
    # 1 - r0^v via expm1 keeps sigma_- accurate when r0^v is close to 1
    one_minus = -math.expm1(nu * math.log(annulus.r0))
    return nu * one_minus / (1.0 + p), nu * (1.0 + p) / one_minus


def determinant_matrix(annulus: WeightedAnnulus, sigma: float) -> np.ndarray:
    """Coefficient matrix of (a, b) from the two Robin conditions.

    Row 1: u'(1) = sigma u(1).  Row 2: -u'(r0) = (sigma/r0) u(r0), written with
    the overall sign flipped.
    """
    nu, r0 = annulus.flux.reduced, annulus.r0
    return np.array(
        [
            [nu - sigma, -nu - sigma],
            [r0 ** (nu - 1.0) * (sigma + nu), r0 ** (-nu - 1.0) * (sigma - nu)],
        ]
    )


def determinant(annulus: WeightedAnnulus, sigma: float) -> float:
    m = determinant_matrix(annulus, sigma)
    return float(m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0])


def normalized_first(annulus: WeightedAnnulus) -> float:
    return 4.0 * math.pi * radial_eigenvalues(annulus)[0]

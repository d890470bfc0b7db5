"""Closed-form spectrum of the flat cylinder [-M, M] x S^1.

Each Fourier mode k contributes a tanh-type branch |k-v| tanh(|k-v| M) (even
eigenfunction in t) and a coth-type branch |k-v| coth(|k-v| M) (odd).  The
normalized values carry the boundary length 4*pi.  Any rotationally
invariant symmetric annulus of modulus M shares this normalized spectrum.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import InvalidModulus
from .flux import Flux, reduce_flux
from .numerics import coth

BOUNDARY_LENGTH = 4.0 * math.pi
MULTIPLICITY_RTOL = 1e-12


class Family(enum.IntEnum):
    """Branch family; the integer value doubles as the sort tie-breaker."""

    TANH = 0
    COTH = 1

    @property
    def label(self) -> str:
        return self.name.lower()


@dataclass(frozen=True)
class EigenBranch:
    family: Family
    k: int
    value: float

    @property
    def normalized(self) -> float:
        return BOUNDARY_LENGTH * self.value

    def sort_key(self) -> tuple[float, int, int]:
        return (self.value, int(self.family), self.k)


@dataclass(frozen=True)
class SpectrumEntry:
    index: int
    branch: EigenBranch
    multiplicity: int

    @property
    def value(self) -> float:
        return self.branch.value


@dataclass(frozen=True)
class SortedSpectrum:
    modulus: float
    flux: Flux
    entries: tuple[SpectrumEntry, ...]

    @property
    def values(self) -> list[float]:
        return [e.value for e in self.entries]

    @property
    def normalized(self) -> list[float]:
        return [e.branch.normalized for e in self.entries]


def _check_modulus(M: float) -> float:
    M = float(M)
    if not (math.isfinite(M) and M > 0):
        raise InvalidModulus(f"modulus must be positive and finite, got {M!r}")
    return M


def branch_value(M: float, flux, k: int, family: Family) -> EigenBranch:
    """Eigenvalue of mode ``k`` in the given family on the cylinder of half-length M."""
    M = _check_modulus(M)
    nu = reduce_flux(flux).reduced
    family = Family(family)
    beta = abs(k - nu)
    if beta == 0.0:
        # integer flux, k = nu: eigenfunctions 1 and t
        value = 0.0 if family is Family.TANH else 1.0 / M
    elif family is Family.TANH:
        value = beta * math.tanh(beta * M)
    else:
        value = beta * coth(beta * M)
    return EigenBranch(family, int(k), value)


def first_eigenvalue(M: float, flux) -> EigenBranch:
    return branch_value(M, flux, 0, Family.TANH)


def second_eigenvalue(M: float, flux) -> EigenBranch:
    """Second eigenvalue: the smaller of the k=1 tanh and k=0 coth branches.

    At half flux the k=1 tanh branch coincides with the first eigenvalue.
    """
    nu = reduce_flux(flux)
    if nu.is_half:
        return branch_value(M, nu, 1, Family.TANH)
    candidates = [branch_value(M, nu, 1, Family.TANH), branch_value(M, nu, 0, Family.COTH)]
    return min(candidates, key=EigenBranch.sort_key)


def _window_branches(M: float, nu: Flux, K: int) -> list[EigenBranch]:
    out = []
    for k in range(-K, K + 1):
        out.append(branch_value(M, nu, k, Family.TANH))
        out.append(branch_value(M, nu, k, Family.COTH))
    out.sort(key=EigenBranch.sort_key)
    return out


def sorted_spectrum(M: float, flux, count: int) -> SortedSpectrum:
    """The ``count`` smallest eigenvalues with spectral index and multiplicity.

    The mode window [-K, K] grows until the smallest excluded lower bound
    b tanh(b M), b = K + 1 - v, exceeds the current ``count``-th value, which
    certifies completeness since every branch increases with |k - v|.
    """
    M = _check_modulus(M)
    if count < 1:
        raise ValueError("count must be >= 1")
    nu = reduce_flux(flux)
    K = count + 2
    while True:
        branches = _window_branches(M, nu, K)
        nth = branches[count - 1].value
        beta_out = K + 1 - nu.reduced
        if beta_out * math.tanh(beta_out * M) > nth * (1.0 + 4 * MULTIPLICITY_RTOL):
            break
        K *= 2

    entries = []
    for i, br in enumerate(branches[:count]):
        tol = MULTIPLICITY_RTOL * max(abs(br.value), 1e-300)
        mult = sum(1 for other in branches if abs(other.value - br.value) <= tol)
        entries.append(SpectrumEntry(i + 1, br, mult))
    return SortedSpectrum(M, nu, tuple(entries))

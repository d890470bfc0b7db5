"""Spectrum of rotationally invariant annuli with unequal boundary circles.

The annulus is [0, Z] x S^1 with metric f(z)^2 (dz^2 + dtheta^2), normalized
so that f(Z) = 1 and f(0) = A.  Separating variables reduces each Fourier mode
to a 2x2 Dirichlet-to-Neumann problem weighted by the boundary values of f,
which gives the closed-form branch pair.  Two independent oracles are kept
alongside: the explicit DtN matrix and a finite-difference discretization of
the mode ODE condensed onto its boundary nodes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import solve_banded

from .errors import DegenerateMode, FluxOutOfRange, GridTooCoarse, InvalidAnnulus
from .flux import Flux, reduce_flux
from .numerics import Bracket, coth, csch, eig2_generalized, expand_bracket, solve_bracketed


@dataclass(frozen=True)
class RotInvAnnulus:
    ratio: float
    length: float
    flux: Flux

    def __post_init__(self) -> None:
        for name in ("ratio", "length"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0):
                raise InvalidAnnulus(f"{name} must be positive and finite, got {v!r}")

    @classmethod
    def make(cls, ratio: float, length: float, flux) -> "RotInvAnnulus":
        return cls(float(ratio), float(length), reduce_flux(flux))

    @property
    def f0(self) -> float:
        return self.ratio

    @property
    def fZ(self) -> float:
        return 1.0

    @property
    def perimeter(self) -> float:
        return 2.0 * math.pi * (self.ratio + 1.0)

    def beta(self, k: int) -> float:
        return abs(k - self.flux.reduced)


def discriminant(annulus: RotInvAnnulus, k: int) -> float:
    """D(Z) exactly as it appears under the square root of the branch formula."""
    beta = annulus.beta(k)
    q = 1.0 / annulus.f0 + 1.0 / annulus.fZ
    c = coth(beta * annulus.length)
    return q * q * c * c - 4.0 / (annulus.f0 * annulus.fZ)


def branch_pair(annulus: RotInvAnnulus, k: int) -> tuple[float, float]:
    """Closed-form (sigma_1k, sigma_2k) for mode ``k``.

    Uses D = q^2 csch^2 + (1/f0 - 1/fZ)^2, algebraically equal to
    q^2 coth^2 - 4/(f0 fZ) but free of cancellation, and recovers the smaller
    root from the root product beta^2/(f0 fZ).
    """
    beta = annulus.beta(k)
    f0, fZ, Z = annulus.f0, annulus.fZ, annulus.length
    if beta == 0.0:
        # affine profile a + b z: eigenvalues 0 and (1/Z)(1/f0 + 1/fZ)
        return 0.0, (1.0 / f0 + 1.0 / fZ) / Z
    q = 1.0 / f0 + 1.0 / fZ
    d = 1.0 / f0 - 1.0 / fZ
    s = csch(beta * Z)
    D = q * q * s * s + d * d
    sigma2 = 0.5 * beta * (q * coth(beta * Z) + math.sqrt(D))
    sigma1 = beta * beta / (f0 * fZ * sigma2)
    return sigma1, sigma2


def normalized_branch_pair(annulus: RotInvAnnulus, k: int) -> tuple[float, float]:
    s1, s2 = branch_pair(annulus, k)
    L = annulus.perimeter
    return L * s1, L * s2


def _crossing_gap(A: float, nu: Flux, Z: float) -> float:
    ann = RotInvAnnulus(A, Z, nu)
    return normalized_branch_pair(ann, 1)[0] - normalized_branch_pair(ann, 0)[1]


def crossing_length(A: float, flux, rel_tol: float | None = None) -> float:
    """Length Z(A) at which the k=1 lower and k=0 upper normalized branches meet.

    At Z(A) the second normalized eigenvalue is maximal among annuli with
    boundary ratio A and has multiplicity two.  Integer flux is accepted and
    uses the affine k=0 branch (the classical, non-magnetic regime); half
    flux is rejected because the tanh branches coincide there.
    """
    nu = reduce_flux(flux)
    if nu.is_half:
        raise FluxOutOfRange("crossing length is undefined at half-integer flux")
    A = float(A)
    if not (math.isfinite(A) and A > 0):
        raise InvalidAnnulus(f"ratio must be positive, got {A!r}")

    def gap(Z: float) -> float:
        return _crossing_gap(A, nu, Z)

    lo = 1e-3
    while gap(lo) >= 0 and lo > 1e-12:
        lo *= 0.1
    br = expand_bracket(gap, lo, 1.0, grow="hi")
    return solve_bracketed(gap, br, rel_tol)


def max_second_normalized(A: float, flux) -> tuple[float, float]:
    """(Z(A), maximal second normalized eigenvalue at that length)."""
    nu = reduce_flux(flux)
    Z = crossing_length(A, nu)
    return Z, normalized_branch_pair(RotInvAnnulus(float(A), Z, nu), 0)[1]


def dtn_mode_matrix(annulus: RotInvAnnulus, k: int) -> tuple[np.ndarray, np.ndarray]:
    """DtN matrix of v'' = beta^2 v on [0, Z] and the boundary weight matrix.

    Unknown ordering is (v(0), v(Z)); the generalized eigenvalues of (K, B)
    are the Steklov pair of mode ``k``.
    """
    beta = annulus.beta(k)
    if beta == 0.0:
        raise DegenerateMode(f"mode k={k} has |k - nu| = 0")
    x = beta * annulus.length
    c, s = coth(x), csch(x)
    K = beta * np.array([[c, -s], [-s, c]])
    B = np.diag([annulus.f0, annulus.fZ])
    return K, B


def dtn_mode_eigenvalues(annulus: RotInvAnnulus, k: int) -> tuple[float, float]:
    return eig2_generalized(*dtn_mode_matrix(annulus, k))


def _fd_boundary_matrix(beta: float, Z: float, n: int) -> np.ndarray:
    """Schur complement of the discrete energy onto the two end nodes.

    Energy: sum (phi_{i+1} - phi_i)^2 / h + beta^2 h sum w_i phi_i^2 with
    trapezoid weights w_0 = w_n = 1/2.
    """
    h = Z / n
    m = n - 1
    main = np.full(m, 2.0 / h + beta * beta * h)
    off = np.full(m, -1.0 / h)
    ab = np.zeros((3, m))
    ab[0, 1:] = off[1:]
    ab[1] = main
    ab[2, :-1] = off[:-1]
    rhs = np.zeros((m, 2))
    rhs[0, 0] = -1.0 / h
    rhs[-1, 1] = -1.0 / h
    x = solve_banded((1, 1), ab, rhs)
    end = 1.0 / h + 0.5 * beta * beta * h
    # S_bb - S_bI S_II^{-1} S_Ib, with S_bI nonzero only at the neighbours
    S = np.array([[end, 0.0], [0.0, end]])
    S[0, 0] -= (-1.0 / h) * x[0, 0]
    S[0, 1] -= (-1.0 / h) * x[0, 1]
    S[1, 0] -= (-1.0 / h) * x[-1, 0]
    S[1, 1] -= (-1.0 / h) * x[-1, 1]
    return S


def fd_mode_eigenvalues(
    annulus: RotInvAnnulus, k: int, n: int, *, richardson: bool = False
) -> tuple[float, float]:
    """Finite-difference Steklov pair of mode ``k`` on an ``n``-cell grid.

    Second order in 1/n.  With ``richardson`` the grids n and 2n are combined
    as (4 s_2n - s_n)/3.
    """
    if n < 16:
        raise GridTooCoarse(f"grid must have at least 16 cells, got {n}")
    beta = annulus.beta(k)
    B = np.diag([annulus.f0, annulus.fZ])

    def solve(cells: int) -> tuple[float, float]:
        return eig2_generalized(_fd_boundary_matrix(beta, annulus.length, cells), B)

    coarse = solve(n)
    if not richardson:
        return coarse
    fine = solve(2 * n)
    return tuple((4.0 * f - c) / 3.0 for f, c in zip(fine, coarse))  # type: ignore[return-value]


def sorted_branches(annulus: RotInvAnnulus, count: int) -> list[tuple[int, int, float]]:
    """The ``count`` smallest eigenvalues as rows (k, j, sigma), j = 1 or 2.

    The mode window grows until both edge modes' lower branches exceed the
    current ``count``-th value; the lower branch increases with |k - v|.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    K = count + 2
    while True:
        rows = []
        for k in range(-K, K + 1):
            s1, s2 = branch_pair(annulus, k)
            rows.append((k, 1, s1))
            rows.append((k, 2, s2))
        rows.sort(key=lambda r: (r[2], r[1], r[0]))
        nth = rows[count - 1][2]
        edge = min(branch_pair(annulus, -K - 1)[0], branch_pair(annulus, K + 1)[0])
        if edge > nth:
            return rows[:count]
        K *= 2

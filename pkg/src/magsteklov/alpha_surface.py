"""Rotation surfaces with profile rho rho'' = alpha (1 + rho'^2).

The reference profile has rho(0) = 1, rho'(0) = 0 and satisfies the first
integral rho'^2 = rho^(2 alpha) - 1.  For alpha > 0 the slice |t| <= T(alpha)
whose tangent line at the rim passes through the origin is free boundary in
the ball of radius sqrt(R^2 + T^2); scaled to the unit ball it becomes the
critical alpha-surface with conformal modulus M(alpha).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Protocol

import numpy as np

from . import numerics
from .errors import Blowup, BracketExhausted, DomainError, OutOfRange
from .numerics import Bracket, expand_bracket, solve_bracketed

DELTA_R = 1e-6


class RevolutionProfile(Protocol):
    def state(self, t: float) -> tuple[float, float, float]:
        """(rho, rho', rho'') at height t."""


@dataclass(frozen=True)
class ClosedFormProfile:
    """Profile given by explicit functions; used for controls and closed forms."""

    rho: Callable[[float], float]
    drho: Callable[[float], float]
    ddrho: Callable[[float], float]
    t_min: float = -math.inf
    t_max: float = math.inf

    def state(self, t: float) -> tuple[float, float, float]:
        if not self.t_min <= t <= self.t_max:
            raise OutOfRange(f"t={t} outside [{self.t_min}, {self.t_max}]")
        return self.rho(t), self.drho(t), self.ddrho(t)


@dataclass(frozen=True)
class AlphaProfile:
    """Integrated reference profile on [-t_end, t_end] (even in t)."""

    alpha: float
    t_end: float
    trajectory: numerics.Trajectory

    def _eval(self, t: float) -> tuple[float, float]:
        if abs(t) > self.t_end * (1 + 1e-12):
            raise OutOfRange(f"t={t} outside [-{self.t_end}, {self.t_end}]")
        rho, drho = self.trajectory(min(abs(t), self.t_end))
        return float(rho), float(math.copysign(drho, t) if t != 0 else drho)

    def state(self, t: float) -> tuple[float, float, float]:
        rho, drho = self._eval(t)
        if rho <= 0:
            raise OutOfRange(f"profile radius vanishes at t={t}")
        # second derivative from the first integral, never by differencing
        return rho, drho, self.alpha * rho ** (2.0 * self.alpha - 1.0)

    def samples(self, n: int = 201, symmetric: bool = False) -> np.ndarray:
        """Array of rows (t, rho, rho') on a uniform grid."""
        lo = -self.t_end if symmetric else 0.0
        ts = np.linspace(lo, self.t_end, n)
        return np.array([(t, *self._eval(float(t))) for t in ts])

    def first_integral_defect(self, n: int = 401) -> float:
        """sup |rho' - sgn(t) sqrt(rho^(2 alpha) - 1)| over a grid of [0, t_end]."""
        worst = 0.0
        for t in np.linspace(0.0, self.t_end, n):
            rho, drho = self._eval(float(t))
            target = math.sqrt(max(rho ** (2.0 * self.alpha) - 1.0, 0.0))
            if self.alpha < 0:
                target = -target
            worst = max(worst, abs(drho - target))
        return worst


def profile(alpha: float, t_end: float, tol: float = 1e-13) -> AlphaProfile:
    """Integrate the reference profile on [0, t_end]."""
    alpha = float(alpha)
    if alpha == 0:
        raise DomainError("alpha must be nonzero")
    if t_end <= 0:
        raise ValueError("t_end must be positive")

    def rhs(t, y):
        return (y[1], alpha * (1.0 + y[1] * y[1]) / y[0])

    traj = numerics.integrate_ode(rhs, (1.0, 0.0), (0.0, float(t_end)), step_tol=tol)
    return AlphaProfile(alpha, float(t_end), traj)


def profile_extent(alpha: float) -> float:
    """Half-width of the maximal existence interval of the reference profile.

    Finite for alpha > 1 (rho blows up) and alpha < 0 (rho reaches zero);
    infinite for 0 < alpha <= 1.  Closed form from the first integral:
    (1/|alpha|) int_0^1 (1-u^2)^p du with p = -1/(2 alpha) - 1/2.
    """
    alpha = float(alpha)
    if alpha == 0:
        raise DomainError("alpha must be nonzero")
    p = -0.5 / alpha - 0.5
    if p <= -1.0:
        return math.inf
    beta_half = math.exp(math.lgamma(p + 1.0) - math.lgamma(p + 1.5)) * math.sqrt(math.pi) / 2.0
    return beta_half / abs(alpha)


# ------------------------------------------------------------ inverse profile

def _pow_m1(x: float, p: float) -> float:
    """x^p - 1 without cancellation near x = 1."""
    return math.expm1(p * math.log(x))


def phi_integrand(alpha: float, s: float) -> float:
    """Integrand of phi after x = 1 + s^2; extends continuously to s = 0."""
    if s < 1e-7:
        return 2.0 / math.sqrt(2.0 * alpha)
    return 2.0 * s / math.sqrt(math.expm1(2.0 * alpha * math.log1p(s * s)))


def phi(alpha: float, r: float, abs_tol: float | None = None) -> float:
    """Height at which the reference profile reaches radius r (r > 1)."""
    if alpha <= 0:
        raise DomainError("phi requires alpha > 0")
    if not r > 1.0:
        raise DomainError(f"phi requires r > 1, got {r!r}")
    upper = math.sqrt(r - 1.0)
    return numerics.integrate(lambda s: phi_integrand(alpha, s), 0.0, upper, abs_tol).value


def phi_prime(alpha: float, r: float) -> float:
    return 1.0 / math.sqrt(_pow_m1(r, 2.0 * alpha))


def tangent_gap(alpha: float, r: float) -> float:
    """r phi'(r) - phi(r); positive near r = 1, vanishes at the free-boundary radius."""
    return r * phi_prime(alpha, r) - phi(alpha, r)


# ---------------------------------------------------------- free boundary

@dataclass(frozen=True)
class AlphaSurfaceData:
    alpha: float
    R: float
    T: float
    ball_scale: float
    R_c: float
    T_c: float
    M: float

    @property
    def R_c_spectral(self) -> float:
        return math.sqrt(-math.expm1(-2.0 * self.alpha * math.log(self.R)))

    def residuals(self) -> dict[str, float]:
        a = self.alpha
        return {
            "free_boundary": abs(self.R * phi_prime(a, self.R) - self.T),
            "critical_radius_routes": abs(self.R_c - self.R_c_spectral),
            "cosh_identity": abs(self.R ** a - math.cosh(a * self.M)),
            "tanh_identity": abs(math.tanh(a * self.M) - self.R_c),
        }


def free_boundary_radius(alpha: float, rel_tol: float | None = None) -> AlphaSurfaceData:
    alpha = float(alpha)
    if not (math.isfinite(alpha) and alpha > 0):
        raise DomainError(f"free-boundary construction requires alpha > 0, got {alpha!r}")
    g = lambda r: tangent_gap(alpha, r)
    br = expand_bracket(g, 1.0 + DELTA_R, 2.0, grow="hi")
    R = solve_bracketed(g, br, rel_tol)
    T = phi(alpha, R)
    s = 1.0 / math.hypot(R, T)
    R_c = R * s
    M = math.atanh(R_c) / alpha
    return AlphaSurfaceData(alpha, R, T, s, R_c, T * s, M)


def modulus_of_alpha(alpha: float) -> float:
    return free_boundary_radius(alpha).M


def alpha_of_modulus(M: float, rel_tol: float = 1e-13) -> float:
    """Inverse of ``modulus_of_alpha``, solved in log(alpha)."""
    M = float(M)
    if not (math.isfinite(M) and M > 0):
        raise DomainError(f"modulus must be positive, got {M!r}")
    f = lambda x: modulus_of_alpha(math.exp(x)) - M
    lo, hi = math.log(0.25), math.log(4.0)
    for _ in range(10):
        br = Bracket.of(f, lo, hi)
        if br.straddles or br.f_lo == 0 or br.f_hi == 0:
            return math.exp(solve_bracketed(f, br, rel_tol))
        # M decreasing in alpha: f_lo < 0 means target lies at smaller alpha
        if br.f_lo < 0:
            lo -= 2.0
        else:
            hi += 2.0
    raise BracketExhausted(f"modulus {M} outside the representable range")


def slice_profile(data: AlphaSurfaceData, margin: float = 0.01) -> AlphaProfile:
    """Profile covering the free-boundary slice, with a small overshoot when
    the profile does not blow up just past the rim."""
    try:
        return profile(data.alpha, data.T * (1.0 + margin))
    except Blowup:
        return profile(data.alpha, data.T)


# -------------------------------------------------------------- curvature

def curvatures(prof: RevolutionProfile, t: float) -> tuple[float, float]:
    """Meridian and parallel principal curvatures (k1, k2)."""
    rho, d, dd = prof.state(t)
    if rho <= 0:
        raise OutOfRange("profile radius must be positive")
    W = 1.0 + d * d
    return -dd / W ** 1.5, 1.0 / (rho * math.sqrt(W))


def weingarten_residual(prof: RevolutionProfile, alpha: float, t: float) -> float:
    k1, k2 = curvatures(prof, t)
    return k1 + alpha * k2


def weighted_mean_curvature_residual(prof: RevolutionProfile, alpha: float, t: float) -> float:
    """H + (1-alpha)/rho <grad rho, N> for the weight rho^(alpha-1)."""
    rho, d, _ = prof.state(t)
    k1, k2 = curvatures(prof, t)
    return k1 + k2 - (1.0 - alpha) / (rho * math.sqrt(1.0 + d * d))


def magnetic_harmonicity_residual(prof: RevolutionProfile, alpha: float, t: float) -> float:
    """Magnetic Laplacian of u = rho^alpha with potential alpha dtheta.

    Radial reduction -(1/(rho sqrt W)) d/dt(rho u'/sqrt W) + alpha^2 u/rho^2,
    W = 1 + rho'^2, differentiated analytically:
    alpha rho^(alpha-2) / W * (alpha - rho rho''/W).
    """
    rho, d, dd = prof.state(t)
    W = 1.0 + d * d
    return alpha * rho ** (alpha - 2.0) / W * (alpha - rho * dd / W)


# ------------------------------------------------------- boundary identity

@dataclass(frozen=True)
class BoundaryIdentity:
    sigma_slice: float
    sigma_normalized: float
    sigma_critical: float
    residual: float


def steklov_boundary_identity(data: AlphaSurfaceData) -> BoundaryIdentity:
    a, R = data.alpha, data.R
    root = data.R_c_spectral
    sigma = a / R * root
    crit = sigma / data.ball_scale
    return BoundaryIdentity(sigma, 4.0 * math.pi * a * root, crit, abs(crit - a))


def profile_robin_ratio(prof: RevolutionProfile, alpha: float, t: float) -> float:
    """Normal derivative of rho^alpha over rho^alpha at the rim t."""
    rho, d, _ = prof.state(t)
    return alpha * d / (rho * math.sqrt(1.0 + d * d))


# ------------------------------------------------------------ sections

def critical_section(data: AlphaSurfaceData, n: int = 201) -> np.ndarray:
    """Rows (x, z) of the critical surface's section in the unit ball."""
    prof = profile(data.alpha, data.T)
    s = data.ball_scale
    ts = np.linspace(-data.T, data.T, n)
    return np.array([(prof.state(float(t))[0] * s, t * s) for t in ts])


def section_distance(data: AlphaSurfaceData, elevation: float) -> float | None:
    """Distance from the origin to the critical section along a ray.

    ``elevation`` is measured from the equatorial plane; returns None when the
    ray leaves the ball before meeting the section.
    """
    if elevation < 0:
        raise ValueError("elevation must be nonnegative")
    slope = math.tan(elevation)
    if slope > data.T / data.R:
        return None
    prof = profile(data.alpha, data.T)
    if slope == 0.0:
        t = 0.0
    else:
        f = lambda t: t - slope * prof.state(t)[0]
        t = solve_bracketed(f, Bracket.of(f, 0.0, data.T))
    return data.ball_scale * math.hypot(prof.state(t)[0], t)

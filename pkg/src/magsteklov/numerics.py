"""Shared numerical kernel.

Bracketed root finding, adaptive quadrature, explicit ODE integration and the
2x2 generalized symmetric eigenproblem.  The first three delegate to SciPy
(Brent, QUADPACK Gauss-Kronrod, Dormand-Prince) behind small wrappers that
enforce the bracket/tolerance contracts and raise library exceptions.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy import integrate as _integrate
from scipy import optimize as _optimize

from .errors import Blowup, BracketExhausted, MaxIterations, MaxSubdivisions, NoSignChange

DEFAULT_ROOT_TOL = 1e-12
DEFAULT_QUAD_TOL = 1e-11
MAX_ROOT_ITER = 200
COSH_ARG_CAP = 700.0
OVERFLOW_GUARD = 1e150


def _env_tol(default: float) -> float:
    raw = os.environ.get("STEKLOV_TOL")
    if not raw:
        return default
    try:
        tol = float(raw)
    except ValueError:
        return default
    return tol if math.isfinite(tol) and tol > 0 else default


def root_tol() -> float:
    """Default relative tolerance for root solves (``STEKLOV_TOL`` overrides)."""
    return _env_tol(DEFAULT_ROOT_TOL)


def quad_tol() -> float:
    """Default absolute tolerance for quadrature (``STEKLOV_TOL`` overrides)."""
    return _env_tol(DEFAULT_QUAD_TOL)


# ---------------------------------------------------------------- hyperbolics

def coth(x: float) -> float:
    """coth without overflow: 1 + 2/(e^{2x}-1) for x > 0, odd extension."""
    if x == 0.0:
        return math.inf
    ax = abs(x)
    if ax > 20.0:
        val = 1.0 + 2.0 * math.exp(-2.0 * ax) / (1.0 - math.exp(-2.0 * ax))
    else:
        val = 1.0 + 2.0 / math.expm1(2.0 * ax)
    return math.copysign(val, x)


def csch(x: float) -> float:
    """1/sinh(x), evaluated as 2e^{-|x|}/(1-e^{-2|x|}) to avoid overflow."""
    if x == 0.0:
        return math.inf
    ax = abs(x)
    val = 2.0 * math.exp(-ax) / (-math.expm1(-2.0 * ax))
    return math.copysign(val, x)


def sech(x: float) -> float:
    ax = abs(x)
    return 2.0 * math.exp(-ax) / (1.0 + math.exp(-2.0 * ax))


def log_cosh(x: float) -> float:
    ax = abs(x)
    return ax + math.log1p(math.exp(-2.0 * ax)) - math.log(2.0)


def capped_cosh(x: float) -> float:
    if abs(x) > COSH_ARG_CAP:
        raise OverflowError(f"cosh argument {x!r} exceeds cap {COSH_ARG_CAP}")
    return math.cosh(x)


# -------------------------------------------------------------- root finding

@dataclass(frozen=True)
class Bracket:
    lo: float
    hi: float
    f_lo: float
    f_hi: float

    def __post_init__(self) -> None:
        if not self.lo < self.hi:
            raise ValueError(f"bracket requires lo < hi, got [{self.lo}, {self.hi}]")

    @classmethod
    def of(cls, f: Callable[[float], float], lo: float, hi: float) -> "Bracket":
        return cls(lo, hi, f(lo), f(hi))

    @property
    def straddles(self) -> bool:
        return self.f_lo * self.f_hi < 0


def solve_bracketed(
    f: Callable[[float], float],
    bracket: Bracket,
    rel_tol: float | None = None,
) -> float:
    """Root of ``f`` inside a sign-changing bracket (Brent's method).

    The returned root is accurate to ``rel_tol * max(1, |x|)``.  Raises
    :class:`NoSignChange` when the bracket endpoints do not straddle zero and
    :class:`MaxIterations` when the iteration cap is hit.
    """
    tol = root_tol() if rel_tol is None else rel_tol
    if tol <= 0:
        raise ValueError("rel_tol must be positive")
    if bracket.f_lo == 0.0:
        return bracket.lo
    if bracket.f_hi == 0.0:
        return bracket.hi
    if not bracket.straddles:
        raise NoSignChange(
            f"no sign change on [{bracket.lo}, {bracket.hi}]: "
            f"f_lo={bracket.f_lo!r}, f_hi={bracket.f_hi!r}"
        )
    try:
        root = _optimize.brentq(
            f,
            bracket.lo,
            bracket.hi,
            xtol=0.5 * tol,
            rtol=max(0.5 * tol, 4 * np.finfo(float).eps),
            maxiter=MAX_ROOT_ITER,
        )
    except RuntimeError as exc:
        raise MaxIterations(str(exc)) from exc
    return float(root)


def expand_bracket(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    *,
    grow: str = "hi",
    max_doublings: int = 60,
) -> Bracket:
    """Double ``hi`` (or halve ``lo`` toward zero) until ``f`` changes sign."""
    br = Bracket.of(f, lo, hi)
    for _ in range(max_doublings):
        if br.straddles or br.f_lo == 0.0 or br.f_hi == 0.0:
            return br
        if grow == "hi":
            br = Bracket.of(f, br.lo, 2.0 * br.hi)
        else:
            br = Bracket.of(f, 0.5 * br.lo, br.hi)
    raise BracketExhausted(f"no sign change found after {max_doublings} expansions from [{lo}, {hi}]")


# ----------------------------------------------------------------- quadrature

@dataclass(frozen=True)
class QuadratureResult:
    value: float
    abs_error_estimate: float
    evaluations: int


def integrate(
    f: Callable[[float], float],
    a: float,
    b: float,
    abs_tol: float | None = None,
) -> QuadratureResult:
    """Adaptive Gauss-Kronrod quadrature of ``f`` over ``[a, b]``.

    Integrable endpoint singularities must be removed by the caller with a
    change of variables before calling.
    """
    if not a < b:
        raise ValueError(f"integrate requires a < b, got [{a}, {b}]")
    tol = quad_tol() if abs_tol is None else abs_tol
    value, err, info, *rest = _integrate.quad(
        f, a, b, epsabs=tol, epsrel=0.0, limit=400, full_output=1
    )
    ier = rest[0] if rest and isinstance(rest[0], int) else 0
    if ier not in (0,) and err > tol:
        raise MaxSubdivisions(f"quadrature on [{a}, {b}] stopped at error {err:.3e} > {tol:.3e}")
    return QuadratureResult(float(value), float(abs(err)), int(info["neval"]))


# ------------------------------------------------------------------------ ODE

@dataclass(frozen=True)
class Trajectory:
    """Dense ODE solution; ``__call__`` evaluates the interpolant."""

    t: np.ndarray
    y: np.ndarray
    sol: Callable[[float], np.ndarray]

    @property
    def t0(self) -> float:
        return float(self.t[0])

    @property
    def t1(self) -> float:
        return float(self.t[-1])

    def __call__(self, t: float | np.ndarray) -> np.ndarray:
        return self.sol(t)


def integrate_ode(
    rhs: Callable[[float, np.ndarray], Sequence[float]],
    y0: Sequence[float],
    t_span: tuple[float, float],
    step_tol: float = 1e-12,
) -> Trajectory:
    """Integrate ``y' = rhs(t, y)`` with an embedded Runge-Kutta pair.

    Uses Dormand-Prince 8(5,3) with its native dense output.  Raises
    :class:`Blowup` if the state norm passes ``OVERFLOW_GUARD``.
    """
    t0, t1 = t_span
    if not t0 < t1:
        raise ValueError("integrate_ode requires t0 < t1")

    def guard(t, y):
        return OVERFLOW_GUARD - float(np.max(np.abs(y)))

    guard.terminal = True

    res = _integrate.solve_ivp(
        rhs,
        (t0, t1),
        np.asarray(y0, dtype=float),
        method="DOP853",
        rtol=step_tol,
        atol=step_tol * 1e-2,
        dense_output=True,
        events=guard,
    )
    if res.status == 1 or not res.success:
        reached = float(res.t[-1]) if res.t.size else t0
        raise Blowup(f"ODE state left the representable range near t={reached:.6g} ({res.message})")
    if not np.all(np.isfinite(res.y)):
        raise Blowup("non-finite ODE state")
    return Trajectory(res.t, res.y, res.sol)


# ----------------------------------------------------------- 2x2 eigenproblem

def eig2_generalized(K, B) -> tuple[float, float]:
    """Roots of det(K - s B) = 0 for symmetric 2x2 ``K`` and positive diagonal ``B``.

    Returned in ascending order.  The smaller root is recovered from the root
    product when the sum dominates, which keeps it accurate when the roots are
    far apart.
    """
    K = np.asarray(K, dtype=float)
    B = np.asarray(B, dtype=float)
    b1, b2 = float(B[0, 0]), float(B[1, 1])
    if b1 <= 0 or b2 <= 0:
        raise ValueError("B must have positive diagonal")
    k11, k22 = float(K[0, 0]), float(K[1, 1])
    k12 = 0.5 * (float(K[0, 1]) + float(K[1, 0]))
    x1, x2 = k11 / b1, k22 / b2
    mid = 0.5 * (x1 + x2)
    rad = math.sqrt((0.5 * (x1 - x2)) ** 2 + k12 * k12 / (b1 * b2))
    prod = (k11 * k22 - k12 * k12) / (b1 * b2)
    if mid > 0:
        hi = mid + rad
        lo = prod / hi if hi != 0 else mid - rad
    elif mid < 0:
        lo = mid - rad
        hi = prod / lo if lo != 0 else mid + rad
    else:
        lo, hi = -rad, rad
    return (lo, hi) if lo <= hi else (hi, lo)

"""Sharp eigenvalue bounds and the optimal modulus for the second eigenvalue.

``m_star`` is the unique positive root of
    (1-v) tanh((1-v) M) = v coth(v M),
where the k=1 tanh branch and the k=0 coth branch cross.  The maximal second
normalized eigenvalue over rotationally invariant annuli is the common value
4 pi v coth(v M*).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

from .cylinder import BOUNDARY_LENGTH, _check_modulus
from .errors import FluxOutOfRange
from .flux import Flux, reduce_flux
from .numerics import Bracket, coth, csch, expand_bracket, log_cosh, sech, solve_bracketed

FOUR_PI = BOUNDARY_LENGTH
# above this reduced flux the root is found on the log-scaled cosh identity
LOG_FORM_THRESHOLD = 0.4


def crossing_residual(nu: float, M: float) -> float:
    """F(v, M) = (1-v) tanh((1-v) M) - v coth(v M); increasing in M."""
    return (1.0 - nu) * math.tanh((1.0 - nu) * M) - nu * coth(nu * M)


def _log_cosh_residual(nu: float, M: float) -> float:
    # log cosh((1-2v)M) - log(1-2v) - log cosh(M); positive below the root
    eps = 1.0 - 2.0 * nu
    return log_cosh(eps * M) - math.log(eps) - log_cosh(M)


def cosh_identity_residual(nu: float, M: float) -> float:
    """Relative residual of cosh((1-2v)M) = (1-2v) cosh(M), in log form."""
    return _log_cosh_residual(nu, M)


def m0(rel_tol: float | None = None) -> float:
    """Positive root of x tanh(x) = 1 (about 1.19968)."""
    f = lambda x: x * math.tanh(x) - 1.0
    return solve_bracketed(f, Bracket.of(f, 1.0, 2.0), rel_tol)


def _open_flux(flux) -> float:
    nu = reduce_flux(flux)
    if not 0.0 < nu.reduced < 0.5:
        raise FluxOutOfRange(
            f"reduced flux must lie in (0, 1/2), got {nu.reduced!r}"
            + (" (no maximiser at half flux; sup = 2*pi)" if nu.is_half else "")
        )
    return nu.reduced


def m_star(flux, rel_tol: float | None = None) -> float:
    nu = _open_flux(flux)
    M0 = m0()
    if nu >= LOG_FORM_THRESHOLD:
        g = lambda M: -_log_cosh_residual(nu, M)
    else:
        g = lambda M: crossing_residual(nu, M)
    br = expand_bracket(g, 0.5 * M0, 2.0 * M0, grow="hi")
    return solve_bracketed(g, br, rel_tol)


def m_star_derivative(flux) -> float:
    """dM*/dv by implicit differentiation of the crossing equation."""
    nu = _open_flux(flux)
    M = m_star(nu)
    a, b = (1.0 - nu) * M, nu * M
    dF_dM = (1.0 - nu) ** 2 * sech(a) ** 2 + nu * nu * csch(b) ** 2
    num = math.tanh(a) + a * sech(a) ** 2 + coth(b) - b * csch(b) ** 2
    return num / dF_dM


@dataclass(frozen=True)
class MaximizerResult:
    flux: Flux
    M_star: float
    sigma2_star_normalized: float
    sigma2_star_tanh_form: float
    residual: float

    @property
    def relative_disagreement(self) -> float:
        return abs(self.sigma2_star_normalized - self.sigma2_star_tanh_form) / self.sigma2_star_normalized


def sigma2_star(flux) -> MaximizerResult:
    nu_obj = reduce_flux(flux)
    nu = _open_flux(nu_obj)
    M = m_star(nu)
    coth_form = FOUR_PI * nu * coth(nu * M)
    tanh_form = FOUR_PI * (1.0 - nu) * math.tanh((1.0 - nu) * M)
    return MaximizerResult(nu_obj, M, coth_form, tanh_form, abs(crossing_residual(nu, M)))


def sigma2_star_derivative(flux) -> float:
    """d sigma_2^*/dv, chain rule through v coth(v M*(v)).

    4 pi [sinh(vM) cosh(vM) - v (M + v dM*/dv)] / sinh^2(vM).
    """
    nu = _open_flux(flux)
    M = m_star(nu)
    b = nu * M
    s = csch(b)
    return FOUR_PI * (coth(b) - nu * (M + nu * m_star_derivative(nu)) * s * s)


def sigma1_bound(M: float, flux) -> float:
    """Upper bound 4 pi v tanh(v M) for the first normalized eigenvalue."""
    M = _check_modulus(M)
    nu = reduce_flux(flux).reduced
    return FOUR_PI * nu * math.tanh(nu * M)


def sigma1_asymptotic_check(M: float, nus: Iterable[float]) -> list[tuple[float, float]]:
    """Rows (v, first normalized eigenvalue / v^2) for the cylinder of modulus M.

    The ratio tends to 4 pi M as v -> 0.
    """
    M = _check_modulus(M)
    rows = []
    prev = math.inf
    for nu in nus:
        nu = float(nu)
        if not 0.0 < nu < prev:
            raise ValueError("flux sequence must be positive and strictly decreasing")
        prev = nu
        rows.append((nu, FOUR_PI * math.tanh(nu * M) / nu))
    return rows


def sigma2_half_flux(M: float) -> float:
    M = _check_modulus(M)
    return 2.0 * math.pi * math.tanh(0.5 * M)


def flux_grid(n: int = 97, lo: float = 0.005, hi: float = 0.495) -> list[float]:
    return [lo + (hi - lo) * i / (n - 1) for i in range(n)]

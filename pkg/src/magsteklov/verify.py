"""Cross-module invariant suites used by ``magsteklov verify``.

Each check reports a residual and its threshold.  ``kind='max'`` passes when
the residual is at most the threshold; ``kind='min'`` (negative controls and
nondegeneracy) passes when it exceeds the threshold.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Callable

import numpy as np

from . import alpha_surface as asf
from . import catenoid_slab as slab
from . import embedding as emb
from . import maximizer as mx
from . import rotinv
from .cylinder import sorted_spectrum
from .numerics import Bracket, solve_bracketed
from .weighted_planar import WeightedAnnulus, determinant, normalized_first, radial_eigenvalues

SUITES = ("oracles", "monotonicity", "geometry")


@dataclass(frozen=True)
class Check:
    suite: str
    name: str
    residual: float
    threshold: float
    kind: str = "max"

    @property
    def passed(self) -> bool:
        if not math.isfinite(self.residual):
            return False
        if self.kind == "max":
            return self.residual <= self.threshold
        return self.residual > self.threshold

    def as_dict(self) -> dict:
        d = asdict(self)
        d["passed"] = self.passed
        return d


def _rel(a: float, b: float) -> float:
    return abs(a - b) / max(abs(b), 1e-300)


def m0_exponential_form(rel_tol: float | None = None) -> float:
    """M0 as the positive root of e^{2x}(x-1) = x+1."""
    f = lambda x: math.exp(2.0 * x) * (x - 1.0) - (x + 1.0)
    return solve_bracketed(f, Bracket.of(f, 1.0, 2.0), rel_tol)


ORACLE_GRID = dict(ratios=(1.0, 2.0, 4.0), lengths=(0.5, 1.0, 2.0), fluxes=(0.0, 0.25, 0.5), modes=range(-3, 4))


def oracle_triangle(n: int = 4000) -> tuple[float, float, int]:
    """Worst (closed vs DtN, closed vs FD) relative gaps over the oracle grid."""
    worst_dtn = worst_fd = 0.0
    cases = 0
    g = ORACLE_GRID
    for A in g["ratios"]:
        for Z in g["lengths"]:
            for nu in g["fluxes"]:
                ann = rotinv.RotInvAnnulus.make(A, Z, nu)
                for k in g["modes"]:
                    if ann.beta(k) == 0.0:
                        continue
                    closed = rotinv.branch_pair(ann, k)
                    dtn = rotinv.dtn_mode_eigenvalues(ann, k)
                    fd = rotinv.fd_mode_eigenvalues(ann, k, n, richardson=True)
                    for c, d, f in zip(closed, dtn, fd):
                        worst_dtn = max(worst_dtn, _rel(d, c))
                        worst_fd = max(worst_fd, _rel(f, c))
                    cases += 1
    return worst_dtn, worst_fd, cases


def oracles() -> list[Check]:
    s = "oracles"
    out = []
    a, b = mx.m0(), m0_exponential_form()
    out.append(Check(s, "m0_two_methods", abs(a - b), 1e-12))
    out.append(Check(s, "m0_near_1.2", abs(a - 1.2), 0.01))
    dtn, fd, _ = oracle_triangle()
    out.append(Check(s, "closed_vs_dtn", dtn, 1e-10))
    out.append(Check(s, "closed_vs_fd_richardson", fd, 1e-5))
    worst = max(abs(rotinv.crossing_length(1.0, nu) - 2.0 * mx.m_star(nu)) for nu in (0.1, 0.25, 0.4))
    out.append(Check(s, "crossing_length_unit_ratio", worst, 1e-9))
    base = sorted_spectrum(1.5, 0.3, 12).values
    gauge = max(
        max(abs(x - y) / y for x, y in zip(base, sorted_spectrum(1.5, alt, 12).values))
        for alt in (3.3, -0.3)
    )
    out.append(Check(s, "gauge_invariance", gauge, 1e-12))
    return out


def monotonicity(h: float = 1e-6) -> list[Check]:
    s = "monotonicity"
    grid = mx.flux_grid()
    ms = np.array([mx.m_star(nu) for nu in grid])
    sig = np.array([mx.sigma2_star(nu).sigma2_star_normalized for nu in grid])
    res = max(abs(mx.crossing_residual(nu, M)) for nu, M in zip(grid, ms))
    out = [
        Check(s, "m_star_increasing", float(np.min(np.diff(ms))), 0.0, "min"),
        Check(s, "sigma2_star_decreasing", float(np.min(-np.diff(sig))), 0.0, "min"),
        Check(s, "m_star_residual", res, 1e-10),
    ]
    pts = np.linspace(0.05, 0.45, 10)
    dm = max(_rel(mx.m_star_derivative(nu), (mx.m_star(nu + h) - mx.m_star(nu - h)) / (2 * h)) for nu in pts)
    ds = max(
        _rel(
            mx.sigma2_star_derivative(nu),
            (mx.sigma2_star(nu + h).sigma2_star_normalized - mx.sigma2_star(nu - h).sigma2_star_normalized) / (2 * h),
        )
        for nu in pts
    )
    out.append(Check(s, "m_star_derivative_vs_fd", dm, 1e-5))
    out.append(Check(s, "sigma2_star_derivative_vs_fd", ds, 1e-5))
    lo = _rel(mx.sigma2_star(1e-4).sigma2_star_normalized, 4 * math.pi / mx.m0())
    hi = _rel(mx.sigma2_star(0.4999).sigma2_star_normalized, 2 * math.pi)
    out.append(Check(s, "sigma2_star_small_flux_limit", lo, 1e-3))
    out.append(Check(s, "sigma2_star_half_flux_limit", hi, 1e-2))
    for nu in (0.1, 0.25, 0.4):
        g0 = slab.slab_data(0.0, nu).g
        out.append(Check(s, f"slab_g0_nu{nu}", _rel(g0, mx.sigma2_star(nu).sigma2_star_normalized), 1e-9))
        verdict = slab.g_monotonicity_scan(nu, 3.0, 64)
        out.append(Check(s, f"slab_g_decreasing_nu{nu}", float(np.min(-np.diff(verdict.g))), 0.0, "min"))
    return out


def _grid(data: asf.AlphaSurfaceData, n: int = 41) -> np.ndarray:
    return np.linspace(-data.T, data.T, n)


def curvature_checks(alpha: float, suite: str = "geometry") -> list[Check]:
    data = asf.free_boundary_radius(alpha)
    prof = asf.profile(alpha, data.T)
    ts = _grid(data)
    wrong = alpha + 0.5
    tests: list[tuple[str, Callable[[float, float], float]]] = [
        ("weingarten", lambda a, t: asf.weingarten_residual(prof, a, t)),
        ("weighted_mean_curvature", lambda a, t: asf.weighted_mean_curvature_residual(prof, a, t)),
        ("magnetic_harmonicity", lambda a, t: asf.magnetic_harmonicity_residual(prof, a, t)),
    ]
    out = []
    for name, fn in tests:
        out.append(Check(suite, f"{name}_alpha{alpha:g}", max(abs(fn(alpha, float(t))) for t in ts), 1e-7))
        out.append(Check(suite, f"{name}_control_alpha{alpha:g}", max(abs(fn(wrong, float(t))) for t in ts), 1e-3, "min"))
    return out


def geometry() -> list[Check]:
    s = "geometry"
    M0 = mx.m0()
    d1 = asf.free_boundary_radius(1.0)
    out = [
        Check(s, "alpha1_T_is_m0", abs(d1.T - M0), 1e-8),
        Check(s, "alpha1_R_is_cosh_m0", abs(d1.R - math.cosh(M0)), 1e-8),
        Check(s, "alpha1_Rc_is_tanh_m0", abs(d1.R_c - math.tanh(M0)), 1e-8),
        Check(s, "alpha1_M_is_m0", abs(d1.M - M0), 1e-8),
    ]
    for a in (0.5, 1.0, 2.0, 4.0):
        d = asf.free_boundary_radius(a)
        out.append(Check(s, f"boundary_identity_alpha{a:g}", asf.steklov_boundary_identity(d).residual, 1e-8))
        out.append(Check(s, f"T_bound_alpha{a:g}", d.T - math.sqrt(2.0 / a), 1e-10))
        out.append(Check(s, f"first_integral_alpha{a:g}", asf.slice_profile(d).first_integral_defect(), 1e-8))
        out.append(Check(s, f"fb_residuals_alpha{a:g}", max(d.residuals().values()), 1e-8))
    for a in (0.5, 2.0, 4.0):
        out.extend(curvature_checks(a, s))
    for nu in (0.1, 0.25, 0.4):
        M = mx.m_star(nu)
        a2 = emb.normalization_constant(nu) ** 2
        sphere = max(abs(emb.boundary_norm_squared(nu, t) - 1.0) for t in (-M, M))
        psi = max(
            abs(emb.conformal_factor(nu, float(t)) - emb.conformal_factor_alt(nu, float(t)))
            for t in np.linspace(-M, M, 20)
        )
        fu = max(abs(emb.free_boundary_inner_product(nu, t)) for t in (-M, M))
        r1, r2 = emb.robin_ratios(nu)
        out += [
            Check(s, f"embedding_sphere_nu{nu}", sphere, 1e-10),
            Check(s, f"embedding_conformal_nu{nu}", psi, 1e-12),
            Check(s, f"embedding_free_boundary_nu{nu}", fu, 1e-10),
            Check(s, f"embedding_interior_nu{nu}", abs(emb.free_boundary_inner_product(nu, 0.0)), 0.01 * a2, "min"),
            Check(s, f"embedding_robin_nu{nu}", abs(r1 - r2), 1e-10),
        ]
    for nu in (0.3, 0.5):
        w = WeightedAnnulus.make(0.25, nu)
        lo, hi = radial_eigenvalues(w)
        out.append(Check(s, f"planar_product_nu{nu}", abs(lo * hi - nu * nu), 1e-14))
        out.append(Check(s, f"planar_det_nu{nu}", max(abs(determinant(w, lo)), abs(determinant(w, hi))), 1e-10))
    limit = normalized_first(WeightedAnnulus.make(1e-8, 0.5))
    out.append(Check(s, "planar_small_r0_limit", _rel(limit, 2 * math.pi), 1e-2))
    return out


def run(suite: str = "all") -> list[Check]:
    table = {"oracles": oracles, "monotonicity": monotonicity, "geometry": geometry}
    if suite == "all":
        return [c for name in SUITES for c in table[name]()]
    if suite not in table:
        raise ValueError(f"unknown suite {suite!r}")
    return table[suite]()

"""Command-line interface.

    magsteklov spectrum --modulus 1.5 --flux 0.3 --count 8
    magsteklov maximize --flux 0.25 --format json
    magsteklov figure fig1 --out figs/
    magsteklov verify --suite all

Exit status: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import io
import json
import math
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Sequence

import numpy as np

from . import alpha_surface as asf
from . import catenoid_slab as slab
from . import embedding as emb
from . import figures
from . import maximizer as mx
from . import rotinv
from . import verify as vfy
from .cylinder import sorted_spectrum
from .errors import SteklovError
from .flux import reduce_flux
from .weighted_planar import WeightedAnnulus, determinant, normalized_first, radial_eigenvalues

EXIT_OK, EXIT_VERIFY, EXIT_USAGE = 0, 1, 2
CSV_DIGITS = 12


class UsageError(Exception):
    pass


def _real(text: str) -> float:
    """Real number, also accepting fractions such as 1/3."""
    try:
        return float(Fraction(text)) if "/" in text else float(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a real number: {text!r}") from exc


# ------------------------------------------------------------------ output

def _json_value(x: Any) -> Any:
    if isinstance(x, (float, np.floating)):
        x = float(x)
        # repr is the shortest round-trip form, at most 17 significant digits
        return x if math.isfinite(x) else str(x)
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (np.bool_,)):
        return bool(x)
    if isinstance(x, dict):
        return {k: _json_value(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, np.ndarray)):
        return [_json_value(v) for v in x]
    return x


def render_json(command: str, params: dict, results: Any, residuals: dict) -> str:
    doc = {"command": command, "params": params, "results": results, "residuals": residuals}
    return json.dumps(_json_value(doc), indent=2, allow_nan=False) + "\n"


def _csv_cell(x: Any) -> str:
    if isinstance(x, (float, np.floating)):
        return format(float(x), f".{CSV_DIGITS}g")
    return str(x)


def render_csv(columns: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    buf = io.StringIO()
    buf.write(",".join(columns) + "\n")
    for row in rows:
        buf.write(",".join(_csv_cell(v) for v in row) + "\n")
    return buf.getvalue()


def _emit(text: str, out: str | None) -> None:
    if out:
        path = Path(out)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, newline="\n")
    else:
        sys.stdout.write(text)


def _flux_params(raw: float) -> dict:
    f = reduce_flux(raw)
    return {"flux_raw": f.raw, "flux_reduced": f.reduced}


def _require(args, *names: str) -> None:
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"{args.command}: missing " + ", ".join("--" + n for n in missing))


def _table_output(args, command, params, columns, rows, residuals=None) -> int:
    if args.format == "csv":
        _emit(render_csv(columns, rows), args.out)
    elif args.format == "json":
        results = [dict(zip(columns, r)) for r in rows]
        _emit(render_json(command, params, results, residuals or {}), args.out)
    else:
        raise UsageError(f"{command}: --format svg is only available for 'figure'")
    return EXIT_OK


def _record_output(args, command, params, results: dict, residuals: dict) -> int:
    if args.format == "json":
        _emit(render_json(command, params, results, residuals), args.out)
    elif args.format == "csv":
        cols = list(results) + [f"residual_{k}" for k in residuals]
        _emit(render_csv(cols, [list(results.values()) + list(residuals.values())]), args.out)
    else:
        raise UsageError(f"{command}: --format svg is only available for 'figure'")
    return EXIT_OK


# ---------------------------------------------------------------- commands

def cmd_spectrum(args) -> int:
    _require(args, "flux")
    count = args.count or 8
    if args.ratio is not None or args.length is not None:
        _require(args, "ratio", "length")
        ann = rotinv.RotInvAnnulus.make(args.ratio, args.length, args.flux)
        L = ann.perimeter
        rows = [(i + 1, j, k, s, L * s) for i, (k, j, s) in enumerate(rotinv.sorted_branches(ann, count))]
        params = {"ratio": ann.ratio, "length": ann.length, "count": count, **_flux_params(args.flux)}
        return _table_output(args, "spectrum", params, ("index", "branch", "k", "sigma", "sigma_normalized"), rows)
    _require(args, "modulus")
    spec = sorted_spectrum(args.modulus, args.flux, count)
    # no raw-flux column: gauge-equivalent inputs give byte-identical CSV
    rows = [
        (e.index, e.branch.family.label, e.branch.k, e.value, e.branch.normalized, e.multiplicity)
        for e in spec.entries
    ]
    params = {"modulus": spec.modulus, "count": count, **_flux_params(args.flux)}
    cols = ("index", "family", "k", "sigma", "sigma_normalized", "multiplicity")
    return _table_output(args, "spectrum", params, cols, rows)


def _maximize_record(nu: float) -> tuple[dict, dict]:
    res = mx.sigma2_star(nu)
    results = {
        **_flux_params(nu),
        "M_star": res.M_star,
        "sigma2_star": res.sigma2_star_normalized,
        "sigma2_star_tanh_form": res.sigma2_star_tanh_form,
        "dM_star_dflux": mx.m_star_derivative(nu),
        "dsigma2_star_dflux": mx.sigma2_star_derivative(nu),
    }
    residuals = {"crossing": res.residual, "forms_relative": res.relative_disagreement}
    return results, residuals


def cmd_maximize(args) -> int:
    if args.flux is not None:
        f = reduce_flux(args.flux)
        if f.is_half:
            raise UsageError("maximize: no maximiser at half flux; sup = 2π")
        results, residuals = _maximize_record(args.flux)
        return _record_output(args, "maximize", _flux_params(args.flux), results, residuals)
    n = args.grid or 97
    rows, worst = [], 0.0
    for nu in mx.flux_grid(n):
        r, res = _maximize_record(nu)
        rows.append((nu, r["M_star"], r["sigma2_star"], r["dM_star_dflux"], r["dsigma2_star_dflux"]))
        worst = max(worst, res["crossing"])
    cols = ("flux", "M_star", "sigma2_star", "dM_star_dflux", "dsigma2_star_dflux")
    return _table_output(args, "maximize", {"grid": n}, cols, rows, {"crossing_max": worst})


def cmd_alpha(args) -> int:
    if (args.alpha is None) == (args.modulus is None):
        raise UsageError("alpha: give exactly one of --alpha or --modulus")
    if args.alpha is not None:
        if not args.alpha > 0:
            raise UsageError("alpha: --alpha must be positive")
        alpha = args.alpha
        params = {"alpha": alpha}
    else:
        if not args.modulus > 0:
            raise UsageError("alpha: --modulus must be positive")
        alpha = asf.alpha_of_modulus(args.modulus)
        params = {"modulus": args.modulus}
    d = asf.free_boundary_radius(alpha)
    ident = asf.steklov_boundary_identity(d)
    results = {
        "alpha": d.alpha, "R": d.R, "T": d.T, "ball_scale": d.ball_scale,
        "R_c": d.R_c, "T_c": d.T_c, "M": d.M,
        "sigma_normalized": ident.sigma_normalized, "sigma_critical": ident.sigma_critical,
    }
    residuals = {**d.residuals(), "boundary_identity": ident.residual}
    return _record_output(args, "alpha", params, results, residuals)


def cmd_slab(args) -> int:
    _require(args, "flux")
    a_max = args.a_max
    n = args.grid or 64
    verdict = slab.g_monotonicity_scan(args.flux, a_max, n)
    rows = []
    for a, g in zip(verdict.a, verdict.g):
        d = slab.slab_data(float(a), args.flux)
        rows.append((a, d.z1, d.z2, d.T, d.ratio, g))
    params = {"a_max": a_max, "grid": n, **_flux_params(args.flux)}
    residuals = {
        "g0_vs_sigma2_star": abs(verdict.g[0] - mx.sigma2_star(args.flux).sigma2_star_normalized),
        "strictly_decreasing": verdict.strictly_decreasing,
    }
    return _table_output(args, "slab", params, ("a", "z1", "z2", "T", "ratio", "g"), rows, residuals)


def cmd_planar(args) -> int:
    _require(args, "r0", "flux")
    w = WeightedAnnulus.make(args.r0, args.flux)
    lo, hi = radial_eigenvalues(w)
    results = {"r0": w.r0, **_flux_params(args.flux), "sigma_minus": lo, "sigma_plus": hi,
               "normalized_first": normalized_first(w)}
    residuals = {
        "product": abs(lo * hi - w.flux.reduced ** 2),
        "det_minus": abs(determinant(w, lo)),
        "det_plus": abs(determinant(w, hi)),
    }
    return _record_output(args, "planar", {"r0": w.r0, **_flux_params(args.flux)}, results, residuals)


def cmd_embedding(args) -> int:
    _require(args, "flux")
    n = args.grid or 41
    data = emb.embedding_data(args.flux, n)
    M = data.M_star
    residuals = {
        "sphere": max(abs(emb.boundary_norm_squared(args.flux, t) - 1.0) for t in (-M, M)),
        "free_boundary": max(abs(emb.free_boundary_inner_product(args.flux, t)) for t in (-M, M)),
        "robin": abs(np.subtract(*emb.robin_ratios(args.flux))),
    }
    params = {"grid": n, "M_star": M, "a_norm": data.a_norm, **_flux_params(args.flux)}
    return _table_output(args, "embedding", params, data.columns, data.samples.tolist(), residuals)


def _write_table(path: Path, table: figures.Table) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(render_csv(table.columns, table.rows.tolist()), newline="\n")
    return path


def cmd_figure(args) -> int:
    from . import plotting

    out = Path(args.out or ".")
    written: list[Path] = []
    if args.which == "fig1":
        fluxes = figures.FIG1_FLUXES if args.flux is None else (args.flux,)
        tables = {}
        for nu in fluxes:
            tab = figures.fig1_table(nu, grid=args.grid or 200)
            tag = figures.flux_tag(nu)
            written.append(_write_table(out / f"fig1_nu{tag}.csv", tab))
            tables[tag.replace("_", "/")] = tab
        if args.format != "csv":
            written.append(plotting.render_fig1(tables, out / "fig1.svg"))
    elif args.which == "fig2":
        tab = figures.fig2_table(n=args.grid or 201)
        written.append(_write_table(out / "fig2.csv", tab))
        if args.format != "csv":
            written.append(plotting.render_fig2(tab, out / "fig2.svg"))
    else:
        tab = figures.fig3_table(n=args.grid or 201)
        written.append(_write_table(out / "fig3.csv", tab))
        if args.format != "csv":
            written.append(plotting.render_fig3(tab, out / "fig3.svg"))
    for p in written:
        print(p)
    return EXIT_OK


def cmd_verify(args) -> int:
    checks = vfy.run(args.suite)
    ok = all(c.passed for c in checks)
    report = {"suite": args.suite, "passed": ok, "checks": [c.as_dict() for c in checks]}
    text = json.dumps(_json_value(report), indent=2) + "\n"
    _emit(text, args.out)
    if args.out:
        failed = [c.name for c in checks if not c.passed]
        print(f"{len(checks) - len(failed)}/{len(checks)} checks passed" + (f"; failed: {failed}" if failed else ""))
    return EXIT_OK if ok else EXIT_VERIFY


COMMANDS = {
    "spectrum": cmd_spectrum,
    "maximize": cmd_maximize,
    "alpha": cmd_alpha,
    "slab": cmd_slab,
    "planar": cmd_planar,
    "embedding": cmd_embedding,
    "figure": cmd_figure,
    "verify": cmd_verify,
}


HELP = {
    "spectrum": "sorted spectrum of a flat cylinder, or of an annulus given by --ratio/--length",
    "maximize": "optimal modulus and maximal second eigenvalue (table over flux if --flux is omitted)",
    "alpha": "critical alpha-surface data from --alpha or --modulus",
    "slab": "catenoid-slab family g(a) on [0, a_max]",
    "planar": "weighted planar annulus eigenvalues",
    "embedding": "samples of the optimal free-boundary immersion",
    "figure": "figure data as CSV plus an SVG rendering",
    "verify": "run invariant suites; exit 1 on any failure",
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse exits 2 already; keep the message terse
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--modulus", type=_real, help="conformal modulus M of the flat cylinder")
    common.add_argument("--flux", type=_real, help="magnetic flux (any real; reduced mod 1 and sign)")
    common.add_argument("--alpha", type=_real)
    common.add_argument("--ratio", type=_real, help="boundary-length ratio A of a rotationally invariant annulus")
    common.add_argument("--length", type=_real, help="length Z of a rotationally invariant annulus")
    common.add_argument("--count", type=int)
    common.add_argument("--r0", type=_real, help="inner radius of the planar annulus")
    common.add_argument("--grid", type=int)
    common.add_argument("--out", help="output file (directory for 'figure')")
    common.add_argument("--format", choices=("csv", "json", "svg"), default=None)

    p = _Parser(prog="magsteklov", description="Magnetic Steklov eigenvalues on annuli")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in ("spectrum", "maximize", "alpha", "planar", "embedding"):
        sub.add_parser(name, parents=[common], help=HELP[name])
    sp = sub.add_parser("slab", parents=[common], help=HELP["slab"])
    sp.add_argument("--a-max", type=_real, default=3.0, dest="a_max")
    fp = sub.add_parser("figure", parents=[common], help=HELP["figure"])
    fp.add_argument("which", choices=("fig1", "fig2", "fig3"))
    vp = sub.add_parser("verify", parents=[common], help=HELP["verify"])
    vp.add_argument("--suite", choices=vfy.SUITES + ("all",), default="all")
    return p


DEFAULT_FORMAT = {"maximize": "json", "alpha": "json", "planar": "json", "figure": "svg", "verify": "json"}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.format is None:
        args.format = DEFAULT_FORMAT.get(args.command, "csv")
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"magsteklov: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (SteklovError, ValueError) as exc:
        print(f"magsteklov: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

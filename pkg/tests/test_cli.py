import csv
import io
import json
import math

import pytest

from magsteklov.cli import main
from magsteklov.maximizer import m0


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_spectrum_integer_flux(capsys):
    code, out, _ = run(capsys, "spectrum", "--modulus", "1", "--flux", "0", "--count", "4")
    assert code == 0
    r = rows(out)
    assert float(r[0]["sigma"]) == 0.0 and len(r) == 4
    assert "\r" not in out


def test_spectrum_half_flux(capsys):
    _, out, _ = run(capsys, "spectrum", "--modulus", "1", "--flux", "0.5", "--count", "2")
    r = rows(out)
    assert r[0]["sigma"] == r[1]["sigma"] and r[0]["multiplicity"] == "2"


def test_spectrum_bad_modulus(capsys):
    code, _, err = run(capsys, "spectrum", "--modulus", "-1", "--flux", "0")
    assert code == 2 and "InvalidModulus" in err


def test_spectrum_ratio_form(capsys):
    code, out, _ = run(capsys, "spectrum", "--ratio", "2", "--length", "1", "--flux", "0.3", "--count", "3", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and set(doc) == {"command", "params", "results", "residuals"}
    assert doc["params"]["flux_raw"] == 0.3 and len(doc["results"]) == 3


def test_usage_errors(capsys):
    assert run(capsys, "spectrum", "--flux", "0.2")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["nonsense"])
    assert exc.value.code == 2
    assert run(capsys, "planar", "--r0", "0.5", "--flux", "0.2", "--format", "svg")[0] == 2


def test_maximize(capsys):
    code, out, _ = run(capsys, "maximize", "--flux", "1e-4")
    doc = json.loads(out)
    assert code == 0 and abs(doc["results"]["M_star"] - m0()) < 1e-3
    _, out, _ = run(capsys, "maximize", "--flux", "0.25")
    res = json.loads(out)["results"]
    assert abs(res["sigma2_star"] - res["sigma2_star_tanh_form"]) <= 1e-9 * res["sigma2_star"]
    assert res["dM_star_dflux"] > 0 and res["dsigma2_star_dflux"] < 0
    code, _, err = run(capsys, "maximize", "--flux", "0.5")
    assert code == 2 and "no maximiser" in err and "sup = 2π" in err


def test_maximize_table(capsys):
    code, out, _ = run(capsys, "maximize", "--grid", "9", "--format", "csv")
    assert code == 0 and len(rows(out)) == 9


def test_json_precision(capsys):
    _, out, _ = run(capsys, "maximize", "--flux", "0.25")
    doc = json.loads(out)
    from magsteklov.maximizer import m_star

    assert doc["results"]["M_star"] == m_star(0.25)


def test_alpha(capsys):
    _, out, _ = run(capsys, "alpha", "--alpha", "1")
    res = json.loads(out)["results"]
    assert abs(res["T"] - m0()) < 1e-10 and abs(res["M"] - m0()) < 1e-10
    _, out, _ = run(capsys, "alpha", "--modulus", repr(m0()))
    assert abs(json.loads(out)["results"]["alpha"] - 1.0) < 1e-9
    assert run(capsys, "alpha", "--alpha", "0")[0] == 2
    assert run(capsys, "alpha")[0] == 2


def test_fraction_arguments(capsys):
    code, out, _ = run(capsys, "planar", "--r0", "1/4", "--flux", "1/2")
    res = json.loads(out)["results"]
    assert code == 0 and res["sigma_minus"] == pytest.approx(1 / 6)


def test_slab_and_embedding(capsys):
    code, out, _ = run(capsys, "slab", "--flux", "0.3", "--grid", "16")
    g = [float(r["g"]) for r in rows(out)]
    assert code == 0 and len(g) == 17 and all(a > b for a, b in zip(g, g[1:]))
    code, out, _ = run(capsys, "embedding", "--flux", "0.25", "--grid", "5", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["residuals"]["sphere"] <= 1e-10


def test_csv_digits(capsys):
    _, out, _ = run(capsys, "spectrum", "--modulus", "1.5", "--flux", "0.3", "--count", "3")
    val = rows(out)[0]["sigma"]
    assert len(val.replace(".", "").lstrip("0")) <= 12


def test_deterministic(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    main(["maximize", "--flux", "0.3", "--out", str(a)])
    main(["maximize", "--flux", "0.3", "--out", str(b)])
    assert a.read_bytes() == b.read_bytes()


def test_figures(tmp_path, capsys):
    assert main(["figure", "fig1", "--out", str(tmp_path), "--grid", "50"]) == 0
    assert main(["figure", "fig2", "--out", str(tmp_path), "--grid", "41"]) == 0
    assert main(["figure", "fig3", "--out", str(tmp_path), "--grid", "41"]) == 0
    for name in ("fig1.svg", "fig2.svg", "fig3.svg", "fig1_nu0.csv", "fig1_nu1_3.csv", "fig1_nu1_2.csv", "fig2.csv", "fig3.csv"):
        assert (tmp_path / name).stat().st_size > 0
    assert (tmp_path / "fig1.svg").read_text().lstrip().startswith("<?xml")
    half = rows((tmp_path / "fig1_nu1_2.csv").read_text())
    assert all(r["sigma_1_0"] == r["sigma_1_1"] for r in half)
    prof = [r for r in rows((tmp_path / "fig2.csv").read_text()) if float(r["alpha"]) == 1.0]
    assert max(abs(float(r["rho"]) - math.cosh(float(r["t"]))) for r in prof) <= 1e-9
    alphas = {float(r["alpha"]) for r in rows((tmp_path / "fig2.csv").read_text())}
    assert {1.0, -1.0} <= alphas


def test_figure_svg_deterministic(tmp_path, capsys):
    main(["figure", "fig3", "--out", str(tmp_path / "a"), "--grid", "21"])
    main(["figure", "fig3", "--out", str(tmp_path / "b"), "--grid", "21"])
    assert (tmp_path / "a" / "fig3.svg").read_bytes() == (tmp_path / "b" / "fig3.svg").read_bytes()


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "monotonicity")
    doc = json.loads(out)
    assert code == 0 and doc["passed"] and all(c["passed"] for c in doc["checks"])


def test_verify_failure_exit(capsys, monkeypatch):
    from magsteklov import verify

    monkeypatch.setattr(verify, "run", lambda suite: [verify.Check("x", "forced", 1.0, 0.0)])
    assert run(capsys, "verify")[0] == 1


def test_env_tolerance(capsys, monkeypatch):
    monkeypatch.setenv("STEKLOV_TOL", "1e-4")
    _, out, _ = run(capsys, "maximize", "--flux", "0.25")
    loose = json.loads(out)["results"]["M_star"]
    monkeypatch.delenv("STEKLOV_TOL")
    _, out, _ = run(capsys, "maximize", "--flux", "0.25")
    tight = json.loads(out)["results"]["M_star"]
    assert abs(loose - tight) < 1e-3

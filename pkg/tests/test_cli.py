import csv
import io
import json
import math

import pytest

from hilbertpoints.cli import CLASSIFY_COLUMNS, NORMS_COLUMNS, RunConfig, UsageError, main
from hilbertpoints.poly import phi_alpha


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def parse_csv(text):
    lines = text.splitlines()
    assert lines[0].startswith("# schema_version=1 ")
    return list(csv.DictReader(io.StringIO("\n".join(l for l in lines if not l.startswith("#")))))


def test_run_config_validation():
    assert RunConfig().validate().alphas()[:3] == [0.0, 0.05, 0.1]
    assert len(RunConfig().alphas()) == 51
    for bad in (RunConfig(n_grid=4), RunConfig(alpha_step=0.0), RunConfig(alpha_max=17.0), RunConfig(alpha_min=-1.0), RunConfig(tol=0.0)):
        with pytest.raises(UsageError):
            bad.validate()


def test_usage_errors_exit_2(capsys):
    for argv in (["alpha0", "--tol", "0"], ["norms", "--alpha-step", "0"], ["norms", "--n-grid", "4"], ["factorize", "--alpha", "-1"], ["hankel"], []):
        with pytest.raises(SystemExit) as exc:
            main(argv)
        assert exc.value.code == 2, argv
    capsys.readouterr()


def test_norms_rows(capsys):
    code, out, _ = run(capsys, "norms", "--alpha-min", "0", "--alpha-max", "2.5", "--alpha-step", "0.5")
    assert code == 0
    rows = {float(r["alpha"]): r for r in parse_csv(out)}
    assert list(parse_csv(out)[0]) == NORMS_COLUMNS
    r = rows[0.0]
    assert float(r["h2"]) == pytest.approx(math.sqrt(2), abs=1e-15)
    assert float(r["w_closed"]) == pytest.approx(math.sqrt(2), abs=1e-15)
    assert float(r["h1_quad"]) == pytest.approx(4 / math.pi, abs=1e-4)
    r = rows[2.0]
    assert float(r["h2"]) == pytest.approx(math.sqrt(6), abs=1e-15)
    assert float(r["w_closed"]) == 2.0
    assert float(r["h1_closed"]) == pytest.approx(2.0, abs=1e-15)
    assert float(r["h1_quad"]) == pytest.approx(2.0, abs=1e-4)
    r = rows[2.5]
    assert (float(r["w_closed"]), float(r["h1_closed"])) == (2.5, 2.5)
    assert float(r["h2"]) == pytest.approx(math.sqrt(8.25), abs=1e-15)
    assert float(r["w_lower"]) == pytest.approx(2.5, abs=1e-3)


def test_norms_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for path in (a, b):
        assert main(["norms", "--alpha-step", "0.25", "--out", str(path)]) == 0
    assert a.read_bytes() == b.read_bytes()
    capsys.readouterr()


def test_norms_json(capsys):
    code, out, _ = run(capsys, "norms", "--alpha-max", "0.1", "--json")
    body = json.loads(out)
    assert code == 0 and body["schema_version"] == 1
    assert body["columns"] == NORMS_COLUMNS and len(body["rows"]) == 3


def test_norms_unwritable_path(tmp_path, capsys):
    with pytest.raises(SystemExit) as exc:
        main(["norms", "--alpha-max", "0", "--out", str(tmp_path / "missing" / "x.csv")])
    assert exc.value.code == 2
    assert "cannot write" in capsys.readouterr().err


def test_classify_default_table(capsys):
    code, out, _ = run(capsys, "classify")
    rows = parse_csv(out)
    assert code == 0 and list(rows[0]) == CLASSIFY_COLUMNS
    flags = [tuple(r[k] for k in ("na_h1", "hp_h1", "na_w", "hp_w")) for r in rows]
    f, t = "false", "true"
    assert flags == [
        (f, t, t, t),
        (f, f, t, t),
        (f, f, t, t),
        (f, f, f, f),
        (f, f, f, f),
        (f, t, f, f),
        (f, f, f, f),
        (f, f, f, t),
        (f, f, f, f),
    ]


@pytest.mark.parametrize("alpha, expected", [("0.5", ("false", "false", "true", "true")), ("3", ("false",) * 4)])
def test_classify_single(capsys, alpha, expected):
    code, out, _ = run(capsys, "classify", "--alpha", alpha)
    (row,) = parse_csv(out)
    assert code == 0
    assert tuple(row[k] for k in ("na_h1", "hp_h1", "na_w", "hp_w")) == expected


def test_classify_poly_inconclusive(tmp_path, capsys):
    # 2 phi_2 is not recognised as a family member, so the W norm comes from
    # the optimizer bracket, which cannot certify the isolated point
    path = tmp_path / "p.txt"
    path.write_text("2 0 2 0\n1 1 4 0\n0 2 2 0\n")
    code, out, err = run(capsys, "classify", "--poly", str(path))
    assert code == 3
    assert parse_csv(out)[0]["hp_w"] == "inconclusive"


def test_classify_json(capsys):
    code, out, _ = run(capsys, "classify", "--alpha", "1", "--json")
    body = json.loads(out)
    assert body["reports"][0]["hp_w"] is False and body["reports"][0]["inconclusive"] is False


def test_alpha0(capsys):
    code, out, _ = run(capsys, "alpha0")
    assert code == 0 and out.startswith("1.62420")
    _, out12, _ = run(capsys, "alpha0", "--tol", "1e-12")
    _, again, _ = run(capsys, "alpha0", "--tol", "1e-12")
    assert out12 == again and out12.startswith("1.62420")
    _, out, _ = run(capsys, "alpha0", "--json")
    assert json.loads(out)["alpha0"] == pytest.approx(1.62420, abs=1e-5)


def test_hankel_phi_1(tmp_path, capsys):
    path = tmp_path / "phi1.txt"
    path.write_text(phi_alpha(1.0).to_text())
    out_path = tmp_path / "h.csv"
    code, out, _ = run(capsys, "hankel", str(path), "--out", str(out_path))
    assert code == 0 and out == "spectral_norm 2.0\n"
    lines = out_path.read_text().splitlines()
    body = list(csv.reader(l for l in lines if not l.startswith("#")))
    matrix = [[float(v) for v in row[1:]] for row in body[1:]]
    assert matrix == [
        [0, 0, 0, 1, 1, 1],
        [0, 1, 1, 0, 0, 0],
        [0, 1, 1, 0, 0, 0],
        [1, 0, 0, 0, 0, 0],
        [1, 0, 0, 0, 0, 0],
        [1, 0, 0, 0, 0, 0],
    ]
    assert lines[-1] == "# spectral_norm=2.0"


def test_hankel_small_inputs(monkeypatch, capsys):
    monkeypatch.setattr("sys.stdin", io.StringIO("0 0 1\n"))
    code, out, _ = run(capsys, "hankel", "-", "--dimension", "2", "--json")
    body = json.loads(out)
    assert code == 0 and body["real"] == [[1.0]] and body["spectral_norm"] == 1.0
    monkeypatch.setattr("sys.stdin", io.StringIO("1 0 1 0\n0 1 1 0\n"))
    code, out, _ = run(capsys, "hankel", "-", "--json")
    assert json.loads(out)["spectral_norm"] == pytest.approx(math.sqrt(2), abs=1e-12)


def test_hankel_bad_file(tmp_path, capsys):
    path = tmp_path / "bad.txt"
    path.write_text("1 zz 1 0\n")
    with pytest.raises(SystemExit) as exc:
        main(["hankel", str(path)])
    assert exc.value.code == 2
    capsys.readouterr()


def test_factorize_alpha_1(capsys):
    code, out, _ = run(capsys, "factorize", "--alpha", "1")
    assert code == 0
    assert out.count("\npair\n") == 2
    assert "cost 1.666666666666666" in out and "verification PASS" in out


def test_factorize_alpha_0_3(capsys):
    code, out, _ = run(capsys, "factorize", "--alpha", "0.3", "--json")
    body = json.loads(out)
    assert code == 0 and len(body["pairs"]) == 1
    assert body["cost"] == pytest.approx(math.sqrt(2.09), abs=1e-14)


def test_factorize_alpha_3(capsys):
    code, out, _ = run(capsys, "factorize", "--alpha", "3", "--json")
    body = json.loads(out)
    (pair,) = body["pairs"]
    z2_coeff = lambda terms: dict((tuple(k), v[0]) for k, v in terms)[(0, 1)]
    lam = sorted([z2_coeff(pair["g"]), z2_coeff(pair["h"])])
    assert lam == pytest.approx([(3 - math.sqrt(5)) / 2, (3 + math.sqrt(5)) / 2], abs=1e-14)
    assert body["cost"] == pytest.approx(3.0, abs=1e-14) and body["verification"] == "PASS"


def test_check_h1(capsys):
    code, out, _ = run(capsys, "check-h1", "--phi-alpha", "0")
    lines = dict(l.split(" ", 1) for l in out.splitlines())
    assert code == 0 and lines["hp_h1"] == "true" and lines["na_h1"] == "false"
    code, out, _ = run(capsys, "check-h1", "--phi-alpha", "1", "--json")
    assert code == 0 and json.loads(out)["hp_h1"] is False


def test_check_h1_ambiguous(capsys):
    # residual of phi_alpha near alpha_0 straddles a tolerance set to it
    code, out, _ = run(capsys, "check-h1", "--phi-alpha", "1.65", "--json")
    residual = json.loads(out)["residual"]
    code, _, err = run(capsys, "check-h1", "--phi-alpha", "1.65", "--tol", repr(residual))
    assert code == 3 and "too close" in err

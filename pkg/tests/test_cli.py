import csv
import io
import json
import subprocess
import sys

from qhahn.cli import decimal_text, run
from qhahn.exactfield import QuadElement, parse_scalar


def test_coeffs_csv():
    code, out = run(["coeffs", "--preset", "constant", "--q", "4", "--kmax", "5", "--format", "csv"])
    assert code == 0
    meta = [l for l in out.splitlines() if l.startswith("#")]
    assert "# t=-9/4" in meta
    rows = list(csv.DictReader(io.StringIO("\n".join(l for l in out.splitlines() if not l.startswith("#")))))
    assert [r["alpha"] for r in rows[1:]] == ["1"] * 5


def test_coeffs_json_round_trip():
    code, out = run(["coeffs", "--preset", "y1-cube-zero", "--q", "2", "--kmax", "3", "--format", "json"])
    assert code == 0
    doc = json.loads(out)
    assert doc["header"]["sigma0_sq"] == "-7"
    sig = [parse_scalar(r["sigma"], adjoin=-7) for r in doc["rows"]]
    assert sig[0] == QuadElement(0, 1, -7)
    assert "rt" in doc["rows"][1]["sigma"]


def test_manual_parameters_and_negative_values():
    code, out = run(["coeffs", "--q", "4", "--y", "1", "--d", "-1,2,-2", "--alpha1", "1", "--kmax", "3"])
    assert code == 0 and "-9/4" in out


def test_missing_parameter_is_usage_error():
    code, _ = run(["coeffs", "--q", "4", "--y", "1", "--d", "-1,2,-2"])
    assert code == 2


def test_bad_parameter_exits_2():
    code, out = run(["coeffs", "--q", "1", "--y", "1", "--d", "1,2,3", "--alpha1", "1"])
    assert code == 2


def test_verify():
    code, out = run(["verify", "--preset", "constant", "--q", "4", "--order", "12"])
    assert code == 0 and "residual" in out
    code, _ = run(["verify", "--preset", "constant", "--q", "4", "--order", "12", "--t-override", "-1"])
    assert code == 1


def test_verify_askey_wilson_instance_falls_back_to_starred():
    # y = abcd/q^2, d = (bc/q, cd/q, bd/q) with a..d = 1/2, 1/3, 1/5, 1/7, q = 2
    base = ["verify", "--q", "2", "--y", "1/840", "--d", "1/30,1/70,1/42", "--alpha1", "1", "--order", "8"]
    assert run(base + ["--variant", "starred"])[0] == 0
    # d1 q = y: Z(q) = 0 in the standard forms, so the starred forms are used
    code, out = run(["verify", "--q", "2", "--y", "6", "--d", "3,6,4", "--alpha1", "1", "--order", "8"])
    assert code == 0 and "variant: starred" in out


def test_classify():
    assert "(6,6), not in catalog" in run(["classify", "--preset", "y1-generic-66", "--q", "2"])[1]
    assert "(0,0)" in run(["classify", "--preset", "constant", "--q", "4"])[1]
    code, out = run(["classify", "--q", "2", "--y", "1/840", "--d", "1/30,1/70,1/42", "--alpha1", "1"])
    assert code == 0 and "(8,8)" in out


def test_poly():
    out = run(["poly", "--q", "4", "--y", "1", "--d", "-1,2,-2", "--alpha1", "1", "--kmax", "2"])[1]
    assert "x^2 - x - 1" in out
    out = run(["poly", "--preset", "discrete-q-hermite", "--q", "2", "--kmax", "3"])[1]
    assert "x^3 - 7*x" in out
    doc = json.loads(run(["poly", "--preset", "discrete-q-hermite", "--q", "2", "--kmax", "2", "--format", "json"])[1])
    assert doc["rows"][2]["coeffs"] == ["-1", "0", "1"]


def test_reverse():
    code, out = run(["reverse", "--preset", "y1-cube-zero", "--q", "2", "--kmax", "4", "--format", "json"])
    doc = json.loads(out)
    assert code == 0 and doc["header"]["alpha_invariant"] is True
    for k, row in enumerate(doc["rows"]):
        s, r = parse_scalar(row["sigma"], adjoin=-7), parse_scalar(row["sigma_rev"], adjoin=-7)
        assert s == 2 ** (k + 1) * r
    doc = json.loads(run(["reverse", "--q", "3", "--y", "2", "--d", "5,7,-4", "--alpha1", "1",
                          "--kmax", "3", "--format", "json"])[1])
    assert doc["header"]["alpha_invariant"] is False


def test_families_list():
    code, out = run(["families", "--list"])
    assert code == 0 and "discrete-q-hermite" in out and "constant" in out


def test_decimals():
    assert decimal_text(parse_scalar("1/3"), 4) == "0.3333"
    assert decimal_text(QuadElement(0, 1, -7), 3) == "0.000+2.646i"
    code, out = run(["coeffs", "--preset", "sigma-zero-44", "--q", "2", "--kmax", "2", "--decimals", "5"])
    assert "2.61290" in out


def test_console_entry_point():
    r = subprocess.run([sys.executable, "-m", "qhahn.cli", "classify", "--preset", "constant", "--q", "4"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and "(0,0)" in r.stdout

import io
import json
import subprocess
import sys

import numpy as np
import pytest

from saruma.cli import main
from saruma.fit import FitOptions, FitTemplate, Free, Pinned, fit
from saruma.series import read_csv

AR_SPEC = {"s": 4, "U": [[1, -1]], "U_s": [[1, 1]], "phi": [1, -0.5]}


def run(argv, stdin_text=""):
    out, err = io.StringIO(), io.StringIO()
    old = sys.stdout, sys.stderr
    sys.stdout, sys.stderr = out, err
    try:
        try:
            code = main(argv, io.StringIO(stdin_text))
        except SystemExit as exc:
            code = exc.code
    finally:
        sys.stdout, sys.stderr = old
    return code, out.getvalue(), err.getvalue()


def ok(argv, stdin_text=""):
    code, out, err = run(argv, stdin_text)
    assert code == 0, err
    return json.loads(out)


def test_factor():
    doc = ok(["factor", "--pacf", '{"values": [1, -0.5], "unit_pins": [1]}'])
    assert doc["unit_factors"] == [[1.0, -1.0]]
    assert doc["stationary"] == [1.0, -0.5]
    assert doc["d_plus_trace"] == [1]


def test_pacf2ar():
    assert ok(["pacf2ar", "--pacf", '{"values": [0.5, -1], "unit_pins": [2]}']) == [1.0, -1.0, 1.0]


def test_ar2pacf_round_trip():
    doc = ok(["ar2pacf", "--poly", "[1, -0.9, 0.2]"])
    assert ok(["pacf2ar", "--pacf", json.dumps(doc)]) == pytest.approx([1, -0.9, 0.2], abs=1e-15)


def test_ar2pacf_unit_is_domain_error():
    code, out, err = run(["ar2pacf", "--poly", "[1, -1]"])
    assert code == 1 and out == ""
    assert json.loads(err)["error"] == "UnitPacfEncountered"


def test_count_roots():
    doc = ok(["count-roots", "--pacf", '{"values": [2.0, 0.5]}'])
    assert doc["nu_inside"] == 1


def test_stdin_and_file(tmp_path):
    pacf = '{"values": [0.3, 1], "unit_pins": [2]}'
    f = tmp_path / "b.json"
    f.write_text(pacf)
    a = ok(["pacf2ar", "--pacf", pacf])
    assert ok(["pacf2ar"], pacf) == a
    assert ok(["pacf2ar", "--pacf", str(f)]) == a


def test_expand_and_validate():
    doc = ok(["expand", "--spec", json.dumps(AR_SPEC)])
    assert doc["nonstationary_degree"] == 5
    assert ok(["validate", "--spec", json.dumps(AR_SPEC)]) == {"valid": True, "violations": []}
    bad = ok(["validate", "--spec", '{"phi": [1, -2]}'])
    assert not bad["valid"] and bad["violations"][0]["component"] == "phi"


def test_expand_invalid_exits_1():
    code, _, err = run(["expand", "--spec", '{"phi": [1, -2]}'])
    assert code == 1
    assert json.loads(err)["error"] == "InvalidSpec"


def test_usage_errors_exit_2():
    assert run([])[0] == 2
    assert run(["pacf2ar", "--pacf", "{not json"])[0] == 2
    assert run(["simulate", "--spec", "{}"])[0] == 2  # missing -T
    assert run(["fit", "--template", '{"ar": [{"kind": "free", "value": 0}]}'])[0] == 2


def test_simulate_residuals_pipeline(tmp_path):
    y_path, e_path = tmp_path / "y.csv", tmp_path / "e.csv"
    ok_code = run(["simulate", "--spec", json.dumps(AR_SPEC), "-T", "200", "--seed", "3",
                   "--out", str(y_path), "--innovations-out", str(e_path)])[0]
    assert ok_code == 0
    doc = ok(["residuals", "--spec", json.dumps(AR_SPEC), "--data", str(y_path)])
    e = np.asarray(read_csv(e_path).values)
    got = np.asarray(doc["residuals"])
    # a pure AR filter from zero presample returns the innovations exactly after p values
    assert np.max(np.abs(got - e[-len(got):])) <= 1e-6


def test_simulate_deterministic():
    argv = ["simulate", "--spec", json.dumps(AR_SPEC), "-T", "50", "--seed", "9"]
    assert ok(argv) == ok(argv)
    assert ok(argv) != ok(argv[:-1] + ["10"])


def test_fit(tmp_path):
    y_path = tmp_path / "y.csv"
    spec = {"U": [[1, -1]], "phi": [1, -0.5]}
    run(["simulate", "--spec", json.dumps(spec), "-T", "400", "--out", str(y_path)])
    template = {"ar": [{"kind": "pinned", "value": 1}, {"kind": "free", "value": 0}]}
    doc = ok(["fit", "--template", json.dumps(template), "--data", str(y_path), "--multistarts", "2"])
    assert doc["spec"]["phi"][1] == pytest.approx(-0.5, abs=0.15)
    assert doc["converged"]
    direct = fit(
        FitTemplate(read_csv(y_path), ar=(Pinned(1), Free(0.0))), FitOptions(multistarts=2)
    )
    assert doc["sum_sq"] == direct.sum_sq


def test_console_script_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "saruma.cli", "pacf2ar", "--pacf", '{"values": [0.5]}'],
        capture_output=True, text=True,
    )
    assert res.returncode == 0
    assert json.loads(res.stdout) == [1.0, -0.5]

import csv
import io
import json
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ghilbert.cli import (
    SWEEP_BOUNDS_HEADER,
    ResultRecord,
    VectorFileError,
    dumps,
    parse_int_range,
    parse_vector_file,
    run,
)


def invoke(*argv):
    out = io.StringIO()
    code = run(list(argv), stdout=out)
    return code, out.getvalue()


def payload(*argv):
    code, text = invoke(*argv)
    return code, json.loads(text)


def test_entry_command():
    code, rec = payload("entry", "--m", "2", "--n", "3", "--a", "1", "--idx", "1,1")
    assert code == 0 and rec["result"]["value"] == 1.0


def test_bounds_command():
    code, rec = payload("bounds", "--m", "2", "--n", "3", "--a", "1")
    res = rec["result"]
    assert code == 0
    assert res["h_bound"] == 3.0 and res["z_bound"] == 3.0
    assert res["observed"] == pytest.approx(1.4083189, abs=1e-7)
    assert res["holds"] is True


def test_bounds_negative_shift_and_odd_order():
    code, rec = payload("bounds", "--m", "3", "--n", "3", "--a", "-0.5")
    assert code == 0
    names = {r["bound_name"]: r for r in rec["result"]["reports"]}
    assert names["H_bound_Ma"]["holds"] is None
    assert names["Z_bound_Ma"]["holds"] is True


def test_sweep_csv():
    code, text = invoke("sweep", "--m", "2,4", "--n", "2..8", "--a", "0.5,1,2", "--mode", "bounds",
                        "--format", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(text)))
    assert list(rows[0]) == SWEEP_BOUNDS_HEADER
    assert len(rows) == 2 * 7 * 3
    assert all(r["holds"] == "true" for r in rows)
    assert [(r["m"], r["n"], r["a"]) for r in rows[:2]] == [("2", "2", "0.5"), ("2", "2", "1.0")]


def test_sweep_pdcheck():
    code, text = invoke("sweep", "--m", "2,3,4", "--n", "2,3", "--a", "1,0.5", "--mode", "pdcheck",
                        "--trials", "50", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(text)))
    assert code == 0 and len(rows) == 8
    assert {r["regime"] for r in rows} == {"theorem-backed", "evidence-only"}


@pytest.mark.parametrize("argv", [
    ("entry", "--m", "2", "--n", "3", "--a", "-1", "--idx", "1,1"),
    ("bounds", "--m", "2", "--n", "3", "--a", "0"),
    ("sweep", "--m", "2", "--n", "2", "--a", "0.5,-3"),
])
def test_invalid_shift_exit_2(argv, capsys):
    code, _ = invoke(*argv)
    assert code == 2
    assert "R \\ Z^-" in capsys.readouterr().err


def test_apply_inline_and_file(tmp_path):
    code, rec = payload("apply", "--m", "2", "--n", "2", "--a", "1", "--x", "1,1")
    assert code == 0 and rec["result"]["scalar"] == pytest.approx(7 / 3)
    f = tmp_path / "x.txt"
    f.write_text("# test vector\n1\n\n-1\n")
    for method in ("fast", "naive", "quadrature"):
        code, rec = payload("apply", "--m", "2", "--n", "2", "--a", "1", "--x-file", str(f), "--method", method)
        assert code == 0 and rec["result"]["scalar"] == pytest.approx(1 / 3, rel=1e-14)


def test_apply_bad_inputs_exit_3(tmp_path):
    assert invoke("apply", "--m", "2", "--n", "2", "--a", "1", "--x-file", str(tmp_path / "none"))[0] == 3
    bad = tmp_path / "bad.txt"
    bad.write_text("1\nabc\n")
    assert invoke("apply", "--m", "2", "--n", "2", "--a", "1", "--x-file", str(bad))[0] == 3
    assert invoke("apply", "--m", "2", "--n", "3", "--a", "1", "--x", "1,2")[0] == 3


@pytest.mark.parametrize("text, expected", [("1\n0\n2\n", [1, 0, 2]), ("1, -0.5", [1, -0.5]),
                                            ("# c\n\n3 # trailing\n", [3])])
def test_parse_vector_file(tmp_path, text, expected):
    f = tmp_path / "v.txt"
    f.write_text(text)
    assert parse_vector_file(str(f)).tolist() == expected


def test_parse_vector_file_error_line(tmp_path):
    f = tmp_path / "v.txt"
    f.write_text("1\nabc\n")
    with pytest.raises(VectorFileError, match="line 2"):
        parse_vector_file(str(f))


def test_parse_int_range():
    assert parse_int_range("2..5") == [2, 3, 4, 5]
    assert parse_int_range("2,4") == [2, 4]
    with pytest.raises(ValueError):
        parse_int_range("5..2")


def strip_time(text):
    rec = json.loads(text)
    rec.pop("wall_time")
    return rec


@pytest.mark.parametrize("argv", [
    ("zspec", "--m", "4", "--n", "3", "--a", "-0.5", "--seed", "9"),
    ("pdcheck", "--m", "4", "--n", "3", "--a", "1", "--trials", "100", "--seed", "4"),
    ("opnorm", "--m", "2", "--a", "1", "--samples", "20", "--N", "500", "--seed", "4"),
])
def test_json_determinism(argv):
    a, b = invoke(*argv)[1], invoke(*argv)[1]
    assert strip_time(a) == strip_time(b)
    assert a.split('"wall_time"')[0] == b.split('"wall_time"')[0]


def test_round_trip():
    _, text = invoke("hspec", "--m", "4", "--n", "3", "--a", "0.7")
    rec = ResultRecord.from_json(text)
    assert ResultRecord.from_json(rec.to_json()) == rec
    assert rec.to_json() == text.strip()


@given(st.lists(st.floats(allow_nan=False), max_size=6), st.booleans(), st.text(max_size=5))
def test_dumps_lossless(values, flag, label):
    obj = {"values": values, "flag": flag, "label": label, "n": len(values), "none": None}
    assert json.loads(dumps(obj)) == obj


def test_seventeen_digits():
    assert dumps(0.1) == "0.10000000000000001"
    assert dumps(1.0) == "1.0"


def test_config_file_and_override(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# defaults\nm = 2\nn = 3\na = 1\n")
    code, rec = payload("entry", "--config", str(cfg), "--idx", "2,2")
    assert code == 0 and rec["result"]["value"] == pytest.approx(1 / 3)
    code, rec = payload("entry", "--config", str(cfg), "--a", "2", "--idx", "1,1")
    assert rec["result"]["value"] == 0.5


def test_seed_env(monkeypatch):
    monkeypatch.setenv("GHILBERT_SEED", "77")
    _, rec = payload("zspec", "--m", "2", "--n", "2", "--a", "1")
    assert rec["config"]["seed"] == 77


def test_human_format():
    code, text = invoke("bounds", "--m", "2", "--n", "3", "--a", "1", "--format", "human")
    assert code == 0
    assert "observed 1.40832 <= bound 3" in text and "holds" in text


def test_entry_warning_channel():
    _, rec = payload("entry", "--m", "2", "--n", "3", "--a", "-1.99999999999999", "--idx", "2,2")
    assert rec["warnings"] and math.isfinite(rec["result"]["value"])


def test_opnorm_command():
    code, rec = payload("opnorm", "--m", "2", "--a", "1", "--mode", "F", "--samples", "30", "--N", "2000")
    res = rec["result"]
    assert code == 0 and res["holds"]
    assert res["estimate"] <= res["estimate_upper"]
    assert res["estimate"] <= res["bound"] + 1e-9

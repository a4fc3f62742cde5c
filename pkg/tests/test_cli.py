import json

import numpy as np
import pytest

from conftest import BAER_LINES, BAER_POINTS
from tripres.cli import resolve, run
from tripres.correspondence import format_correspondence, read_correspondence, swap
from tripres.incidence import read_plane

H = "@hughes9.plane"
L = "@hughes9.lambda"
T = "@hughes9.tri"
BAER = ["--points", ",".join(map(str, BAER_POINTS)), "--lines", ",".join(map(str, BAER_LINES))]


def call(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def kv(text):
    return dict(line.split(": ", 1) for line in text.splitlines() if ": " in line)


def test_verify_presentation(capsys):
    code, out, _ = call(capsys, "verify-presentation", H, L, T)
    assert code == 0
    assert kv(out) == {"verdict": "FULL", "triples": "910", "orbits": "298", "loops": "16"}


def test_verify_presentation_invalid(capsys, tmp_path):
    (tmp_path / "bad.tri").write_text("0 0 0\n")
    code, out, _ = call(capsys, "verify-presentation", H, L, str(tmp_path / "bad.tri"))
    assert code == 1 and kv(out)["verdict"] == "INVALID"


def test_verify_plane(capsys, tmp_path):
    assert call(capsys, "verify-plane", H)[0] == 0
    bad = tmp_path / "bad.plane"
    bad.write_text("1 2 4\n" * 7)
    code, out, _ = call(capsys, "verify-plane", str(bad))
    assert code == 1 and kv(out)["valid"] == "False"


def test_abelianize(capsys):
    code, out, _ = call(capsys, "abelianize", T, "--generators", "91")
    assert code == 0 and kv(out)["invariant_factors"] == "6" and kv(out)["free_rank"] == "0"


def test_score_json_round_trip(capsys, tmp_path):
    lam = tmp_path / "r.lambda"
    lam.write_text(" ".join(map(str, np.random.default_rng(0).permutation(91))))
    code, out, _ = call(capsys, "score", H, str(lam), "--json")
    data = json.loads(out)
    assert code == 0 and set(data) == {"status", "score", "uncovered", "edges"}
    assert 380 < data["score"] < 600
    again = json.loads(call(capsys, "score", H, str(lam), "--json")[1])
    assert again == data


def test_parity(capsys):
    assert call(capsys, "check-parity", H, T, "--lines", "3,11,62,64,87")[0] == 0
    code, out, _ = call(capsys, "check-parity", H, T, "--lines", "3")
    assert code == 1 and "counterexample" in kv(out)


def test_restrict_baer(capsys, tmp_path):
    args = ["restrict-baer", H, L, T, *BAER, "--out-tri", str(tmp_path / "b.tri"),
            "--out-lambda", str(tmp_path / "b.lambda"), "--out-plane", str(tmp_path / "b.plane")]
    code, out, _ = call(capsys, *args)
    assert code == 0 and kv(out)["triples"] == "52"
    assert len((tmp_path / "b.tri").read_text().splitlines()) == 20
    code, out, _ = call(capsys, "verify-presentation", str(tmp_path / "b.plane"),
                        str(tmp_path / "b.lambda"), str(tmp_path / "b.tri"))
    assert code == 0 and kv(out)["verdict"] == "FULL" and kv(out)["triples"] == "52"


def test_restrict_baer_not_preserved(capsys, tmp_path):
    args = ["restrict-baer", H, L, T, "--points", "0,1,2", "--lines", "0,1,2"]
    code, _, err = call(capsys, *args)
    assert code == 1 and "invalid" in err


def test_census_limit(capsys):
    code, out, _ = call(capsys, "census-correlations", H, "--limit", "50", "--json")
    data = json.loads(out)
    assert code == 0 and data["correlations"] == 50
    assert all(r["exact"] == 910 - 15 * r["a"] - r["b"] for r in data["table"])


def test_search(capsys, tmp_path):
    start = tmp_path / "s.lambda"
    plane = read_plane(resolve(H))
    start.write_text(format_correspondence(swap(read_correspondence(resolve(L), plane), 0, 1)))
    trace = tmp_path / "t.csv"
    code, out, _ = call(capsys, "search", H, "--start", str(start), "--trace", str(trace),
                        "--out-tri", str(tmp_path / "f.tri"), "--checkpoint", str(tmp_path / "c"))
    assert code == 0 and kv(out)["outcome"] == "FOUND"
    assert trace.read_text().splitlines() == ["step,score", "0,864", "1,910"]
    assert len((tmp_path / "f.tri").read_text().splitlines()) == 314


def test_stats_random(capsys):
    code, out, _ = call(capsys, "stats-random", H, "--samples", "100", "--seed", "1")
    r = kv(out)
    assert code == 0 and r["samples"] == "100" and 460 < float(r["mean"]) < 515
    assert r["mean"] == f"{float(r['mean']):.2f}"
    assert call(capsys, "stats-random", H, "--samples", "100", "--seed", "1")[1] == out


def test_scab_check(capsys):
    code, out, _ = call(capsys, "scab-check", H, L, T, "--skip-iso")
    r = kv(out)
    assert code == 0 and r["chambers"] == "910"
    assert all(r[f"residue_{v}"] == "generalized-triangle" for v in (1, 2, 3))


def test_export_gap(capsys, tmp_path):
    code, out, _ = call(capsys, "export-gap", T, "--generators", "91")
    assert code == 0 and out.startswith("F := FreeGroup(") and out.count("*a[") == 2 * 314
    code, out, _ = call(capsys, "export-gap", T, "--format", "generic", "--out", str(tmp_path / "g"))
    assert code == 0 and kv(out)["relators"] == "314"


@pytest.mark.parametrize("argv", [["bogus"], ["score"], ["abelianize", T, "--nope"], []])
def test_usage_errors(capsys, argv):
    assert call(capsys, *argv)[0] == 2


def test_missing_file(capsys):
    code, _, err = call(capsys, "score", "missing.plane", L)
    assert code == 2 and "error" in err

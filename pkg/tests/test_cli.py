import json
import shutil
import subprocess

import pytest

from quasi3.cli import main
from quasi3.poly import Polynomial, parse_poly

GOLDEN_A1_M1 = "x1^4 - 2*x1^3*x2 - 2*x1^3*x3 + 6*x1^2*x2*x3"


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_basis_json_round_trip(capsys):
    code, out, _ = run_cli(capsys, "basis", "--m", "1", "--format", "json")
    assert code == 0
    obj = json.loads(out)
    assert obj["passed"] is True
    assert obj["degrees"] == {
        "1": 0, "A1": 4, "s12(A1)": 4, "A2": 5, "s12(A2)": 5, "Delta^(2m+1)": 9,
    }
    a1 = Polynomial.from_json_obj(obj["elements"]["A1"])
    assert a1 == parse_poly(GOLDEN_A1_M1)
    assert obj["null_vectors"]["A1"]["coefficients"] == ["1", "-2", "6"]
    assert obj["null_vectors"]["A2"]["coefficients"] == ["1", "-5/3", "10/3"]


def test_basis_latex_golden(capsys):
    code, out, _ = run_cli(capsys, "basis", "--m", "1", "--format", "latex")
    assert code == 0
    lines = out.splitlines()
    assert "A1: x_1^4 - 2x_1^3(x_2 + x_3) + 6x_1^2(x_2x_3)" in lines


def test_basis_text_mentions_verdicts(capsys):
    code, out, _ = run_cli(capsys, "basis", "--m", "0", "--verify", "full")
    assert code == 0
    assert "degrees ok: True" in out
    assert "quasiinvariance ok: True" in out
    assert "independence coinvariant_det_nonzero: True" in out


def test_basis_deterministic_output(capsys):
    _, first, _ = run_cli(capsys, "basis", "--m", "2", "--format", "json")
    _, second, _ = run_cli(capsys, "basis", "--m", "2", "--format", "json")
    assert first == second


def test_check_accepts_quasiinvariant(tmp_path, capsys):
    target = tmp_path / "poly.txt"
    target.write_text(GOLDEN_A1_M1 + "\n")
    code, out, _ = run_cli(capsys, "check", "--m", "1", "--poly", str(target))
    assert code == 0
    assert "is quasiinvariant" in out


def test_check_accepts_json_file(tmp_path, capsys):
    target = tmp_path / "poly.json"
    target.write_text(json.dumps(parse_poly(GOLDEN_A1_M1).to_json_obj()))
    code, out, _ = run_cli(
        capsys, "check", "--m", "1", "--poly", str(target), "--format", "json"
    )
    assert code == 0
    obj = json.loads(out)
    assert obj["is_quasiinvariant"] is True
    assert len(obj["checks"]) == 3


def test_check_rejects_non_quasiinvariant(tmp_path, capsys):
    target = tmp_path / "poly.txt"
    target.write_text("x1^2 + x2\n")
    code, out, _ = run_cli(capsys, "check", "--m", "1", "--poly", str(target))
    assert code == 1
    assert "is NOT quasiinvariant" in out


def test_check_missing_file_is_usage_error(capsys):
    code, _, err = run_cli(capsys, "check", "--m", "1", "--poly", "/nonexistent")
    assert code == 2
    assert "error" in err


def test_check_malformed_file_is_usage_error(tmp_path, capsys):
    target = tmp_path / "poly.txt"
    target.write_text("x1 ++ x2\n")
    code, _, err = run_cli(capsys, "check", "--m", "1", "--poly", str(target))
    assert code == 2
    assert "error" in err


def test_system_text_and_json(capsys):
    code, out, _ = run_cli(capsys, "system", "--m", "1", "--d", "4")
    assert code == 0
    assert "full system m=1 d=4 shape (2, 3)" in out
    code, out, _ = run_cli(
        capsys, "system", "--m", "1", "--d", "4", "--restrict-bm", "--format", "json"
    )
    assert code == 0
    obj = json.loads(out)
    assert obj["entries"] == [["4", "5"], ["0", "3"]]
    assert obj["rows"] == [[0, 1], [1, 1]]
    assert obj["cols"] == [[0, 0], [1, 0]]


def test_system_rejects_bad_degree(capsys):
    code, _, err = run_cli(capsys, "system", "--m", "1", "--d", "6")
    assert code == 2
    assert "degree must be" in err


def test_blocks_json(capsys):
    code, out, _ = run_cli(
        capsys, "blocks", "--m", "3", "--d", "10", "--format", "json"
    )
    assert code == 0
    obj = json.loads(out)
    assert obj["determinants"] == ["252", "2352", "112", "35"]
    assert len(obj["blocks"]) == 4


def test_det_agreement(capsys):
    code, out, _ = run_cli(capsys, "det", "--m", "3", "--d", "10", "--format", "json")
    assert code == 0
    obj = json.loads(out)
    assert obj["det"] == "2323399680"
    assert obj["agree"] is True and obj["nonzero"] is True


def test_dims_agreement(capsys):
    code, out, _ = run_cli(capsys, "dims", "--m", "1", "--max-degree", "9", "--format", "json")
    assert code == 0
    obj = json.loads(out)
    assert obj["series"] == [1, 1, 2, 3, 6, 9, 13, 18, 24, 31]
    assert obj["agree"] is True


def test_paths_count_golden(capsys):
    code, out, _ = run_cli(
        capsys, "paths", "count", "--start", "2,2", "--end", "0,6",
        "--barrier", "9", "--format", "json",
    )
    assert code == 0
    obj = json.loads(out)
    assert obj["count"] == "15"
    assert obj["backend"] in ("compiled", "pure-python")


def test_paths_count_bad_point_is_usage_error(capsys):
    code, _, err = run_cli(capsys, "paths", "count", "--start", "2", "--end", "0,6")
    assert code == 2
    assert "error" in err


def test_identity_thm1_golden(capsys):
    code, out, _ = run_cli(
        capsys, "identity", "thm1", "--params", "10,-1,7,-1,-2,2"
    )
    assert code == 0
    assert "matrix det: 2352" in out
    assert "prefactor: 1176" in out
    assert "family count: 2" in out
    assert "identity holds: True" in out


def test_identity_thm1_json(capsys):
    code, out, _ = run_cli(
        capsys, "identity", "thm1", "--params", "10,-1,7,-1,-2,2",
        "--format", "json",
    )
    assert code == 0
    obj = json.loads(out)
    assert obj["det"] == "2352"
    assert obj["prefactor"] == "1176"
    assert obj["family_count"] == "2"
    assert obj["equal"] is True
    assert obj["starts"] == [[1, 1], [0, 0]]
    assert obj["ends"] == [[0, 6], [0, 4]]
    assert obj["barrier"] == 9


def test_identity_thm2_inapplicable_mismatch_exits_one(capsys):
    # barrier strictly between the endpoint sums: the closed form is not
    # valid there, and the honest comparison reports the mismatch
    code, out, _ = run_cli(
        capsys, "identity", "thm2", "--params", "5,1,1,1,4,1", "--format", "json"
    )
    assert code == 1
    obj = json.loads(out)
    assert obj["applicable"] is False
    assert obj["equal"] is False


def test_identity_bad_params_is_usage_error(capsys):
    code, _, err = run_cli(capsys, "identity", "thm1", "--params", "1,2,3")
    assert code == 2
    assert "needs 6" in err


def test_identity_sweep_deterministic(capsys):
    code, first, _ = run_cli(capsys, "identity", "sweep", "--seed", "3", "--trials", "3")
    assert code == 0
    code, second, _ = run_cli(capsys, "identity", "sweep", "--seed", "3", "--trials", "3")
    assert code == 0
    assert first == second
    obj = json.loads(first)
    assert obj["failed"] == 0
    assert obj["instances"] >= 3
    for entry in obj["results"]:
        assert entry["kind"] in ("thm1", "thm2")


def test_identities_json(capsys):
    code, out, _ = run_cli(
        capsys, "identities", "--samples", "4", "--seed", "9", "--format", "json"
    )
    assert code == 0
    obj = json.loads(out)
    assert obj["passed"] is True
    assert obj["sample_failures"] == []
    assert len(obj["element_level"]) == 8


def test_selftest_subset(capsys):
    code, out, _ = run_cli(capsys, "selftest", "--only", "1,2")
    assert code == 0
    lines = [l for l in out.splitlines() if l.startswith("[")]
    assert len(lines) == 2
    assert all(l.startswith("[PASS] criterion") for l in lines)
    assert "2/2 criteria passed" in out


def test_console_script_installed():
    exe = shutil.which("quasi3")
    if exe is None:
        pytest.skip("console script not on PATH")
    proc = subprocess.run(
        [exe, "det", "--m", "1", "--d", "4", "--format", "json"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["agree"] is True

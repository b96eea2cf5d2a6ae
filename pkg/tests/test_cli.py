import json
import subprocess
import sys

import pytest

from postlie.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--format", "json")
    return code, json.loads(out)


def test_analyze_f23(capsys):
    code, data = run_json(capsys, "analyze", "catalog:f23")
    r = data["result"]
    assert code == 0 and r["predicates"]["is_nilpotent"]
    assert r["lower_central_series"] == [5, 3, 2, 0] and r["dim_der"] == 10


def test_analyze_sl2_and_r2(capsys):
    _, data = run_json(capsys, "analyze", "catalog:sl2")
    r = data["result"]
    assert r["predicates"]["is_semisimple"] and r["predicates"]["is_perfect"] and r["dim_H1"] == 0
    _, data = run_json(capsys, "analyze", "catalog:r2")
    assert data["result"]["predicates"]["is_solvable"]
    assert not data["result"]["predicates"]["is_unimodular"]


def test_analyze_show_basis(capsys):
    _, data = run_json(capsys, "analyze", "catalog:heisenberg", "--show-basis")
    assert len(data["result"]["derivation_basis"]) == 6


def test_analyze_rejects_jacobi_failure(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"dim": 3, "brackets": [{"i": 1, "j": 2, "coeffs": {"1": 1}},
                                                      {"i": 1, "j": 3, "coeffs": {"2": 1}}]}))
    code, _, err = run(capsys, "analyze", str(bad))
    assert code == 2 and "Jacobi" in err


def test_malformed_file(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "analyze", str(bad))[0] == 2
    assert run(capsys, "analyze", str(tmp_path / "missing.json"))[0] == 2


def test_algebra_file_round_trip(tmp_path, capsys):
    code, out, _ = run(capsys, "catalog", "r3_jordan")
    path = tmp_path / "g.json"
    path.write_text(out)
    _, data = run_json(capsys, "analyze", str(path))
    assert data["result"]["dim_der"] == run_json(capsys, "analyze", "catalog:r3_jordan")[1]["result"]["dim_der"]


def test_verify_product_examples(tmp_path, capsys):
    code, data = run_json(capsys, "verify-product", "catalog:heisenberg", "--product", "ref:C3")
    assert code == 0 and data["result"]["pass"]
    code, data = run_json(capsys, "verify-product", "catalog:h1_plus_C", "--product", "ref:h1_plus_C")
    assert code == 0 and data["result"]["all_left_nilpotent"] is False
    assert data["result"]["non_nilpotent_witness"] == ["1", "0", "0", "0"]
    bad = tmp_path / "p.json"
    bad.write_text(json.dumps({"dim": 2, "products": [{"i": 1, "j": 1, "coeffs": {"2": 1}}]}))
    code, data = run_json(capsys, "verify-product", "catalog:r2", "--product", str(bad))
    assert code == 1 and not data["result"]["pass"] and data["result"]["axioms"]["6"]


def test_verify_product_text_shows_warning(capsys):
    code, out, _ = run(capsys, "verify-product", "catalog:h1_plus_C", "--product", "ref:h1_plus_C")
    assert "not nilpotent" in out and "L(e1) =" in out


def test_verify_product_pair_mode(capsys):
    code, data = run_json(capsys, "verify-product", "catalog:sl3_chevalley", "catalog:sl3_chevalley",
                          "--product", "ref:sl3_example")
    assert code == 1  # the example needs its own g


def test_verify_product_dimension_mismatch(capsys):
    code, _, err = run(capsys, "verify-product", "catalog:r2", "--product", "ref:C3")
    assert code == 2 and "dimension" in err


def test_solve_exit_codes(capsys):
    code, data = run_json(capsys, "solve", "--pair", "catalog:heisenberg", "catalog:sl2")
    assert code == 3 and data["result"]["status"] == "empty"
    assert data["result"]["certificate"]["contains_one"]
    code, data = run_json(capsys, "solve", "--commutative", "catalog:r2")
    assert code == 0 and data["result"]["status"] == "families"


def test_solve_witness_with_param_between_algebras(capsys):
    code, data = run_json(capsys, "solve", "--pair", "catalog:r3_diag", "--param", "1", "catalog:sl2")
    assert code == 0 and data["result"]["status"] == "witness"


def test_solve_inconclusive_on_tiny_budget(capsys):
    code, data = run_json(capsys, "solve", "--pair", "catalog:heisenberg", "catalog:sl2", "--budget", "5")
    assert code == 4 and data["result"]["status"] == "inconclusive"


def test_budget_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("POSTLIE_BUDGET", "5")
    code, data = run_json(capsys, "solve", "--pair", "catalog:heisenberg", "catalog:sl2")
    assert code == 4 and data["budget"]["limit"] == 5


def test_flag_validation(capsys):
    assert run(capsys, "solve", "--commutative", "catalog:r2", "--split-depth", "13")[0] == 2
    assert run(capsys, "solve", "--commutative", "catalog:r2", "--budget", "0")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "solve", "catalog:r2")[0] == 2


def test_classify_r2(capsys):
    code, data = run_json(capsys, "classify", "catalog:r2")
    assert code == 0 and [c["name"] for c in data["result"]["classes"]] == ["A1", "A2", "A3"]


def test_classify_unsupported(capsys):
    assert run(capsys, "classify", "catalog:sl2")[0] == 2


def test_derivations_command(capsys):
    code, data = run_json(capsys, "derivations", "catalog:f23")
    assert code == 0 and data["result"]["dim_der"] == 10 and len(data["result"]["basis"]) == 10


def test_catalog_listing(capsys):
    code, out, _ = run(capsys, "catalog")
    assert code == 0 and "heisenberg" in out.split()


def test_paper_suite_list(capsys):
    code, out, _ = run(capsys, "paper-suite", "--list")
    assert code == 0 and len(out.strip().splitlines()) == 17


def test_paper_suite_budget_marks_budget_not_fail(capsys):
    code, data = run_json(capsys, "paper-suite", "--budget", "10", "--only", "11", "--only", "12")
    statuses = {c["id"]: c["status"] for c in data["criteria"]}
    assert statuses == {11: "budget", 12: "budget"} and code == 0


def test_structured_output_is_byte_identical(capsys):
    args = ("solve", "--pair", "catalog:r3_diag(1)", "catalog:sl2", "--format", "json")
    main(list(args))
    first = capsys.readouterr().out
    main(list(args))
    assert capsys.readouterr().out == first


def test_console_script_entry():
    out = subprocess.run([sys.executable, "-m", "postlie.cli", "catalog"], capture_output=True, text=True)
    assert out.returncode == 0 and "sl2" in out.stdout

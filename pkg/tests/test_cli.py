"""Command-line behavior: exit codes, output formats, determinism."""

import json

import pytest

import connlab.cli as cli
from connlab.spectra import CSV_COLUMNS


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_verify_passes_on_cycle(capsys):
    code, out, err = run(capsys, "verify", "cycle:4", "--field", "5")
    assert code == 0
    assert "8/8 checks pass" in out


def test_verify_figure8(capsys):
    code, out, _ = run(capsys, "verify", "figure8")
    assert code == 0
    assert "7/7 checks pass" in out


def test_verify_json_shape(capsys):
    code, out, _ = run(capsys, "--format", "json", "verify", "star:4", "--field", "2")
    assert code == 0
    doc = json.loads(out)
    assert doc["ok"] is True
    assert [c["name"] for c in doc["checks"]] == [
        "unimodularity",
        "hydrogen",
        "green-star",
        "energy",
        "traces",
        "reciprocity",
        "supersymmetry",
        "hydrogen-mod-p",
    ]


def test_bounds_csv_header_and_values(capsys):
    code, out, _ = run(capsys, "--format", "csv", "bounds", "path:3")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == ",".join(CSV_COLUMNS)
    row = lines[1].split(",")
    assert row[0] == "P3"
    assert abs(float(row[3]) - 3.75) < 1e-9
    assert abs(float(row[5]) - 3.43141) < 1e-3


def test_bounds_reports_bad_graph_inline(capsys):
    code, out, err = run(capsys, "bounds", "cycle:4", "nosuchfamily:3")
    assert code == 1
    assert "C4" in out
    assert "nosuchfamily" in err


def test_spectrum_pairing(capsys):
    code, out, _ = run(capsys, "--format", "json", "spectrum", "cycle:4", "--operator", "L")
    assert code == 0
    doc = json.loads(out)
    assert doc["matrix_dim"] == 8
    assert len(doc["eigenvalues"]) == 8
    assert doc["inversion_pairing_residual"] < 1e-9


def test_walk_jsonl_round_trip(capsys):
    code, out, _ = run(capsys, "walk", "cycle:4", "--steps", "4", "--reverse")
    assert code == 0
    lines = [json.loads(line) for line in out.strip().splitlines()]
    assert [rec["n"] for rec in lines] == list(range(-4, 5))
    assert lines[4]["state"] == [1, 0, 0, 0, 0, 0, 0, 0]
    assert all(isinstance(x, int) for rec in lines for x in rec["state"])


def test_automaton_round_trip(capsys):
    code, out, _ = run(capsys, "automaton", "figure8", "--field", "7", "--steps", "5", "--reverse")
    assert code == 0
    lines = [json.loads(line) for line in out.strip().splitlines()]
    assert len(lines) == 11
    assert all(0 <= x < 7 for rec in lines for x in rec["state"])


def test_newton_tree_converges(capsys):
    code, out, _ = run(capsys, "newton", "path:4", "--eps", "0.01")
    assert code == 0
    doc = json.loads(out)
    assert doc["converged"] is True
    assert doc["residual"] < 1e-10
    assert doc["support_violation_max"] > 0.5  # inverse leaks off the pattern


def test_newton_cycle_reports_singular(capsys):
    code, out, _ = run(capsys, "newton", "cycle:5", "--eps", "0.01")
    assert code == 1
    doc = json.loads(out)
    assert doc["converged"] is False
    assert doc["singular_jacobian"] is True
    assert doc["sigma_min"] < 1e-10


def test_product_json(capsys):
    code, out, _ = run(capsys, "product", "complete:2", "complete:2")
    assert code == 0
    doc = json.loads(out)
    assert doc["hydrogen_residual_max"] == 4
    assert doc["energy"] == 1


def test_product_accepts_files(tmp_path, capsys):
    from connlab.graphs import from_spec, save_graph

    p = tmp_path / "k2.txt"
    save_graph(from_spec("complete:2"), str(p))
    code, out, _ = run(capsys, "product", str(p), str(p))
    assert code == 0
    assert json.loads(out)["multiplicativity_error"] < 1e-8


def test_unnamed_file_graph_gets_basename(tmp_path, capsys):
    p = tmp_path / "tri.txt"
    p.write_text("0 1\n1 2\n2 0\n")
    code, out, _ = run(capsys, "verify", str(p))
    assert code == 0
    assert out.strip().endswith("tri.txt: 7/7 checks pass")


def test_dump_appends_matrix(capsys):
    code, out, _ = run(capsys, "verify", "complete:2", "--dump", "L")
    assert code == 0
    assert "1 0 1" in out.replace("  ", " ")


def test_usage_error_exits_2():
    with pytest.raises(SystemExit) as excinfo:
        cli.main(["bounds"])  # missing graph argument
    assert excinfo.value.code == 2
    with pytest.raises(SystemExit) as excinfo:
        cli.main(["--format", "yaml", "verify", "cycle:3"])
    assert excinfo.value.code == 2


def test_seed_flag_position_irrelevant(capsys):
    code1, out1, _ = run(capsys, "--seed", "5", "newton", "path:4")
    code2, out2, _ = run(capsys, "newton", "path:4", "--seed", "5")
    assert code1 == code2 == 0
    assert out1 == out2


def test_byte_identical_output(capsys):
    args = ("--format", "csv", "bounds", "gnm:16,24:seed=3", "cycle:6")
    _, out1, _ = run(capsys, *args)
    _, out2, _ = run(capsys, *args)
    assert out1 == out2


def test_report_small_and_deterministic(capsys, monkeypatch):
    # shrink the random sections so the full pipeline runs in seconds; the
    # full-size run is exercised by the acceptance suite
    real_sparse = cli._report_sparse_random
    monkeypatch.setattr(cli, "RANDOM_ANALOGUES", (("tiny random", "gnm:10,12", 2),))
    monkeypatch.setattr(cli, "_report_sparse_random", lambda seed: real_sparse(seed, trials=8))
    code1, out1, _ = run(capsys, "--format", "json", "report", "--seed", "11")
    code2, out2, _ = run(capsys, "report", "--seed", "11", "--format", "json")
    assert code1 == code2
    assert out1 == out2
    doc = json.loads(out1)
    assert doc["deterministic_ok"] is True
    assert doc["sparse_random_experiment"]["trials"] == 8
    families = [s["family"] for s in doc["deterministic"]]
    assert "cycle" in families and "petersen" in families
    assert doc["random_analogues"][0]["rows"][0]["name"] == "gnm:10,12:seed=11"

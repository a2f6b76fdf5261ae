import csv
import json


from conftest import MATRIX
from rkhs_action.cli import ExperimentConfig, main
from rkhs_action.conjectures import COUNTEREXAMPLE, ConjectureReport
from rkhs_action.decomposition import InvariantSubspace
from rkhs_action.perm_group import named_group
from rkhs_action.relation import EquivalencePartition


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def families(keys):
    return [arg for key in keys for arg in ("--family", key)]


def test_decompose_cyclic6(tmp_path, capsys):
    code, out, _ = run(capsys, "decompose", "--family", "cyclic:6", "--seed", "1",
                       "--out", str(tmp_path))
    assert code == 0
    data = json.loads((tmp_path / "subspaces.json").read_text())
    subspaces = data["instances"][0]["subspaces"]
    assert [s["dim"] for s in subspaces] == [1] * 6
    assert all(s["irreducible"] for s in subspaces)
    assert all(row["passed"] for s in subspaces for row in s["invariance"].values())


def test_decompose_s3_round_trips(tmp_path, capsys):
    code, _, _ = run(capsys, "decompose", "--family", "symmetric:3", "--seed", "1",
                     "--out", str(tmp_path))
    assert code == 0
    data = json.loads((tmp_path / "subspaces.json").read_text())
    g = named_group("symmetric:3")
    parts = [InvariantSubspace.from_json(s, g) for s in data["instances"][0]["subspaces"]]
    assert sorted(h.dim for h in parts) == [1, 2]
    for h in parts:
        h.verify()


def test_bad_family_exits_2(tmp_path, capsys):
    code, _, err = run(capsys, "decompose", "--family", "cyclc:4", "--seed", "1",
                       "--out", str(tmp_path))
    assert code == 2 and "cyclc" in err


def test_missing_seed_exits_2(tmp_path, capsys):
    code, _, err = run(capsys, "verify", "--family", "cyclic:4", "--out", str(tmp_path))
    assert code == 2 and "seed" in err


def test_k_above_cap_exits_2(tmp_path, capsys):
    code, _, _ = run(capsys, "verify", "--family", "cyclic:4", "--seed", "1",
                     "--policy", "all-sums-up-to-k", "--k", "5", "--out", str(tmp_path))
    assert code == 2


def test_verify_matrix_exits_0(tmp_path, capsys):
    code, out, _ = run(capsys, "verify", *families(MATRIX), "--seed", "1",
                       "--out", str(tmp_path))
    assert code == 0, out
    assert "FAIL" not in out
    reports = sorted(tmp_path.glob("verify_*.json"))
    assert len(reports) == 4 + 6 + 3 + 2 + 2 + 4
    for path in reports:
        report = json.loads(path.read_text())
        assert report["passed"]
        EquivalencePartition.from_json(report["partition"])


def test_verify_corrupted_exits_1(tmp_path, capsys):
    code, out, _ = run(capsys, "verify", "--family", "cyclic:4", "--seed", "1",
                       "--corrupt-projection", "0,1,1e-3", "--out", str(tmp_path))
    assert code == 1
    assert "violated: " in out and "projection-hermitian" in out


def test_verify_empty_exits_0(tmp_path, capsys):
    code, out, _ = run(capsys, "verify", "--seed", "1", "--out", str(tmp_path))
    assert code == 0
    assert out.strip().splitlines()[0].startswith("instance/subspace")
    assert len(out.strip().splitlines()) == 1


def test_conjectures_c4_sums(tmp_path, capsys):
    code, _, _ = run(capsys, "conjectures", "--family", "cyclic:4", "--policy",
                     "all-sums-up-to-k", "--k", "2", "--seed", "7", "--out", str(tmp_path))
    assert code == 0
    lines = (tmp_path / "conjectures.jsonl").read_text().splitlines()
    reports = [ConjectureReport.from_json(json.loads(line)) for line in lines]
    assert len(reports) == 3 * (4 + 6)
    assert any(r.status == COUNTEREXAMPLE for r in reports)
    with open(tmp_path / "summary.csv", newline="") as fh:
        rows = list(csv.DictReader(fh))
    assert [(r["instance"], r["conjecture"], r["status"], int(r["witness_count"]))
            for r in rows] == [(r.instance_id, r.conjecture_id, r.status, len(r.witnesses))
                               for r in reports]


def test_conjectures_byte_identical(tmp_path, capsys):
    outs = []
    for name in ("a", "b"):
        code, _, _ = run(capsys, "conjectures", *families(MATRIX[:3]), "--policy",
                         "all-sums-up-to-k", "--k", "2", "--seed", "3",
                         "--out", str(tmp_path / name))
        assert code == 0
        outs.append([(tmp_path / name / f).read_bytes()
                     for f in ("conjectures.jsonl", "summary.csv")])
    assert outs[0] == outs[1]


def test_conjectures_empty(tmp_path, capsys):
    code, _, _ = run(capsys, "conjectures", "--seed", "1", "--out", str(tmp_path))
    assert code == 0
    assert (tmp_path / "conjectures.jsonl").read_text() == ""
    assert (tmp_path / "summary.csv").read_text() == "instance,conjecture,status,witness_count\n"


def test_config_file_and_generator_file(tmp_path, capsys):
    gens = tmp_path / "c5.txt"
    gens.write_text("5\n[1,2,3,4,0]\n")
    cfg = {"instances": [f"file:{gens}"], "subspace_policy": "full-space", "seed": 4,
           "tolerances": {"relation": 1e-6}, "output_dir": str(tmp_path / "out")}
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(cfg))
    assert ExperimentConfig.from_json(cfg).tol.relation == 1e-6
    code, out, _ = run(capsys, "verify", "--config", str(path))
    assert code == 0
    report = json.loads((tmp_path / "out" / "verify_0_0.json").read_text())
    assert report["dim"] == 5 and report["label"].endswith("/full")


def test_generators_flag(tmp_path, capsys):
    gens = tmp_path / "c3.txt"
    gens.write_text("3\n[1,2,0]\n")
    code, out, _ = run(capsys, "decompose", "--generators", str(gens), "--seed", "1",
                       "--out", str(tmp_path))
    assert code == 0
    data = json.loads((tmp_path / "subspaces.json").read_text())
    assert [s["dim"] for s in data["instances"][0]["subspaces"]] == [1, 1, 1]


def test_tolerance_override_reaches_checks(tmp_path, capsys):
    # loosening every check that sees the corruption lets it through
    loose = [arg for name in ("identity", "structure", "reproduce", "orthogonal-parts",
                              "membership", "trace", "lam", "scalar", "rank")
             for arg in (f"--tol-{name}", "1e-1")]
    code, out, _ = run(capsys, "verify", "--family", "cyclic:4", "--seed", "1",
                       "--policy", "full-space", "--corrupt-projection", "0,1,1e-3",
                       *loose, "--out", str(tmp_path))
    assert code == 0, out


def test_unknown_tolerance_in_config(tmp_path, capsys):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps({"instances": ["cyclic:4"], "seed": 1,
                                "tolerances": {"nope": 1.0}, "output_dir": str(tmp_path)}))
    code, _, err = run(capsys, "verify", "--config", str(path))
    assert code == 2 and "nope" in err

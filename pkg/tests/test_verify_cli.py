import json
from fractions import Fraction

import pytest

from wrlat import lnm, load_lattice, run_suite, staircase
from wrlat.cli import main, parse_cos_sq_threshold

F = Fraction


def run_cli(*argv):
    return main(list(argv))


# --- verify suite ------------------------------------------------------------


def test_suite_all_green():
    report = run_suite("all", max_n=6)
    assert report.passed
    assert report.counts["fail"] == 0
    ids = [c.check_id for c in report.checks]
    assert ids == sorted(ids)


def test_suite_filtering():
    constructions = run_suite("constructions", max_n=5)
    assert all(c.check_id.startswith("constructions.") for c in constructions.checks)
    coh = run_suite("coherence", max_n=5)
    assert all(c.check_id.startswith("coherence.") for c in coh.checks)


def test_suite_jobs_deterministic():
    serial = run_suite("constructions", max_n=5, jobs=1)
    parallel = run_suite("constructions", max_n=5, jobs=4)
    assert serial.to_json_dict() == parallel.to_json_dict()


def test_suite_rejects_unknown():
    with pytest.raises(ValueError):
        run_suite("no-such-suite")


def test_check_ids_unique():
    report = run_suite("all", max_n=5)
    ids = [c.check_id for c in report.checks]
    assert len(ids) == len(set(ids))
    assert all(c.claim for c in report.checks)


# --- CLI ----------------------------------------------------------------------


def test_cli_construct_lnm(tmp_path):
    out = tmp_path / "l42.json"
    assert run_cli("construct", "lnm", "--n", "4", "--m", "2", "--out", str(out)) == 0
    assert load_lattice(str(out)).gram == lnm(4, 2).gram


def test_cli_construct_staircase(tmp_path):
    out = tmp_path / "st5.json"
    assert run_cli("construct", "staircase", "--n", "5", "--out", str(out)) == 0
    assert load_lattice(str(out)).gram == staircase(5).gram


def test_cli_construct_planar(tmp_path):
    out = tmp_path / "planar.json"
    code = run_cli("construct", "planar", "--epsilon", "1/10", "--d", "2", "--out", str(out))
    assert code == 0
    data = json.loads(out.read_text())
    assert (data["p"], data["q"], data["r"]) == (1, 17, 12)
    assert data["coherence"] == "1/17"


def test_cli_planar_alias(tmp_path, capsys):
    assert run_cli("planar", "--epsilon", "1/20", "--d", "3") == 0
    data = json.loads(capsys.readouterr().out)
    assert (data["m"], data["n"], data["q"]) == (7, 4, 97)


def test_cli_construct_remaining_families(tmp_path):
    from wrlat import an_root, integer_lattice, coxeter_barnes, hybrid, k3_prime

    for argv, want in [
        (("z", "--n", "3"), integer_lattice(3)),
        (("an", "--n", "4"), an_root(4)),
        (("hybrid", "--n", "5", "--m", "1"), hybrid(5, 1)),
        (("k3prime",), k3_prime()),
        (("coxeter-barnes", "--n", "7", "--r", "4"), coxeter_barnes(7, 4)),
    ]:
        out = tmp_path / "lat.json"
        assert run_cli("construct", *argv, "--out", str(out)) == 0
        assert load_lattice(str(out)).gram == want.gram


def test_cli_construct_bad_params():
    assert run_cli("construct", "lnm", "--n", "3", "--m", "2") == 2
    assert run_cli("construct", "lnm", "--n", "3") == 2
    assert run_cli("construct", "coxeter-barnes", "--n", "7", "--r", "3") == 2


def test_cli_analyze_hex(tmp_path, capsys):
    f = tmp_path / "hex.json"
    run_cli("construct", "hex", "--out", str(f))
    assert run_cli("analyze", str(f)) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["coherence"] == "1/2"
    assert abs(report["delta"] - 0.9069) < 1e-4
    assert report["eutaxy_class"] == "StronglyEutactic"
    assert report["perfect"] is True
    assert report["in_strict"] is True


def test_cli_analyze_k3prime(tmp_path, capsys):
    f = tmp_path / "k3.json"
    run_cli("construct", "k3prime", "--out", str(f))
    assert run_cli("analyze", str(f)) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["kissing_number"] == 10
    assert report["eutaxy_class"] == "Eutactic"
    assert report["perfect"] is False
    assert report["in_weak"] is True and report["in_strict"] is False


def test_cli_analyze_frame4(tmp_path, capsys):
    f = tmp_path / "a4s.json"
    run_cli("construct", "anstar", "--n", "4", "--out", str(f))
    assert run_cli("analyze", str(f)) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["coherence"] == "1/4"
    assert report["kissing_number"] == 10
    assert report["in_weak"] is False


def test_cli_analyze_missing_file():
    assert run_cli("analyze", "/nonexistent/lattice.json") == 2


def test_cli_analyze_deterministic_bytes(tmp_path):
    f = tmp_path / "st4.json"
    run_cli("construct", "staircase", "--n", "4", "--out", str(f))
    r1, r2 = tmp_path / "r1.json", tmp_path / "r2.json"
    run_cli("analyze", str(f), "--out", str(r1))
    run_cli("analyze", str(f), "--out", str(r2))
    assert r1.read_bytes() == r2.read_bytes()


def test_cli_construct_deterministic_bytes(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run_cli("construct", "hybrid", "--n", "6", "--m", "1", "--out", str(a))
    run_cli("construct", "hybrid", "--n", "6", "--m", "1", "--out", str(b))
    assert a.read_bytes() == b.read_bytes()


def test_cli_verify_subsuite(tmp_path):
    out = tmp_path / "report.json"
    code = run_cli("verify", "--suite", "coherence", "--max-n", "5", "--out", str(out))
    assert code == 0
    data = json.loads(out.read_text())
    assert data["summary"]["fail"] == 0
    assert all(c["status"] == "pass" for c in data["checks"])
    assert all({"id", "claim", "status", "details"} == set(c) for c in data["checks"])


def test_cli_perturb_block(tmp_path, capsys):
    f = tmp_path / "l31.json"
    run_cli("construct", "lnm", "--n", "3", "--m", "1", "--out", str(f))
    assert run_cli("perturb", str(f), "--block", "0", "--cos", "1/3") == 0
    data = json.loads(capsys.readouterr().out)
    assert data["density_ratio_sq"] == "27/32"
    assert data["still_nearly_orthogonal"] is True


def test_cli_perturb_general(tmp_path, capsys):
    f = tmp_path / "l31.json"
    run_cli("construct", "lnm", "--n", "3", "--m", "1", "--out", str(f))
    assert run_cli("perturb", str(f), "--mode", "nu", "--target", "1/3") == 0
    data = json.loads(capsys.readouterr().out)
    assert data["value_after"] == "1/3"


def test_cli_perturb_rejected_precondition(tmp_path, capsys):
    f = tmp_path / "st3.json"
    run_cli("construct", "staircase", "--n", "3", "--out", str(f))
    assert run_cli("perturb", str(f), "--mode", "nu", "--target", "1/4") == 1
    data = json.loads(capsys.readouterr().out)
    assert "error" in data


def test_cli_perturb_requires_one_mode(tmp_path):
    f = tmp_path / "hex.json"
    run_cli("construct", "hex", "--out", str(f))
    assert run_cli("perturb", str(f)) == 2
    assert run_cli("perturb", str(f), "--block", "0", "--mode", "nu") == 2


def test_cli_rejects_float_rationals(tmp_path):
    f = tmp_path / "hex.json"
    run_cli("construct", "hex", "--out", str(f))
    assert run_cli("perturb", str(f), "--block", "0", "--cos", "0.25") == 2


def test_cli_analyze_strict_flags_guard_trips(tmp_path, capsys):
    f = tmp_path / "z10.json"
    run_cli("construct", "z", "--n", "10", "--out", str(f))
    # rank 10 exceeds a lowered enumeration guard: fields null, warnings set
    assert run_cli("analyze", str(f), "--max-dim", "6") == 0
    report = json.loads(capsys.readouterr().out)
    assert report["kissing_number"] is None and report["warnings"]
    assert run_cli("analyze", str(f), "--max-dim", "6", "--strict") == 1


def test_threshold_sugar():
    assert parse_cos_sq_threshold("pi/3") == F(1, 4)
    assert parse_cos_sq_threshold("1/9") == F(1, 9)
    with pytest.raises(ValueError):
        parse_cos_sq_threshold("pi/4")


def test_cli_sorted_keys(tmp_path, capsys):
    f = tmp_path / "hex.json"
    run_cli("construct", "hex", "--out", str(f))
    run_cli("analyze", str(f))
    out = capsys.readouterr().out
    data = json.loads(out)
    assert out == json.dumps(data, sort_keys=True, indent=2) + "\n"

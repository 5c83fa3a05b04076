import json

import pytest

from conftest import REF_CYCLE
from sbham import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--format", "json")
    return code, json.loads(out)


def test_verify_ok(capsys):
    code, doc = run_json(capsys, "verify", "-m", "3", "-n", "3", "--cycle", REF_CYCLE)
    assert code == 0 and doc["valid"] is True
    assert doc["choice_set"] == ["01", "02", "10", "12"]
    assert doc["kind"] == "verify" and doc["schema_version"] == 1


def test_verify_corrupted(capsys):
    bad = REF_CYCLE[:5] + "2" + REF_CYCLE[6:]
    code, doc = run_json(capsys, "verify", "-m", "3", "-n", "3", "--cycle", bad)
    assert code == 1 and doc["valid"] is False
    assert doc["reason"] in {"repeated_window", "invalid_step"}


def test_verify_bad_character(capsys):
    code, doc = run_json(capsys, "verify", "-m", "3", "-n", "3", "--cycle", REF_CYCLE[:-1] + "3")
    assert code == 1 and doc["valid"] is False


def test_verify_file_and_save(capsys, tmp_path):
    (tmp_path / "c.txt").write_text(REF_CYCLE + "\n")
    out = tmp_path / "s.json"
    code, _, _ = run(capsys, "verify", "-m", "3", "-n", "3", "--cycle-file", str(tmp_path / "c.txt"),
                     "--save-choice-set", str(out))
    assert code == 0
    assert json.loads(out.read_text())["suffixes"] == ["01", "02", "10", "12"]


def test_verdict(capsys):
    code, doc = run_json(capsys, "verdict", "-m", "3", "-n", "4")
    assert code == 0 and doc["obstructed"] is True and doc["reason_code"] == "sign_clash"
    code, doc = run_json(capsys, "verdict", "-m", "7", "-n", "4")
    assert doc["obstructed"] is True


def test_verdict_table(capsys, tmp_path):
    png = tmp_path / "v.png"
    code, out, _ = run(capsys, "verdict", "--table", "--m-max", "12", "--n-max", "8",
                       "--format", "csv", "--plot", str(png))
    assert code == 0 and png.stat().st_size > 0
    lines = out.strip().splitlines()
    assert len(lines) == 1 + 11 * 8


def test_verdict_needs_params(capsys):
    code, _, err = run(capsys, "verdict", "-m", "3")
    assert code == 2 and "needs" in err


def test_necklace(capsys):
    code, doc = run_json(capsys, "necklace", "-m", "3", "-n", "4", "--bruteforce")
    assert doc["necklaces"] == 24 == doc["bruteforce"] and doc["half_witness"] == 12


def test_burnside_csv_and_plot(capsys, tmp_path):
    png = tmp_path / "b.png"
    code, out, _ = run(capsys, "burnside", "-m", "3", "-n", "4", "--format", "csv", "--plot", str(png))
    assert code == 0 and out.splitlines()[1] == "0,81,9" and png.exists()


def test_sign_with_choice_set(capsys, tmp_path):
    path = tmp_path / "s.json"
    path.write_text(json.dumps({"m": 3, "n": 2, "suffixes": ["0"]}))
    code, doc = run_json(capsys, "sign", "-m", "3", "-n", "2", "--choice-set", str(path))
    assert doc["sgn_sigma"] == -1 and doc["sgn_adjust"] == 1 and doc["sgn_successor"] == -1
    assert doc["cycle_type"] == {"1": 1, "8": 1} and doc["hamiltonian"] is False


def test_sign_params_mismatch(capsys, tmp_path):
    path = tmp_path / "s.json"
    path.write_text(json.dumps({"m": 3, "n": 2, "suffixes": ["0"]}))
    code, _, _ = run(capsys, "sign", "-m", "3", "-n", "3", "--choice-set", str(path))
    assert code == 3


def test_enumerate(capsys, tmp_path):
    png = tmp_path / "e.png"
    code, doc = run_json(capsys, "enumerate", "-m", "3", "-n", "3", "--workers", "1",
                         "--track-signs", "--collect", "2", "--plot", str(png))
    assert code == 0 and doc["hamiltonian_count"] == 12 and doc["tested"] == 64
    assert doc["sign_histogram"] == {"+1": 64, "-1": 0}
    assert len(doc["hamiltonian"]) == 2 and png.exists()


def test_enumerate_no_timing_is_byte_stable(capsys):
    args = ["enumerate", "-m", "3", "-n", "3", "--workers", "1", "--no-timing", "--format", "json"]
    _, a, _ = run(capsys, *args)
    _, b, _ = run(capsys, *args)
    assert a == b and "elapsed" not in a


def test_enumerate_require_cycle(capsys):
    code, _, _ = run(capsys, "enumerate", "-m", "3", "-n", "2", "--workers", "1", "--require-cycle")
    assert code == 1


def test_enumerate_capacity(capsys):
    code, _, err = run(capsys, "enumerate", "-m", "6", "-n", "3", "--workers", "1")
    assert code == 3 and "free bits" in err


def test_enumerate_extended_needs_checkpoint(capsys):
    code, _, _ = run(capsys, "enumerate", "-m", "6", "-n", "3", "--extended", "--range", "0:10")
    assert code == 2


def test_enumerate_range_and_resume(capsys, tmp_path):
    ck = tmp_path / "ck.txt"
    code, doc = run_json(capsys, "enumerate", "-m", "4", "-n", "3", "--workers", "1",
                         "--range", "0:4096", "--checkpoint", str(ck))
    assert code == 0 and doc["hamiltonian_count"] == 88 and ck.exists()
    code, doc = run_json(capsys, "enumerate", "-m", "4", "-n", "3", "--workers", "1",
                         "--range", "0:4096", "--checkpoint", str(ck), "--resume")
    assert code == 0 and doc["hamiltonian_count"] == 88


def test_sample(capsys, tmp_path):
    code, doc = run_json(capsys, "sample", "-m", "3", "-n", "4", "--trials", "500", "--seed", "1")
    assert code == 0 and doc["mismatches"] == 0 and doc["sign_histogram"]["-1"] == 500


def test_sample_requires_seed(capsys):
    with pytest.raises(SystemExit) as e:
        cli.main(["sample", "-m", "3", "-n", "4", "--trials", "5"])
    assert e.value.code == 2


def test_sequence(capsys, tmp_path):
    path = tmp_path / "s.json"
    path.write_text(json.dumps({"m": 3, "n": 3, "suffixes": ["01", "02", "10", "12"]}))
    code, doc = run_json(capsys, "sequence", "--choice-set", str(path))
    assert code == 0 and doc["sequence"] == REF_CYCLE and doc["is_debruijn"] is True
    code, doc = run_json(capsys, "sequence", "--choice-set", str(path), "--length", "5", "--seed-word", "001")
    assert doc["sequence"] == "00100"


def test_usage_errors():
    for argv in (["frobnicate"], ["verdict", "--bogus"], ["enumerate", "-m", "3"]):
        with pytest.raises(SystemExit) as e:
            cli.main(argv)
        assert e.value.code == 2


def test_invalid_params_is_usage(capsys):
    code, _, _ = run(capsys, "necklace", "-m", "3", "-n", "0")
    assert code == 2

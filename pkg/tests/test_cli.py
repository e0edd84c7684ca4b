import json

import pytest

from gcmassey.cli import RunConfig, UsageError, main, parse_config, read_config, report


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_enumerate_json(capsys):
    code, out, _ = run(capsys, "enumerate", "--genus", "0", "--legs", "4", "--format", "json")
    assert code == 0
    assert len(json.loads(out)) == 4


def test_verify_theta(capsys):
    code, out, _ = run(capsys, "verify", "theta", "--j", "2", "--format", "json")
    assert code == 0
    (cert,) = json.loads(out)
    assert cert["verdict"] == "PASS" and cert["witness"]["theta_coefficient"] != "0/1"
    assert set(cert) == {"claim", "params", "verdict", "witness", "ms"}


def test_verify_fail_exit_code(capsys):
    code, out, _ = run(capsys, "verify", "propzero", "--j", "2", "--format", "csv")
    assert code == 1
    assert out.startswith("claim,params,verdict,witness,ms\n")


def test_rep_wreath(capsys):
    code, out, _ = run(capsys, "rep", "wreath", "--q", "3", "--hook", "4,1,1", "--format", "csv")
    assert code == 0
    assert out.splitlines()[1].endswith(",1")


def test_homology_csv(capsys):
    code, out, _ = run(capsys, "homology", "--operad", "com", "--genus", "3", "--format", "csv")
    assert code == 0
    assert out == "genus,degree,rank\n3,0,1\n"


@pytest.mark.parametrize("argv", [["enumerate", "--genus", "0", "--legs", "1"], ["bogus"],
                                  ["rep", "wreath", "--q", "3", "--hook", "1,2"],
                                  ["verify", "theta"], ["verify", "theta", "--j", "3"],
                                  ["complex", "--genus", "1", "--legs", "3", "--config", "/nonexistent"]])
def test_usage_errors(capsys, argv):
    assert main(argv) == 2


def test_config_and_flag_precedence(tmp_path):
    cfg = tmp_path / "run.ini"
    cfg.write_text("genus = 1\nlegs = 3\nformat = csv\nno-simple-loops = true\n")
    rc = parse_config(["complex", "--config", str(cfg), "--format", "json"])
    assert (rc.genus, rc.legs, rc.format, rc.no_simple_loops) == (1, 3, "json", True)


def test_config_rejects_unknown_keys(tmp_path):
    cfg = tmp_path / "run.ini"
    cfg.write_text("colour = blue\n")
    with pytest.raises(UsageError):
        read_config(str(cfg))


def test_output_file_and_determinism(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for p in (a, b):
        assert main(["verify", "wheel-cycle", "--j", "1", "--no-timing", "--format", "json", "--out", str(p)]) == 0
    assert a.read_bytes() == b.read_bytes()


@pytest.mark.parametrize("cmd", [["complex", "--operad", "hlie", "--genus", "1", "--legs", "3"],
                                 ["rep", "cyclic", "--hook", "2,1,1,1"],
                                 ["rep", "relations", "--t", "2", "--j", "1"],
                                 ["rep", "restrict", "--hook", "3,1,1", "--q", "1"],
                                 ["differential", "--operad", "com", "--genus", "3", "--degree", "6"]])
def test_json_roundtrip(capsys, cmd):
    code, out, _ = run(capsys, *cmd, "--format", "json")
    assert code == 0
    rows = json.loads(out)
    assert report(rows, "json") == out


def test_report_empty():
    assert json.loads(report([], "json")) == []
    assert report([], "csv", ["genus", "degree", "rank"]) == "genus,degree,rank\n"
    assert report([], "human") == "(no results)\n"


def test_run_config_validation():
    with pytest.raises(UsageError):
        RunConfig(command="complex", genus=1, legs=0).validate()
    with pytest.raises(UsageError):
        RunConfig(command="verify", j=0).validate()

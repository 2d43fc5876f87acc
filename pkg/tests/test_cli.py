import json

import pytest

from sievelab import harness
from sievelab.cli import _build_parser, _config_from_args, _json_value, main
from sievelab.harness import SuiteResult


def run(capsys, argv):
    rc = main(argv)
    captured = capsys.readouterr()
    return rc, captured.out, captured.err


FIXED_FIELDS = [
    "problem", "z", "y", "s", "X", "main_term", "remainder_bound",
    "upper_bound", "lower_bound", "exact_count", "ratio", "notes",
]


def test_selberg_json_roundtrip(capsys):
    rc, out, _ = run(capsys, [
        "selberg", "--problem", "interval", "--x", "0", "--len", "100000",
        "--y", "2500",
    ])
    assert rc == 0
    d = json.loads(out)
    assert list(d) == FIXED_FIELDS
    assert isinstance(d["exact_count"], int)
    assert d["lower_bound"] is None
    assert d["upper_bound"] >= d["exact_count"]
    # serializing the parsed values reproduces the report byte for byte
    assert _json_value(d) == out.strip()


def test_unknown_command_and_flags_exit_2(capsys):
    assert run(capsys, ["frobnicate"])[0] == 2
    rc, _, err = run(capsys, ["selberg", "--nonsense", "1"])
    assert rc == 2
    assert "usage" in err
    assert run(capsys, [])[0] == 2


def test_help_exits_zero(capsys):
    assert run(capsys, ["--help"])[0] == 0


def test_missing_or_bad_parameters_exit_2(capsys):
    rc, _, err = run(capsys, ["selberg", "--problem", "interval", "--x", "0",
                              "--len", "1000"])
    assert rc == 2 and "--y" in err
    rc, _, err = run(capsys, ["legendre", "--problem", "interval", "--x", "0",
                              "--len", "100", "--z", "500"])
    assert rc == 2 and "cap" in err
    rc, _, err = run(capsys, ["parity", "--x", "10000"])
    assert rc == 2 and "--s" in err


def test_config_file_supplies_defaults_and_flags_win(tmp_path, capsys):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"z": 11, "format": "table"}))
    rc, out, _ = run(capsys, [
        "legendre", "--problem", "interval", "--x", "0", "--len", "10000",
        "--config", str(cfg),
    ])
    assert rc == 0
    assert out.splitlines()[0].startswith("problem")
    assert "11" in out.splitlines()[1].split()[1]
    rc, out, _ = run(capsys, [
        "legendre", "--problem", "interval", "--x", "0", "--len", "10000",
        "--config", str(cfg), "--z", "3", "--format", "json",
    ])
    assert rc == 0
    d = json.loads(out)
    assert d["z"] == 3
    assert d["exact_count"] == 5000


def test_buchstab_csv_grid(capsys):
    rc, out, _ = run(capsys, [
        "buchstab", "--s-max", "6", "--step", "1e-3", "--format", "csv",
    ])
    assert rc == 0
    lines = out.strip().splitlines()
    assert lines[0] == "s,F,f"
    assert len(lines) == 6001
    first = lines[1].split(",")
    assert float(first[0]) == pytest.approx(1e-3)
    last = lines[-1].split(",")
    assert float(last[0]) == pytest.approx(6.0)
    assert float(last[1]) >= float(last[2])


def test_buchstab_cache_reused(tmp_path, capsys):
    path = tmp_path / "grid.csv"
    args = ["buchstab", "--s-max", "6", "--step", "1e-3", "--cache", str(path),
            "--format", "csv"]
    rc1, out1, _ = run(capsys, args)
    assert rc1 == 0 and path.exists()
    stamp = path.stat().st_mtime_ns
    rc2, out2, _ = run(capsys, args)
    assert rc2 == 0 and out2 == out1
    assert path.stat().st_mtime_ns == stamp
    # a reloaded grid has no recomputed continuity defect; json shows null
    rc3, out3, _ = run(capsys, args[:-2] + ["--format", "json"])
    assert rc3 == 0
    assert json.loads(out3)["join_error"] is None


def test_parity_table_header(capsys):
    rc, out, _ = run(capsys, [
        "parity", "--x", "10000", "--s", "2.5", "--format", "table",
    ])
    assert rc == 0
    header = out.splitlines()[0].split()
    assert header == ["x", "s", "S+", "predict+", "S-", "predict-"]
    assert len(out.splitlines()) == 2


def test_rosser_emits_both_sides(capsys):
    argv = ["rosser", "--problem", "interval", "--x", "0", "--len", "10000",
            "--y", "100", "--z", "5"]
    rc, out, _ = run(capsys, argv + ["--format", "table"])
    assert rc == 0
    lines = out.splitlines()
    assert len(lines) == 3
    assert lines[1].startswith("upper") and lines[2].startswith("lower")
    rc, out, _ = run(capsys, argv)
    d = json.loads(out)
    assert set(d) == {"upper", "lower"}
    assert d["lower"]["lower_bound"] <= d["lower"]["exact_count"]
    assert d["upper"]["upper_bound"] >= d["upper"]["exact_count"]


def test_weighted_threshold_only(capsys):
    rc, out, _ = run(capsys, ["weighted", "--r", "2"])
    assert rc == 0
    d = json.loads(out)
    assert d["r"] == 2
    assert d["threshold"] == pytest.approx(1.834043767146470, abs=1e-9)


def test_brun_titchmarsh_report_and_scan(capsys):
    rc, out, _ = run(capsys, ["brun-titchmarsh", "--x", "10000", "--k", "3",
                              "--l", "2"])
    assert rc == 0
    d = json.loads(out)
    assert d["exact"] <= d["sieve_bound"]
    assert d["exact"] <= d["asymptotic_bound"]
    rc, out, _ = run(capsys, ["brun-titchmarsh", "--x", "10000", "--scan-q",
                              "3", "--format", "csv"])
    assert rc == 0
    lines = out.strip().splitlines()
    assert lines[0] == "k,E1"
    assert len(lines) == 4


def test_verify_suite_passes(capsys):
    rc, out, _ = run(capsys, ["verify", "--suite", "mertens-products",
                              "--format", "table"])
    assert rc == 0
    assert "pass" in out
    rc, out, _ = run(capsys, ["verify", "--suite", "delay-grid", "--format",
                              "json"])
    assert rc == 0
    d = json.loads(out)
    assert d["passed"] is True and d["cases"] > 0 and d["failures"] == []


def test_verify_failure_exits_1(monkeypatch, capsys):
    def bad(budget, seed):
        r = SuiteResult("always-bad")
        r.check("one", "x == y", False, "1 vs 2")
        return r

    monkeypatch.setitem(harness.SUITES, "always-bad", (bad, ()))
    rc, out, _ = run(capsys, ["verify", "--suite", "always-bad",
                              "--format", "table"])
    assert rc == 1
    assert "FAIL" in out and "1 vs 2" in out


def test_threads_default_from_environment(monkeypatch):
    parser = _build_parser()
    monkeypatch.setenv("SIEVELAB_THREADS", "3")
    cfg = _config_from_args(parser.parse_args(["verify", "--suite", "all"]))
    assert cfg.threads == 3
    cfg = _config_from_args(
        parser.parse_args(["verify", "--suite", "all", "--threads", "2"])
    )
    assert cfg.threads == 2

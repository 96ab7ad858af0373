"""CLI entry point: subcommands, exit codes, and output files."""

import csv
import json

import pytest

from tsallisinf.cli import _resolve_threads, main
from tsallisinf.harness import AGGREGATE_HEADER, BOUNDS_HEADER, RAW_HEADER, ConfigError


@pytest.fixture
def config_path(tmp_path):
    data = {
        "env": {"kind": "experiment1", "n_arms": 2, "gap": 0.25},
        "algorithms": [{"kind": "tsallis", "estimator": "rv"}, {"kind": "ucb1"}],
        "horizon": 200,
        "repetitions": 2,
        "base_seed": 0,
    }
    path = tmp_path / "config.json"
    path.write_text(json.dumps(data))
    return path


def read_csv(path):
    with open(path) as fh:
        return list(csv.reader(fh))


def test_run_writes_raw_and_aggregate(config_path, tmp_path, capsys):
    out = tmp_path / "out"
    code = main(["run", "--config", str(config_path), "--out", str(out)])
    assert code == 0

    raw = read_csv(out / "raw.csv")
    assert raw[0] == list(RAW_HEADER)
    algorithms = {row[0] for row in raw[1:]}
    assert algorithms == {"tsallis-rv", "ucb1"}
    seeds = {row[2] for row in raw[1:]}
    assert seeds == {"0", "1"}

    agg = read_csv(out / "aggregate.csv")
    assert agg[0] == list(AGGREGATE_HEADER)
    finals = [row for row in agg[1:] if row[2] == "200"]
    assert len(finals) == 2

    printed = capsys.readouterr().out
    assert "mean pseudo-regret" in printed
    assert "wrote" in printed


def test_run_seed_override_changes_output(config_path, tmp_path):
    out_a = tmp_path / "a"
    out_b = tmp_path / "b"
    out_c = tmp_path / "c"
    assert main(["run", "--config", str(config_path), "--out", str(out_a)]) == 0
    assert main(
        ["run", "--config", str(config_path), "--out", str(out_b), "--seed", "123"]
    ) == 0
    assert main(["run", "--config", str(config_path), "--out", str(out_c)]) == 0
    raw_a = (out_a / "raw.csv").read_bytes()
    assert raw_a != (out_b / "raw.csv").read_bytes()
    assert raw_a == (out_c / "raw.csv").read_bytes()


def test_run_default_out_dir_uses_env_label(config_path, tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    assert main(["run", "--config", str(config_path)]) == 0
    assert (tmp_path / "results" / "experiment1-k2-gap0.25" / "raw.csv").exists()


def test_unknown_flag_exits_2(config_path):
    with pytest.raises(SystemExit) as excinfo:
        main(["run", "--config", str(config_path), "--bogus"])
    assert excinfo.value.code == 2


def test_missing_subcommand_exits_2():
    with pytest.raises(SystemExit) as excinfo:
        main([])
    assert excinfo.value.code == 2


def test_malformed_config_reports_error(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code = main(["run", "--config", str(bad), "--out", str(tmp_path / "out")])
    assert code == 1
    err = capsys.readouterr().err
    assert err.startswith("error:")
    assert not (tmp_path / "out").exists()


def test_invalid_config_contents_report_error(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"env": {"kind": "nope"}, "algorithms": [], "horizon": 1}))
    assert main(["run", "--config", str(bad)]) == 1
    assert "error:" in capsys.readouterr().err


def test_negative_seed_rejected(config_path, capsys):
    assert main(["run", "--config", str(config_path), "--seed", "-1"]) == 1
    assert "error:" in capsys.readouterr().err


def test_resolve_threads_env_override(monkeypatch):
    monkeypatch.delenv("TSALLIS_THREADS", raising=False)
    assert _resolve_threads(3) == 3
    monkeypatch.setenv("TSALLIS_THREADS", "2")
    assert _resolve_threads(7) == 2
    monkeypatch.setenv("TSALLIS_THREADS", "zero")
    with pytest.raises(ConfigError):
        _resolve_threads(1)
    monkeypatch.setenv("TSALLIS_THREADS", "0")
    with pytest.raises(ConfigError):
        _resolve_threads(1)
    monkeypatch.delenv("TSALLIS_THREADS")
    with pytest.raises(ConfigError):
        _resolve_threads(0)


def test_run_with_threads_env_override(config_path, tmp_path, monkeypatch):
    serial = tmp_path / "serial"
    threaded = tmp_path / "threaded"
    assert main(["run", "--config", str(config_path), "--out", str(serial)]) == 0
    monkeypatch.setenv("TSALLIS_THREADS", "2")
    assert main(["run", "--config", str(config_path), "--out", str(threaded)]) == 0
    assert (serial / "raw.csv").read_bytes() == (threaded / "raw.csv").read_bytes()
    monkeypatch.setenv("TSALLIS_THREADS", "junk")
    code = main(["run", "--config", str(config_path), "--out", str(tmp_path / "x")])
    assert code == 1


def test_bounds_writes_csv(config_path, tmp_path):
    out = tmp_path / "bounds-out"
    assert main(["bounds", "--config", str(config_path), "--out", str(out)]) == 0
    rows = read_csv(out / "bounds.csv")
    assert rows[0] == list(BOUNDS_HEADER)
    names = {row[1] for row in rows[1:]}
    assert {"thm1-adversarial-iw", "thm1-adversarial-rv"} <= names
    assert all(float(row[2]) > 0 for row in rows[1:])


def test_oracle_check_passes(capsys):
    assert main(["oracle-check", "--seed", "0"]) == 0
    out = capsys.readouterr().out
    lines = [line for line in out.splitlines() if line]
    assert len(lines) >= 3
    assert all(line.startswith("PASS") for line in lines)

"""Configuration, orchestration, emission, and the command-line contract."""

import json

import pytest

from roughkernel.errors import ConfigError, ParameterError
from roughkernel.verify_cli import (
    CHECK_ORDER,
    CSV_HEADER,
    emit,
    main,
    make_config,
    parse_config_file,
    run_sweep,
    run_verify,
)

SMALL = {"n": "4", "N": "2^24", "grid": "1024", "p": "4"}


# -- configuration ----------------------------------------------------------------


def test_defaults():
    cfg = make_config()
    assert cfg.phi == "power_log:0.5"
    assert cfg.mode == "decoupled"
    assert cfg.N == 2.0**40
    assert cfg.n == 16
    assert cfg.emit == ("json",)


def test_config_file_parsing(tmp_path):
    path = tmp_path / "run.cfg"
    path.write_text(
        "# comment line\n"
        "\n"
        "phi = log_quotient\n"
        "N = 2^20   # inline comment\n"
        "emit = json,csv\n"
    )
    raw = parse_config_file(path)
    assert raw == {"phi": "log_quotient", "N": "2^20", "emit": "json,csv"}
    cfg = make_config(raw)
    assert cfg.N == 2.0**20
    assert cfg.emit == ("json", "csv")


def test_config_file_rejects_unknown_key(tmp_path):
    path = tmp_path / "run.cfg"
    path.write_text("frobnicate = 1\n")
    with pytest.raises(ConfigError, match="frobnicate"):
        parse_config_file(path)
    path.write_text("just some text\n")
    with pytest.raises(ConfigError, match=":1:"):
        parse_config_file(path)


def test_flags_override_file():
    cfg = make_config({"N": "2^30", "n": "8"}, {"N": "2^32"})
    assert cfg.N == 2.0**32
    assert cfg.n == 8


def test_number_notation():
    assert make_config({"N": "2**40"}).N == 2.0**40
    assert make_config({"N": "1e9"}).N == 1e9
    with pytest.raises(ConfigError):
        make_config({"N": "forty"})


def test_phi_validation():
    for bad in ("power_log:-1", "power_log", "log_quotient:2", "weird:1", "custom_table"):
        with pytest.raises(ConfigError):
            make_config({"phi": bad})
    assert make_config({"phi": "log_quotient"}).phi == "log_quotient"


def test_config_invariants():
    with pytest.raises(ConfigError):
        make_config({"mode": "both"})
    with pytest.raises(ConfigError):
        make_config({"N": "99"})
    with pytest.raises(ConfigError):
        make_config({"n": "16", "N": "10000"})  # decoupled needs N >= 64 n^2 = 16384
    with pytest.raises(ConfigError):
        make_config({"tol": "0.5"})
    with pytest.raises(ConfigError):
        make_config({"emit": "json,pdf"})
    with pytest.raises(ConfigError):
        make_config({"p": "0.5"})
    with pytest.raises(ConfigError):
        make_config({"oversample": "1"})


def test_geometry_specs():
    cfg = make_config({"geometry": "s:256,t_start:29,t_step:5"})
    assert cfg.to_dict()["geometry"] == {"s": 256, "t_start": 29, "t_step": 5}
    cfg = make_config({"geometry": "256,29,5"})
    assert cfg.to_dict()["geometry"] == {"s": 256, "t_start": 29, "t_step": 5}
    assert make_config({"geometry": "auto"}).to_dict()["geometry"] == "auto"
    with pytest.raises(ConfigError):
        make_config({"geometry": "s:256,tilt:1"})
    with pytest.raises(ConfigError):
        make_config({"geometry": "s:two"})


# -- verification runs ----------------------------------------------------------------


def test_run_verify_check_roster():
    cfg = make_config(SMALL)
    report = run_verify(cfg)
    assert report["aborted"] is False
    names = [c["name"] for c in report["checks"]]
    assert names == CHECK_ORDER  # every check exactly once, fixed order
    assert report["config"]["N"] == 2.0**24
    assert report["construction"]["n"] == 4
    for c in report["checks"]:
        assert set(c) >= {"name", "passed", "measured", "threshold", "skipped"}


def test_run_verify_skips_small_n():
    cfg = make_config({"n": "1", "N": "2^20", "grid": "1024"})
    report = run_verify(cfg)
    assert report["aborted"] is False
    by_name = {c["name"]: c for c in report["checks"]}
    growth = by_name["exponent_growth"]
    assert growth["skipped"] and "n >= 8" in growth["reason"]
    assert not by_name["separation"]["skipped"]


def test_run_verify_skips_separation_outside_regime():
    # log n / log N = 4/20 > 1/8
    cfg = make_config({"n": "16", "N": "2^20", "grid": "1024"})
    report = run_verify(cfg)
    sep = next(c for c in report["checks"] if c["name"] == "separation")
    assert sep["skipped"]


def test_run_verify_aborts_on_infeasible_geometry():
    cfg = make_config({**SMALL, "geometry": "s:256,t_start:1000000,t_step:5"})
    report = run_verify(cfg)
    assert report["aborted"] is True
    assert report["abort_stage"] == "construction"
    assert "GeometryError" in report["abort_error"]
    assert report["checks"] == []


def test_run_sweep_continues_past_bad_points():
    cfg = make_config(SMALL)
    reports = run_sweep(cfg, "N", [2.0**24, 1000.0, 2.0**26])
    assert len(reports) == 3
    assert reports[0]["aborted"] is False
    assert reports[1]["aborted"] is True  # 1000 < 64 n^2
    assert reports[1]["abort_stage"] == "config"
    assert reports[2]["aborted"] is False


def test_run_sweep_validation():
    cfg = make_config(SMALL)
    with pytest.raises(ParameterError):
        run_sweep(cfg, "N", [2.0**24])
    with pytest.raises(ParameterError):
        run_sweep(cfg, "grid", [512, 1024])


# -- emission ----------------------------------------------------------------------------


def test_csv_header_is_stable():
    assert CSV_HEADER == "N,n,c,absD,margin,modular,luxemburg,sup_m,c7,c8,ratio_p4,slope_p4"


def test_emit_writes_requested_formats(tmp_path):
    # n = 8 so the exponent-growth fit runs and the ratio plot has data
    cfg = make_config({**SMALL, "n": "8", "out": str(tmp_path), "emit": "json,csv,svg"})
    artifacts: dict = {}
    report = run_verify(cfg, artifacts)
    written = {p.name for p in emit(report, cfg, artifacts)}
    assert written == {
        "report.json",
        "report.csv",
        "khat_profile.svg",
        "m_profile.svg",
        "ratio_loglog.svg",
    }
    body = json.loads((tmp_path / "report.json").read_text())
    assert body["construction"]["n"] == 8
    lines = (tmp_path / "report.csv").read_text().splitlines()
    assert lines[0] == CSV_HEADER
    assert len(lines) == 2
    assert len(lines[1].split(",")) == 12


def test_report_json_deterministic(tmp_path):
    cfg = make_config({**SMALL, "out": str(tmp_path)})
    r1 = run_verify(cfg)
    r2 = run_verify(cfg)
    assert json.dumps(r1, sort_keys=True) == json.dumps(r2, sort_keys=True)


# -- command line -------------------------------------------------------------------------


def test_main_construct(tmp_path, capsys):
    code = main(
        ["construct", "--phi", "power_log:0.5", "--N", "1e6", "--mode", "schedule",
         "--out", str(tmp_path)]
    )
    out = capsys.readouterr().out
    assert code == 0
    assert "n=3" in out  # schedule pins the pair count at this scale
    payload = json.loads((tmp_path / "construction.json").read_text())
    assert payload["n"] == 3
    assert 0.9 <= payload["absD"] <= 1.0


def test_main_verify_exit_codes(tmp_path, capsys):
    ok = main(
        ["verify", "--n", "4", "--N", "2^24", "--grid", "1024", "--p", "4",
         "--out", str(tmp_path / "ok")]
    )
    assert ok == 0
    out = capsys.readouterr().out
    assert out.count("pass") + out.count("skip") == 12

    cfg_path = tmp_path / "bad_geometry.cfg"
    cfg_path.write_text("n = 4\nN = 2^24\ngeometry = s:256,t_start:1000000,t_step:5\n")
    failed = main(["verify", "--config", str(cfg_path), "--out", str(tmp_path / "bad")])
    assert failed == 1
    assert "aborted" in capsys.readouterr().out


def test_main_usage_errors(capsys):
    assert main(["construct", "--phi", "power_log:-1"]) == 2
    err = capsys.readouterr().err
    assert "error" in err
    with pytest.raises(SystemExit):
        main(["frobnicate"])  # unknown subcommand is an argparse usage error


def test_main_sweep(tmp_path, capsys):
    code = main(
        ["sweep", "--axis", "n", "--values", "2,4", "--N", "2^24", "--grid", "1024",
         "--p", "4", "--out", str(tmp_path)]
    )
    assert code == 0
    out = capsys.readouterr().out
    assert "[n=2] ok" in out and "[n=4] ok" in out
    lines = (tmp_path / "report.csv").read_text().splitlines()
    assert lines[0] == CSV_HEADER
    assert len(lines) == 3
    assert (tmp_path / "report_000.json").exists()
    assert (tmp_path / "report_001.json").exists()


def test_main_norms(capsys):
    code = main(["norms", "--p", "4", "--oversample", "4"])
    assert code == 0
    out = capsys.readouterr().out
    assert "slope=" in out
    assert "expected=0.2500" in out

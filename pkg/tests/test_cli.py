"""Scenario front end: presets, config files, CSV emission, exit codes."""

import json
import math

import pytest

import celdyn.cli as cli
from celdyn import SystemParams
from celdyn.cli import ScenarioConfig, emit_csv, load_config, main, preset, run
from celdyn.errors import IoFailure, UnknownPreset
from celdyn.oracle import ComparisonReport


def test_preset_fixed_parameters():
    p1 = preset("fig1")
    assert p1.base == SystemParams(kappa=0.5, gamma=1.0, omega=0.0, theta=0.0, gain_a=10.0)
    assert p1.sweep_field == "gamma"
    assert p1.sweep_values == (0.5, 0.7, 0.9, 1.0)

    p3 = preset("fig3")
    assert p3.base.gamma == 0.75
    assert p3.sweep_field == "theta"
    assert p3.sweep_values == (0.0, 0.25, 0.5, 1.0)

    p4 = preset("fig4")
    assert (p4.base.theta, p4.base.gamma) == (0.25, 0.75)
    assert p4.sweep_field == "gain_a"
    assert p4.sweep_values == (10.0, 25.0, 50.0, 100.0)

    for fig in ("fig5", "fig6", "fig7", "fig8"):
        assert preset(fig).base.omega == 10.0

    p9 = preset("fig9")
    assert p9.base == SystemParams(kappa=0.5, gamma=0.75, omega=0.0, theta=0.25, gain_a=25.0)
    assert p9.sweep_field is None
    assert p9.outputs == ("v_s", "dgcz")

    p10 = preset("fig10")
    assert p10.base.omega == 10.0
    assert p10.base.gain_a == 25.0


def test_preset_unknown_id():
    with pytest.raises(UnknownPreset):
        preset("fig0")
    with pytest.raises(UnknownPreset):
        preset("fig11")


def test_run_row_count_and_order():
    cfg = preset("fig1")
    cfg = cli.dataclasses.replace(cfg, t_end=2.0, n_points=5)
    table = run(cfg)
    assert table.header[:3] == ("sweep_param", "sweep_value", "t")
    assert len(table.rows) == 4 * 5
    # sweep-major, time-minor ordering
    assert [r[1] for r in table.rows[:5]] == [0.5] * 5
    assert table.rows[0][2] == 0.0
    assert table.rows[4][2] == 2.0


def test_run_no_sweep_uses_placeholder_axis():
    cfg = cli.dataclasses.replace(preset("fig9"), t_end=1.0, n_points=3)
    table = run(cfg)
    assert len(table.rows) == 3
    assert table.rows[0][:2] == ("none", 0.0)
    assert table.header == ("sweep_param", "sweep_value", "t", "v_s", "dgcz")


def test_run_first_row_is_vacuum():
    cfg = cli.dataclasses.replace(preset("fig2"), t_end=5.0, n_points=2)
    table = run(cfg)
    first = dict(zip(table.header, table.rows[0]))
    assert first["t"] == 0.0
    assert first["v_s"] == 1.0
    assert first["dgcz"] == 2.0
    assert math.isnan(first["hz_g"])


def test_csv_header_and_tokens(tmp_path, capsys):
    cfg = cli.dataclasses.replace(preset("fig1"), t_end=1.0, n_points=2)
    emit_csv(run(cfg), "-")
    text = capsys.readouterr().out
    lines = text.splitlines()
    assert lines[0] == "sweep_param,sweep_value,t,v_s,e_n,dgcz,hz_g,n_a,n_b,c_ab,regime"
    # vacuum rows carry the undefined-flag token in the hz column
    assert lines[1].split(",")[6] == "nan-undefined"
    assert lines[1].endswith("oscillatory")


def test_csv_round_trip_bit_identical(tmp_path):
    cfg = cli.dataclasses.replace(preset("fig3"), t_end=3.0, n_points=7)
    table = run(cfg)
    path = tmp_path / "out.csv"
    emit_csv(table, str(path))
    lines = path.read_text().splitlines()
    for lineno, row in enumerate(table.rows, start=1):
        cells = lines[lineno].split(",")
        for cell, value in zip(cells[2:], row[2:]):
            if isinstance(value, str):
                assert cell == value
            elif math.isnan(value):
                assert cell == "nan-undefined"
            else:
                assert float(cell) == value


def test_csv_determinism_byte_identical(tmp_path):
    cfg = cli.dataclasses.replace(preset("fig6"), t_end=4.0, n_points=9)
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    emit_csv(run(cfg), str(a))
    emit_csv(run(cfg), str(b))
    assert a.read_bytes() == b.read_bytes()


def test_load_config_sweep_and_overrides(tmp_path):
    doc = {
        "label": "pair",
        "params": {"kappa": 0.5, "gamma": [0.5, 1.0], "omega": 0.0, "theta": 0.0, "gain_a": 10.0},
        "t_grid": {"t_end": 4.0, "n_points": 5},
        "outputs": ["v_s", "regime"],
    }
    path = tmp_path / "scenario.json"
    path.write_text(json.dumps(doc))
    cfg = load_config(str(path))
    assert cfg.sweep_field == "gamma"
    assert cfg.sweep_values == (0.5, 1.0)
    assert cfg.t_end == 4.0
    assert cfg.n_points == 5
    assert cfg.outputs == ("v_s", "regime")
    assert cfg.label == "pair"


def test_load_config_rejects_malformed(tmp_path):
    cases = [
        "[1, 2, 3]",
        '{"params": {"kappa": 0.5}}',
        '{"params": {"kappa": 0.5, "gamma": [0.5], "omega": [0, 1], "theta": 0, "gain_a": 10}}',
        '{"params": {"kappa": 0.5, "gamma": [], "omega": 0, "theta": 0, "gain_a": 10}}',
        "not json at all",
    ]
    for i, text in enumerate(cases):
        path = tmp_path / f"bad{i}.json"
        path.write_text(text)
        with pytest.raises(IoFailure):
            load_config(str(path))
    with pytest.raises(IoFailure):
        load_config(str(tmp_path / "missing.json"))


def test_config_validation_bounds():
    good = preset("fig1")
    with pytest.raises(IoFailure):
        run(cli.dataclasses.replace(good, t_end=0.0))
    with pytest.raises(IoFailure):
        run(cli.dataclasses.replace(good, n_points=1))
    with pytest.raises(IoFailure):
        run(cli.dataclasses.replace(good, outputs=("v_s", "bogus")))
    with pytest.raises(IoFailure):
        run(cli.dataclasses.replace(good, outputs=()))


def test_main_exit_codes_basic(tmp_path, capsys):
    out = tmp_path / "t.csv"
    assert main(["--preset", "fig1", "--t-end", "1", "--points", "2", "--out", str(out)]) == 0
    assert out.exists()

    assert main([]) == 1
    assert main(["--preset", "fig1", "--config", "x.json"]) == 1
    assert main(["--preset", "nosuch"]) == 1
    assert main(["--config", str(tmp_path / "missing.json")]) == 1
    capsys.readouterr()


def test_main_flag_overrides_file(tmp_path, capsys):
    doc = {
        "params": {"kappa": 0.5, "gamma": 1.0, "omega": 0.0, "theta": 0.0, "gain_a": 10.0},
        "t_grid": {"t_end": 1.0, "n_points": 3},
    }
    path = tmp_path / "s.json"
    path.write_text(json.dumps(doc))
    assert main(["--config", str(path), "--t-end", "2", "--points", "2", "--out", "-"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 1 + 2
    assert lines[-1].split(",")[2] == "2"


def test_verify_mode_passes_on_presets(capsys):
    code = main(["--preset", "fig9", "--verify", "--t-end", "5", "--seed-grid", "4"])
    out = capsys.readouterr().out
    assert code == 0
    assert "PASS" in out
    assert "verified" in out


def test_verify_mode_is_seeded(capsys):
    main(["--preset", "fig3", "--verify", "--t-end", "3", "--seed-grid", "3"])
    first = capsys.readouterr().out
    main(["--preset", "fig3", "--verify", "--t-end", "3", "--seed-grid", "3"])
    second = capsys.readouterr().out
    assert first == second


def test_verify_failure_exit_code(monkeypatch, capsys):
    def broken(params, grid, tolerance=1e-6):
        return ComparisonReport(
            rows=[],
            max_err_n_a=1.0,
            max_err_n_b=0.0,
            max_err_c_ab=0.0,
            tolerance=tolerance,
            passed=False,
        )

    monkeypatch.setattr(cli, "compare", broken)
    code = main(["--preset", "fig9", "--verify", "--t-end", "2", "--seed-grid", "2"])
    out = capsys.readouterr().out
    assert code == 2
    assert "FAIL" in out


def test_scenario_config_is_frozen():
    cfg = preset("fig1")
    with pytest.raises(Exception):
        cfg.t_end = 10.0
    assert isinstance(cfg, ScenarioConfig)

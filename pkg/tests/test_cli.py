import json

import numpy as np
import pytest

import mmwreflect as m
from mmwreflect.cli import main


def _run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestSolve:
    def test_default_layout_to_stdout(self, capsys):
        code, out, err = _run(capsys, "solve")
        assert code == 0 and err == ""
        doc = json.loads(out)
        assert doc["alpha_deg"] == pytest.approx(42.19825867319058, abs=1e-9)
        assert doc["layout"]["L_R"] == 3.69

    def test_out_file(self, capsys, tmp_path):
        target = tmp_path / "angles.json"
        code, out, _ = _run(capsys, "solve", "--out", str(target))
        assert code == 0 and out == ""
        assert json.loads(target.read_text())["beta_deg"] == pytest.approx(
            12.986649379980049, abs=1e-9)

    def test_custom_layout_file(self, capsys, tmp_path):
        layout = m.CorridorLayout.from_dimensions(3.0, 4.0, 1.5, 2.0)
        path = tmp_path / "layout.json"
        path.write_text(json.dumps(layout.to_dict()), encoding="utf-8")
        code, out, _ = _run(capsys, "solve", "--layout", str(path))
        assert code == 0
        doc = json.loads(out)
        assert doc["layout"]["L_T"] == 3.0
        assert 0.0 < doc["alpha_deg"] < 90.0

    def test_missing_layout_file_fails_cleanly(self, capsys, tmp_path):
        code, out, err = _run(capsys, "solve", "--layout", str(tmp_path / "nope.json"))
        assert code == 1
        assert err.startswith("error:")


class TestSimulate:
    def test_by_index_matches_library(self, capsys):
        code, out, _ = _run(capsys, "simulate", "--tx-index", "16")
        assert code == 0
        doc = json.loads(out)
        expected = m.simulate_position(m.ScenarioConfig(), tx_index=16)
        assert doc["path_loss_db"] == expected["path_loss_db"]

    def test_explicit_point_and_no_panel(self, capsys):
        code, out, _ = _run(capsys, "simulate", "--tx", "0.81,4.75", "--no-panel")
        assert code == 0
        doc = json.loads(out)
        assert doc["panel_enabled"] is False
        assert doc["tx"] == [0.81, 4.75]
        expected = m.simulate_position(m.ScenarioConfig(),
                                       tx=m.Point2(0.81, 4.75), panel_enabled=False)
        assert doc["path_loss_db"] == expected["path_loss_db"]

    def test_alpha_override_is_reported(self, capsys):
        code, out, _ = _run(capsys, "simulate", "--tx-index", "16",
                            "--alpha-deg", "50")
        assert code == 0
        assert json.loads(out)["alpha_used_deg"] == pytest.approx(50.0)

    def test_garbled_tx_string_exits(self, capsys):
        with pytest.raises(SystemExit):
            main(["simulate", "--tx", "0.81;4.75"])

    def test_tx_outside_corridor_returns_error(self, capsys):
        code, _, err = _run(capsys, "simulate", "--tx", "50,50")
        assert code == 1 and "error:" in err

    def test_index_and_point_are_mutually_exclusive(self, capsys):
        with pytest.raises(SystemExit):
            main(["simulate", "--tx-index", "1", "--tx", "0.81,1.0"])


class TestCampaign:
    def test_table_and_best_line(self, capsys):
        code, out, _ = _run(capsys, "campaign")
        assert code == 0
        lines = out.splitlines()
        assert len(lines) == 18
        assert lines[-1] == "best improvement: 39.23 dB at position 15"

    def test_files_and_quiet(self, capsys, tmp_path):
        csv_path = tmp_path / "runs.csv"
        json_path = tmp_path / "runs.json"
        code, out, _ = _run(capsys, "campaign", "--quiet",
                            "--csv", str(csv_path), "--json", str(json_path))
        assert code == 0 and out == ""
        result = m.run_campaign(m.ScenarioConfig())
        assert csv_path.read_text(encoding="utf-8") == m.campaign_to_csv(result)
        assert json_path.read_text(encoding="utf-8") == m.campaign_to_json(result)

    def test_config_file_is_honored(self, capsys, tmp_path):
        cfg_path = tmp_path / "scen.json"
        m.save_config(m.ScenarioConfig(tx_count=4), cfg_path)
        code, out, _ = _run(capsys, "campaign", "--config", str(cfg_path))
        assert code == 0
        assert len(out.splitlines()) == 6

    def test_missing_config_file(self, capsys, tmp_path):
        code, _, err = _run(capsys, "campaign", "--config", str(tmp_path / "no.json"))
        assert code == 1 and err.startswith("error:")


class TestCalibrate:
    def test_round_trip_through_files(self, capsys, tmp_path):
        grid = m.SweepGrid.default()
        rng = np.random.default_rng(11)
        truth = m.ComplexTrace(grid, rng.uniform(0.01, 1.0, 401)
                               * np.exp(1j * rng.uniform(-np.pi, np.pi, 401)))
        rig = m.RigSignature(
            h_tx=m.ComplexTrace(grid, np.full(401, 1.1 + 0.2j)),
            h_rx=m.ComplexTrace(grid, np.full(401, 0.9 - 0.1j)),
            g_tx_dbi=2.0, g_rx_dbi=22.5, attenuator_db=40.0)
        measured_path = tmp_path / "measured.csv"
        bb_path = tmp_path / "bb.csv"
        out_path = tmp_path / "channel.csv"
        m.write_sweep(m.compose_measured(truth, rig), measured_path)
        m.write_sweep(m.compose_back_to_back(rig), bb_path)

        code, out, _ = _run(capsys, "calibrate",
                            "--measured", str(measured_path),
                            "--back-to-back", str(bb_path),
                            "--out", str(out_path))
        assert code == 0
        assert str(out_path) in out
        recovered = m.read_sweep(out_path)
        rel = np.abs(recovered.values - truth.values) / np.abs(truth.values)
        assert np.max(rel) < 1e-12

    def test_malformed_sweep_fails_cleanly(self, capsys, tmp_path):
        bad = tmp_path / "bad.csv"
        bad.write_text("nonsense\n", encoding="utf-8")
        code, _, err = _run(capsys, "calibrate", "--measured", str(bad),
                            "--back-to-back", str(bad), "--out",
                            str(tmp_path / "o.csv"))
        assert code == 1 and err.startswith("error:")


class TestInitConfig:
    def test_written_file_loads_back_as_the_default(self, capsys, tmp_path):
        path = tmp_path / "default.json"
        code, out, _ = _run(capsys, "init-config", "--out", str(path))
        assert code == 0
        assert m.load_config(path) == m.ScenarioConfig()

    def test_defaults_in_file_match_documented_values(self, capsys, tmp_path):
        path = tmp_path / "default.json"
        _run(capsys, "init-config", "--out", str(path))
        doc = json.loads(path.read_text(encoding="utf-8"))
        assert doc["tx"]["count"] == 16
        assert doc["sweep"] == {"center_hz": 60e9, "bandwidth_hz": 2e9,
                                "n_points": 401}
        assert doc["rx"]["pattern"] == {"kind": "horn", "peak_gain_dbi": 22.5,
                                        "azimuth_hpbw_deg": 13.0}


def test_entry_point_is_installed():
    import subprocess
    proc = subprocess.run(["mmwreflect", "solve"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["alpha_deg"] == pytest.approx(42.19825867319058)

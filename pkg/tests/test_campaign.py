import dataclasses
import json
import math

import pytest

import mmwreflect as m

# Reference numbers for the stock 16-position scenario, frozen from a run
# that was sanity-checked line by line (LOS split, monotone trends, path
# counts).  Improvements in dB, indexed from position 1.
EXPECTED_IMPROVEMENT = [
    0.35637194126998395, 1.8268011833951903, 1.8346754595231545,
    2.210859497827741, 14.026436863319375, 14.022221231516355,
    24.448350801070234, 22.587740131431502, 21.644782093132633,
    35.030965278017135, 34.4590353317227, 34.57775550508317,
    39.228509174583664, 39.133117608115924, 39.232293553297545,
    38.84506858715757,
]


@pytest.fixture(scope="module")
def default_result():
    return m.run_campaign(m.ScenarioConfig())


class TestTxPositions:
    def test_default_grid(self):
        pts = m.tx_positions(m.ScenarioConfig())
        assert len(pts) == 16
        assert pts[0].as_tuple() == (0.81, 1.0)
        assert pts[-1].as_tuple() == (0.81, 4.75)
        steps = {round(pts[i + 1].y - pts[i].y, 12) for i in range(15)}
        assert steps == {0.25}

    def test_all_share_the_axis(self):
        cfg = m.ScenarioConfig()
        assert {p.x for p in m.tx_positions(cfg)} == {cfg.layout.l_T / 2}

    def test_position_outside_corridor_is_reported_with_its_index(self):
        cfg = m.ScenarioConfig(tx_count=40)
        with pytest.raises(ValueError, match="outside"):
            m.tx_positions(cfg)


class TestConfigSerialization:
    def test_round_trip(self):
        cfg = m.ScenarioConfig(panel_material="wood", max_order=3,
                               noise_floor_db=99.0, no_panel_rx_aim="corner")
        again = m.ScenarioConfig.from_dict(cfg.to_dict())
        assert again == cfg

    def test_json_round_trip_through_disk(self, tmp_path):
        cfg = m.ScenarioConfig(tx_count=4, tx_step_m=0.5)
        path = tmp_path / "scen.json"
        m.save_config(cfg, path)
        assert m.load_config(path) == cfg
        assert json.loads(path.read_text())["schema"] == 1

    def test_unknown_schema_rejected(self):
        blob = m.ScenarioConfig().to_dict()
        blob["schema"] = 99
        with pytest.raises(ValueError, match="schema"):
            m.ScenarioConfig.from_dict(blob)

    def test_partial_dict_fills_defaults(self):
        cfg = m.ScenarioConfig.from_dict({"schema": 1, "tx": {"count": 3}})
        assert cfg.tx_count == 3
        assert cfg.panel_width_m == 0.595
        assert cfg.sweep == m.SweepGrid.default()

    def test_bad_aim_mode_rejected(self):
        with pytest.raises(ValueError, match="no_panel_rx_aim"):
            m.ScenarioConfig(no_panel_rx_aim="sideways")

    def test_material_override_reaches_registry(self):
        softer = m.Material("plasterboard", "plasterboard", 0.5)
        cfg = m.ScenarioConfig(materials=(softer,))
        assert cfg.material_registry()["plasterboard"].reflection_amplitude == 0.5
        # Overrides survive the JSON round trip too.
        again = m.ScenarioConfig.from_dict(cfg.to_dict())
        assert again.material_registry()["plasterboard"] == softer


class TestDefaultCampaign:
    def test_sixteen_records_in_order(self, default_result):
        assert [r.index for r in default_result.records] == list(range(1, 17))

    def test_los_split(self, default_result):
        assert [r.los for r in default_result.records] == [True] * 6 + [False] * 10

    def test_improvement_is_the_difference_of_the_arms(self, default_result):
        for r in default_result.records:
            assert r.improvement_db == r.pl_without_db - r.pl_with_db

    def test_panel_only_adds_paths(self, default_result):
        for r in default_result.records:
            assert len(r.paths_with) > len(r.paths_without)
            bare = {p.bounce_walls for p in r.paths_without}
            augmented = {p.bounce_walls for p in r.paths_with}
            assert bare <= augmented
            assert all("panel" in walls for walls in augmented - bare)

    def test_every_nlos_position_improves(self, default_result):
        for r in default_result.records[6:]:
            assert r.improvement_db > 10.0

    def test_frozen_improvements(self, default_result):
        for r, expected in zip(default_result.records, EXPECTED_IMPROVEMENT):
            assert r.improvement_db == pytest.approx(expected, rel=1e-9)

    def test_curve_peaks_at_position_15(self, default_result):
        curve = m.improvement_curve(default_result)
        assert curve.argmax_index == 15
        assert curve.max_improvement_db == pytest.approx(39.232293553297545, rel=1e-9)
        assert len(curve.points) == 16

    def test_solved_angles_attached(self, default_result):
        assert math.degrees(default_result.angles.alpha) == pytest.approx(
            42.19825867319058, abs=1e-9)


class TestPanelMaterialArm:
    def test_absorber_panel_changes_nothing(self):
        result = m.run_campaign(m.ScenarioConfig(panel_material="absorber"))
        for r in result.records:
            assert r.improvement_db == 0.0
            assert r.pl_with_db == r.pl_without_db

    def test_plasterboard_panel_helps_less_than_metal(self):
        metal = m.run_campaign(m.ScenarioConfig())
        soft = m.run_campaign(m.ScenarioConfig(panel_material="plasterboard"))
        for hard, weak in zip(metal.records[6:], soft.records[6:]):
            assert 0.0 < weak.improvement_db < hard.improvement_db


class TestNoiseFloor:
    def test_pathless_positions_sit_on_the_floor(self):
        # With single-bounce tracing only, the far stops have no route
        # around the corner at all without the panel.
        result = m.run_campaign(m.ScenarioConfig(max_order=1))
        for r in result.records[12:]:
            assert len(r.paths_without) == 0
            assert r.pl_without_db == 108.0

    def test_floor_value_is_configurable(self):
        result = m.run_campaign(m.ScenarioConfig(max_order=1, noise_floor_db=90.0))
        assert result.records[15].pl_without_db == 90.0


class TestDeterminism:
    def test_json_and_csv_are_byte_stable(self, default_result):
        other = m.run_campaign(m.ScenarioConfig())
        assert m.campaign_to_json(other) == m.campaign_to_json(default_result)
        assert m.campaign_to_csv(other) == m.campaign_to_csv(default_result)

    def test_csv_shape(self, default_result):
        lines = m.campaign_to_csv(default_result).splitlines()
        assert lines[0].startswith("index,tx_x_m,tx_y_m,los,")
        assert len(lines) == 17
        row = lines[16].split(",")
        assert row[0] == "16"
        assert float(row[8]) == pytest.approx(EXPECTED_IMPROVEMENT[15], rel=1e-9)

    def test_dict_export_carries_angles_and_argmax(self, default_result):
        blob = m.campaign_to_dict(default_result)
        assert blob["angles"]["alpha_deg"] == pytest.approx(42.19825867319058)
        assert blob["improvement_argmax"]["index"] == 15
        assert len(blob["records"]) == 16


class TestImprovementCurve:
    def _result_with(self, improvements):
        base = m.run_campaign(m.ScenarioConfig(tx_count=len(improvements)))
        records = tuple(
            dataclasses.replace(r, improvement_db=v)
            for r, v in zip(base.records, improvements))
        return dataclasses.replace(base, records=records)

    def test_picks_the_maximum(self):
        curve = m.improvement_curve(self._result_with([1.0, 5.0, 3.0]))
        assert curve.argmax_index == 2
        assert curve.max_improvement_db == 5.0

    def test_first_wins_on_ties(self):
        curve = m.improvement_curve(self._result_with([4.0, 2.0, 4.0]))
        assert curve.argmax_index == 1


class TestSimulatePosition:
    def test_index_and_point_agree(self):
        cfg = m.ScenarioConfig()
        by_index = m.simulate_position(cfg, tx_index=16)
        by_point = m.simulate_position(cfg, tx=m.Point2(0.81, 4.75))
        assert by_point["path_loss_db"] == by_index["path_loss_db"]
        assert by_index["tx"] == [0.81, 4.75]

    def test_matches_the_campaign_arm(self, default_result):
        report = m.simulate_position(m.ScenarioConfig(), tx_index=16)
        assert report["path_loss_db"] == default_result.records[15].pl_with_db

    def test_panel_toggle(self, default_result):
        report = m.simulate_position(m.ScenarioConfig(), tx_index=16,
                                     panel_enabled=False)
        assert report["path_loss_db"] == default_result.records[15].pl_without_db
        assert report["panel_enabled"] is False

    def test_requires_exactly_one_transmitter_spec(self):
        cfg = m.ScenarioConfig()
        with pytest.raises(ValueError, match="exactly one"):
            m.simulate_position(cfg)
        with pytest.raises(ValueError, match="exactly one"):
            m.simulate_position(cfg, tx=m.Point2(0.81, 4.75), tx_index=1)
        with pytest.raises(ValueError, match="tx_index"):
            m.simulate_position(cfg, tx_index=17)

    def test_detuning_the_tilt_hurts(self):
        cfg = m.ScenarioConfig()
        tuned = m.simulate_position(cfg, tx_index=16)
        detuned = m.simulate_position(cfg, tx_index=16,
                                      alpha_rad=math.radians(60.0))
        assert detuned["alpha_used_deg"] == pytest.approx(60.0)
        assert detuned["path_loss_db"] > tuned["path_loss_db"] + 3.0
        # Solved angles are reported regardless of the override.
        assert detuned["angles"]["alpha_deg"] == pytest.approx(42.19825867319058)

    def test_report_shape(self):
        report = m.simulate_position(m.ScenarioConfig(), tx_index=7)
        assert report["los"] is False
        assert report["n_paths"] == len(report["paths"])
        for entry in report["paths"]:
            assert set(entry) >= {"walls", "length_m", "delay_ns", "gain_db"}


class TestRxAiming:
    def test_corner_aim_changes_the_bare_arm_only(self):
        matched = m.run_campaign(m.ScenarioConfig())
        cornered = m.run_campaign(m.ScenarioConfig(no_panel_rx_aim="corner"))
        with_same = [r.pl_with_db for r in matched.records]
        assert with_same == [r.pl_with_db for r in cornered.records]
        diffs = [abs(a.pl_without_db - b.pl_without_db)
                 for a, b in zip(matched.records, cornered.records)]
        assert max(diffs) > 1.0

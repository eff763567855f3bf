import json
import os

import pytest

from rabidecay import (
    ConfigError,
    ExperimentConfig,
    load_preset,
    parse_config_file,
    run_experiment,
    sweep,
)
from rabidecay.experiments import preset_names, resolve_out_dir

PRESETS = ["eid-sweep", "fig3a", "fig3b", "fig4", "fig5", "master-eq-baseline"]


def _write(tmp_path, text, name="exp.cfg"):
    path = tmp_path / name
    path.write_text(text)
    return path


BASIC = """\
# comment-only line

name = demo
model = distinguishable
model.omega = 1        # trailing comment
model.dt = 0.1
model.eta = 0.99
grid.periods = 4
grid.samples_per_period = 50
fit.window_periods = 4
fit.free_amplitude = true
sweep.axis = omega
sweep.values = 1, 2, 4
"""


class TestConfigParsing:
    def test_values_are_coerced(self, tmp_path):
        config = parse_config_file(_write(tmp_path, BASIC))
        assert config.name == "demo"
        assert config.model == "distinguishable"
        assert config.params["omega"] == 1
        assert config.params["dt"] == 0.1
        assert config.grid_periods == 4.0
        assert config.samples_per_period == 50
        assert config.fit["free_amplitude"] is True
        assert config.sweep_spec == {"axis": "omega", "values": [1, 2, 4]}

    def test_name_defaults_to_file_stem(self, tmp_path):
        path = _write(tmp_path, "model = closed-form\nmodel.omega = 1\n", "mystem.cfg")
        assert parse_config_file(path).name == "mystem"

    def test_unknown_key_is_named_in_error(self, tmp_path):
        path = _write(tmp_path, "model = closed-form\nmodel.bogus = 3\n")
        with pytest.raises(ConfigError, match="model.bogus"):
            parse_config_file(path)

    def test_unknown_section_rejected(self, tmp_path):
        path = _write(tmp_path, "model = closed-form\nnoise.level = 3\n")
        with pytest.raises(ConfigError, match="noise.level"):
            parse_config_file(path)

    def test_missing_model_rejected(self, tmp_path):
        path = _write(tmp_path, "name = x\ngrid.periods = 6\n")
        with pytest.raises(ConfigError, match="model"):
            parse_config_file(path)

    def test_empty_value_rejected(self, tmp_path):
        path = _write(tmp_path, "model = closed-form\nmodel.omega =\n")
        with pytest.raises(ConfigError, match="empty value"):
            parse_config_file(path)

    def test_line_without_equals_rejected(self, tmp_path):
        path = _write(tmp_path, "model closed-form\n")
        with pytest.raises(ConfigError, match="line 1"):
            parse_config_file(path)

    def test_missing_file_rejected(self, tmp_path):
        with pytest.raises(ConfigError):
            parse_config_file(tmp_path / "absent.cfg")

    def test_unknown_model_rejected(self):
        with pytest.raises(ConfigError, match="unknown model"):
            ExperimentConfig(name="x", model="psychic")

    def test_ladder_and_sweep_are_exclusive(self):
        with pytest.raises(ConfigError):
            ExperimentConfig(
                name="x",
                model="closed-form",
                params={"omega": 1.0, "dt": 0.01, "beta": 0.999},
                ladder={"base_omega": 1.0, "n_max": 2},
                sweep_spec={"axis": "omega", "values": [1.0, 2.0]},
            )


class TestPresets:
    def test_registry_is_sorted_and_complete(self):
        assert preset_names() == PRESETS

    def test_all_presets_load(self):
        for name in PRESETS:
            config = load_preset(name)
            assert config.name == name

    def test_unknown_preset_lists_choices(self):
        with pytest.raises(ConfigError, match="fig3a"):
            load_preset("fig9z")


class TestRunExperiment:
    def test_plain_run_produces_artifacts(self, tmp_path):
        report = run_experiment(load_preset("fig3a"), out_dir=tmp_path, plot=False)
        assert report.all_passed
        assert not report.any_nonconverged
        assert (tmp_path / "fig3a_report.json").is_file()
        csv = (tmp_path / "fig3a.csv").read_text().splitlines()
        assert csv[0] == "t,probability,fit_value"
        assert len(csv) > 200
        parsed = json.loads(report.to_json())
        assert parsed["targets"]["gamma_over_omega"]["passed"] is True

    def test_runs_are_deterministic(self, tmp_path):
        a = tmp_path / "a"
        b = tmp_path / "b"
        run_experiment(load_preset("fig3b"), out_dir=a, plot=False)
        run_experiment(load_preset("fig3b"), out_dir=b, plot=False)
        assert (a / "fig3b.csv").read_bytes() == (b / "fig3b.csv").read_bytes()

    def test_plot_file_is_written(self, tmp_path):
        run_experiment(load_preset("fig3a"), out_dir=tmp_path, plot=True)
        svg = tmp_path / "fig3a.svg"
        assert svg.is_file()
        assert svg.read_bytes().startswith(b"<?xml")

    def test_env_var_sets_default_out_dir(self, tmp_path, monkeypatch):
        monkeypatch.setenv("RABIDECAY_OUT", str(tmp_path / "from-env"))
        report = run_experiment(load_preset("fig3a"), plot=False)
        assert report.all_passed
        assert (tmp_path / "from-env" / "fig3a_report.json").is_file()

    def test_resolve_out_dir_precedence(self, monkeypatch):
        monkeypatch.delenv("RABIDECAY_OUT", raising=False)
        assert resolve_out_dir("explicit") == resolve_out_dir("explicit")
        assert str(resolve_out_dir(None)) == "rabidecay-out"
        monkeypatch.setenv("RABIDECAY_OUT", "via-env")
        assert str(resolve_out_dir(None)) == "via-env"
        assert str(resolve_out_dir("explicit")) == "explicit"

    def test_embedded_sweep_parallel_matches_sequential(self, tmp_path):
        config = load_preset("eid-sweep")
        seq = run_experiment(config, out_dir=tmp_path / "seq", workers=1, plot=False)
        par = run_experiment(config, out_dir=tmp_path / "par", workers=2, plot=False)
        assert [r["label"] for r in seq.runs] == [r["label"] for r in par.runs]
        assert [r["gamma"] for r in seq.runs] == [r["gamma"] for r in par.runs]
        for name in ("eid-sweep_omega_1.csv", "eid-sweep_omega_2.csv", "eid-sweep_omega_4.csv"):
            assert (tmp_path / "seq" / name).read_bytes() == (tmp_path / "par" / name).read_bytes()

    def test_sweep_element_failure_does_not_abort(self, tmp_path):
        config = ExperimentConfig(
            name="partly-broken",
            model="distinguishable",
            params={"omega": 1.0, "dt": 0.1},
            sweep_spec={"axis": "eta", "values": [0.99, 2.0]},
        )
        report = run_experiment(config, out_dir=tmp_path, plot=False)
        assert report.runs[0]["converged"]
        assert "error" in report.runs[1]
        assert report.any_nonconverged

    def test_ladder_without_dt_skips_characteristic_frequency(self, tmp_path):
        report = run_experiment(load_preset("master-eq-baseline"), out_dir=tmp_path, plot=False)
        assert "characteristic_frequency" not in report.derived
        assert report.all_passed

    def test_target_without_sweep_rejected(self, tmp_path):
        config = ExperimentConfig(
            name="x",
            model="closed-form",
            params={"omega": 1.0, "dt": 0.01, "beta": 0.999},
            targets={"slope": 2.0, "slope_tolerance": 0.1},
        )
        with pytest.raises(ConfigError, match="target.slope"):
            run_experiment(config, out_dir=tmp_path, plot=False)

    def test_missing_tolerance_rejected(self, tmp_path):
        config = ExperimentConfig(
            name="x",
            model="distinguishable",
            params={"omega": 1.0, "dt": 0.1, "eta": 0.99},
            targets={"gamma_over_omega": 0.05},
        )
        with pytest.raises(ConfigError, match="tolerance"):
            run_experiment(config, out_dir=tmp_path, plot=False)


class TestSweepFunction:
    def test_clean_drive_has_zero_decay(self, tmp_path):
        config = ExperimentConfig(
            name="clean",
            model="distinguishable",
            params={"omega": 1.0, "dt": 0.1},
        )
        reports = sweep(config, axis="eta", values=[1.0], out_dir=tmp_path, plot=False)
        assert len(reports) == 1
        assert reports[0].derived["gamma"] < 1e-10

    def test_order_is_preserved(self, tmp_path):
        config = ExperimentConfig(
            name="ordered",
            model="closed-form",
            params={"omega": 1.0, "dt": 0.01, "beta": 0.999},
        )
        reports = sweep(config, axis="omega", values=[4.0, 1.0, 2.0], out_dir=tmp_path, plot=False)
        assert [r.name for r in reports] == ["ordered_omega_4", "ordered_omega_1", "ordered_omega_2"]
        gammas = [r.derived["gamma"] for r in reports]
        assert gammas[0] > gammas[2] > gammas[1]

    def test_one_failure_does_not_abort_the_sweep(self, tmp_path):
        config = ExperimentConfig(
            name="mixed",
            model="distinguishable",
            params={"omega": 1.0, "dt": 0.1},
        )
        reports = sweep(config, axis="eta", values=[0.99, 2.0, 0.997], out_dir=tmp_path, plot=False)
        assert len(reports) == 3
        assert reports[0].all_passed
        assert not reports[1].all_passed and reports[1].any_nonconverged
        assert reports[2].all_passed
        assert (tmp_path / "mixed_eta_0.99_report.json").is_file()
        assert (tmp_path / "mixed_eta_0.997_report.json").is_file()
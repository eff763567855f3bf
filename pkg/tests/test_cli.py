import pytest

from rabidecay.cli import main

NONCONVERGENT = """\
name = stubborn
model = distinguishable
model.omega = 1.0
model.dt = 0.1
model.eta = 0.99
fit.init_omega = 1.3
fit.max_iterations = 2
"""

OFF_TARGET = """\
name = offtarget
model = distinguishable
model.omega = 1.0
model.dt = 0.1
model.eta = 0.99
target.gamma_over_omega = 0.2
target.gamma_over_omega_tolerance = 0.01
"""

SWEEPABLE = """\
name = three
model = closed-form
model.omega = 1.0
model.dt = 0.01
model.beta = 0.999
"""


def _cfg(tmp_path, text, name):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def test_simulate_preset_passes(tmp_path, capsys):
    code = main(["simulate", "fig3a", "--out", str(tmp_path), "--no-plot"])
    out = capsys.readouterr().out
    assert code == 0
    assert "PASS gamma_over_omega" in out
    assert f"outputs written to {tmp_path}" in out
    assert (tmp_path / "fig3a.csv").is_file()
    assert (tmp_path / "fig3a_report.json").is_file()
    assert not (tmp_path / "fig3a.svg").exists()


def test_simulate_config_file(tmp_path, capsys):
    code = main(["simulate", _cfg(tmp_path, SWEEPABLE, "three.cfg"),
                 "--out", str(tmp_path), "--no-plot"])
    assert code == 0
    assert "three [closed-form]" in capsys.readouterr().out


def test_unknown_preset_is_usage_error(tmp_path, capsys):
    code = main(["simulate", "fig9z", "--out", str(tmp_path)])
    assert code == 1
    assert "config error" in capsys.readouterr().err


def test_bad_config_file_is_usage_error(tmp_path, capsys):
    path = _cfg(tmp_path, "model = closed-form\nmodel.bogus = 1\n", "bad.cfg")
    code = main(["simulate", path, "--out", str(tmp_path)])
    assert code == 1
    assert "model.bogus" in capsys.readouterr().err


def test_missing_config_path_is_usage_error(tmp_path, capsys):
    code = main(["simulate", str(tmp_path / "nope.cfg"), "--out", str(tmp_path)])
    assert code == 1
    assert "not found" in capsys.readouterr().err


def test_nonconvergence_exits_2(tmp_path, capsys):
    path = _cfg(tmp_path, NONCONVERGENT, "stubborn.cfg")
    code = main(["simulate", path, "--out", str(tmp_path), "--no-plot"])
    assert code == 2
    assert "did not converge" in capsys.readouterr().out


def test_target_miss_exits_3(tmp_path, capsys):
    path = _cfg(tmp_path, OFF_TARGET, "offtarget.cfg")
    code = main(["simulate", path, "--out", str(tmp_path), "--no-plot"])
    assert code == 3
    assert "FAIL gamma_over_omega" in capsys.readouterr().out


def test_no_subcommand_is_usage_error(capsys):
    assert main([]) == 1
    assert "usage" in capsys.readouterr().err


def test_unknown_flag_is_usage_error(capsys):
    with pytest.raises(SystemExit) as info:
        main(["simulate", "fig3a", "--frobnicate"])
    assert info.value.code == 1


def test_sweep_with_explicit_axis_and_values(tmp_path, capsys):
    path = _cfg(tmp_path, SWEEPABLE, "three.cfg")
    code = main(["sweep", path, "--axis", "omega", "--values", "1,2,4",
                 "--out", str(tmp_path), "--no-plot"])
    assert code == 0
    out = capsys.readouterr().out
    for value in (1, 2, 4):
        assert f"three_omega_{value} [closed-form]" in out
        assert (tmp_path / f"three_omega_{value}_report.json").is_file()


def test_sweep_falls_back_to_config_block(tmp_path, capsys):
    code = main(["sweep", "eid-sweep", "--out", str(tmp_path), "--no-plot"])
    assert code == 0
    out = capsys.readouterr().out
    assert "eid-sweep_omega_1 [closed-form]" in out
    assert "eid-sweep_omega_4 [closed-form]" in out


def test_sweep_without_axis_is_usage_error(tmp_path, capsys):
    path = _cfg(tmp_path, SWEEPABLE, "three.cfg")
    code = main(["sweep", path, "--out", str(tmp_path), "--no-plot"])
    assert code == 1
    assert "sweep needs" in capsys.readouterr().err


def test_sweep_rejects_non_numeric_values(tmp_path, capsys):
    path = _cfg(tmp_path, SWEEPABLE, "three.cfg")
    code = main(["sweep", path, "--axis", "omega", "--values", "1,fast",
                 "--out", str(tmp_path), "--no-plot"])
    assert code == 1
    assert "numeric" in capsys.readouterr().err


def test_report_summarizes_directory(tmp_path, capsys):
    main(["simulate", "fig3a", "--out", str(tmp_path), "--no-plot"])
    capsys.readouterr()
    code = main(["report", str(tmp_path)])
    out = capsys.readouterr().out
    assert code == 0
    assert "fig3a [distinguishable]: 1/1 targets passed" in out


def test_report_propagates_failures(tmp_path, capsys):
    path = _cfg(tmp_path, OFF_TARGET, "offtarget.cfg")
    main(["simulate", path, "--out", str(tmp_path), "--no-plot"])
    capsys.readouterr()
    code = main(["report", str(tmp_path)])
    assert code == 3
    assert "0/1 targets passed" in capsys.readouterr().out


def test_report_on_missing_or_empty_dir(tmp_path, capsys):
    assert main(["report", str(tmp_path / "ghost")]) == 1
    assert main(["report", str(tmp_path)]) == 1
    err = capsys.readouterr().err
    assert "not a directory" in err
    assert "no reports found" in err
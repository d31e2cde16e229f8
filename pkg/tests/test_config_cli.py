import csv
import json
import math

import numpy as np
import pytest

from framehomodyne import cli, runner
from framehomodyne.config import SCHEMA, ConfigError, load_config, parse_config, preset_path
from framehomodyne.errors import QuadratureError
from framehomodyne.homodyne import cosine_fit

FIXTURES = __import__("pathlib").Path(__file__).parent / "fixtures"


def _preset(name):
    return json.loads(preset_path(name).read_text())


def _write(tmp_path, data, name="cfg.json"):
    p = tmp_path / name
    p.write_text(json.dumps(data))
    return str(p)


def _read_csv(path):
    with open(path) as fh:
        rows = list(csv.reader(fh))
    return rows[0], np.array(rows[1:], dtype=float)


def test_presets_carry_caption_parameters():
    c7, c8, c9, c10 = (load_config(n) for n in ("fig7", "fig8", "fig9", "fig10"))
    assert (c7.a, c7.center, c7.width, c7.offset) == (1.0, 1.0, 0.2, 1.0)
    assert c7.psi == pytest.approx(math.pi / 3)
    assert c8.scenario == c7.scenario and c8.psi == c7.psi
    assert (c9.a, c9.center, c9.width, c9.offset, c9.omega_min) == (1.0, 0.5, 0.2, 2.5, 1e-3)
    assert c9.psi == pytest.approx(math.pi / 4) and c9.delay == 2.5
    assert c10.omega_min == 1.0 and c10.scenario == "rindler_to_delayed"
    assert (c7.n_omega, c7.n_phi, c7.oracle_modes, c7.lo_amplitude) == (2048, 256, 128, 1e3)


@pytest.mark.parametrize("path,value,field", [
    (("a",), -1.0, "a"),
    (("wavepacket", "width"), 0.0, "wavepacket.width"),
    (("signal", "psi"), "tau/2", "signal.psi"),
    (("cutoffs", "omega_max"), 1e-4, "cutoffs.omega_max"),
    (("grid", "n_omega"), 2.5, "grid.n_omega"),
    (("schema",), "other/9", "schema"),
    (("scenario",), "inertial", "scenario"),
])
def test_invalid_fields_are_named(path, value, field):
    data = _preset("fig7")
    d = data
    for k in path[:-1]:
        d = d[k]
    d[path[-1]] = value
    with pytest.raises(ConfigError) as exc:
        parse_config(data)
    assert exc.value.field == field


def test_delay_required_for_delayed_scenario():
    data = _preset("fig9")
    del data["delay"]
    with pytest.raises(ConfigError, match="delay"):
        parse_config(data)


def test_psi_expressions():
    data = _preset("fig7")
    for expr, val in (("pi", math.pi), ("2*pi/3", 2 * math.pi / 3), (0.25, 0.25)):
        data["signal"]["psi"] = expr
        assert parse_config(data).psi == pytest.approx(val)


def test_missing_field_exit_code_and_message(tmp_path, capsys):
    data = _preset("fig7")
    del data["wavepacket"]["center"]
    assert cli.main(["sweep", _write(tmp_path, data), "--out-dir", str(tmp_path)]) == 2
    assert "wavepacket.center" in capsys.readouterr().err


def test_unreadable_config_exit_code(tmp_path):
    assert cli.main(["sweep", str(tmp_path / "nope.json")]) == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert cli.main(["validate", str(bad)]) == 2


def test_numeric_failure_exit_code(tmp_path, monkeypatch, capsys):
    def boom(*args, **kwargs):
        raise QuadratureError("did not converge", 1.0)

    monkeypatch.setattr(cli, "run_sweep", boom)
    assert cli.main(["sweep", "fig7", "--out-dir", str(tmp_path)]) == 3
    assert "QuadratureError" in capsys.readouterr().err


def test_sweep_fig7_csv_contract(tmp_path):
    assert cli.main(["sweep", "fig7", "--out-dir", str(tmp_path), "--seedless"]) == 0
    header, data = _read_csv(tmp_path / "fig7.csv")
    assert header == list(runner.CSV_COLUMNS)
    assert data.shape == (256, 7)
    assert np.ptp(data[:, 2]) < 1e-8
    assert (tmp_path / "fig7.png").stat().st_size > 0
    summary = json.loads((tmp_path / "fig7_summary.json").read_text())
    assert summary["self_ideal_coincidence"]["X_rel_diff"] < 1e-4
    with open(tmp_path / "fig7.csv") as fh:
        first = fh.readlines()[2].strip().split(",")
    assert all(len(v.replace("-", "").replace(".", "").lstrip("0").split("e")[0]) <= 17 for v in first)


@pytest.mark.parametrize("name", ["fig7", "fig8", "fig9", "fig10"])
def test_sweep_matches_frozen_fixture_bytes(tmp_path, name):
    runner.run_sweep(load_config(name), str(tmp_path), plot=False)
    assert (tmp_path / f"{name}.csv").read_bytes() == (FIXTURES / f"{name}.csv").read_bytes()


def test_repeated_runs_are_byte_identical(tmp_path):
    for d in ("a", "b"):
        assert cli.main(["sweep", "fig7", "--out-dir", str(tmp_path / d), "--n-phi", "16"]) == 0
    for f in ("fig7.csv", "fig7_summary.json", "fig7.png"):
        assert (tmp_path / "a" / f).read_bytes() == (tmp_path / "b" / f).read_bytes()
    _, data = _read_csv(tmp_path / "a" / "fig7.csv")
    assert data.shape == (16, 7)


def test_fig10_balanced_loses_amplitude(tmp_path):
    assert cli.main(["sweep", "fig10", "--out-dir", str(tmp_path), "--no-plot"]) == 0
    _, data = _read_csv(tmp_path / "fig10.csv")
    bal = cosine_fit(data[:, 0], data[:, 1])
    ideal = cosine_fit(data[:, 0], data[:, 5])
    assert bal[0] < ideal[0]
    assert abs(np.angle(np.exp(1j * (bal[1] - ideal[1])))) > 0.1


def test_transform_outputs_normalised_weights(tmp_path):
    assert cli.main(["transform", "fig7", "--out-dir", str(tmp_path)]) == 0
    header, data = _read_csv(tmp_path / "fig7_transform.csv")
    assert header[:2] == ["omega", "weight"]
    for re_, im in ((2, 3), (4, 5)):
        assert np.sum(data[:, 1] * (data[:, re_] ** 2 + data[:, im] ** 2)) == pytest.approx(1.0, rel=1e-12)
    info = json.loads((tmp_path / "fig7_transform.json").read_text())
    assert info["schema"] == SCHEMA and set(info["amplitudes"]) == {"right", "left"}


def test_validate_without_oracle(tmp_path, capsys):
    data = _preset("fig7")
    data["oracle"]["enabled"] = False
    assert cli.main(["validate", _write(tmp_path, data), "--out-dir", str(tmp_path)]) == 0
    report = json.loads((tmp_path / "fig7_validate.json").read_text())
    assert report["oracle"]["skipped"] and report["passed"]
    assert "oracle" in capsys.readouterr().out


def test_validate_coarse_grid_fails_commutator(tmp_path, capsys):
    data = _preset("fig7")
    data["oracle"]["enabled"] = False
    data["grid"]["n_omega"] = 32
    assert cli.main(["validate", _write(tmp_path, data), "--out-dir", str(tmp_path)]) == 1
    report = json.loads((tmp_path / "fig7_validate.json").read_text())
    chk = report["checks"]["commutator_unruh"]
    assert chk["passed"] is False and abs(chk["value"]) > chk["tolerance"]
    assert "commutator_unruh" in capsys.readouterr().err


def test_validate_default_config_passes(tmp_path):
    code = cli.main(["validate", "fig7", "--out-dir", str(tmp_path)])
    report = json.loads((tmp_path / "fig7_validate.json").read_text())
    failed = {k: c["value"] for k, c in report["checks"].items() if c["passed"] is False}
    assert code == 0, f"failed checks: {failed}"

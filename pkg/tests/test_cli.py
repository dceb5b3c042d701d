import json
import math

import pytest

from lifshitz_fidelity import geometry
from lifshitz_fidelity.cli import main


def run(args):
    return main(list(args))


def test_boundary_run_reports_closed_form(tmp_path):
    code = run(["boundary", "--N", "1", "--q", "1", "--H", "1", "--beta", "0",
                "--out", str(tmp_path)])
    assert code == 0
    doc = json.loads((tmp_path / "boundary.json").read_text())
    assert doc["results"]["xi_f_analytic"] == 0.125
    assert abs(doc["results"]["xi_f_fitted"] - 0.125) < 1e-6
    assert doc["config"]["H"] == 1.0
    assert doc["flags"] == [] and doc["invariants"] == []


def test_bulk_run_emits_volumes_and_susceptibility(tmp_path):
    code = run(["bulk", "--out", str(tmp_path), "--format", "csv"])
    assert code == 0
    doc = json.loads((tmp_path / "bulk.json").read_text())
    res = doc["results"]
    assert res["xi_f_holo"] == pytest.approx(math.sqrt(5) / (48 * math.pi), rel=1e-12)
    assert res["v_exact"] > 0 and res["v_series"] > 0
    csv_lines = (tmp_path / "bulk.csv").read_text().splitlines()
    header = [ln for ln in csv_lines if not ln.startswith("#")][0]
    assert header == "v_exact,v_exact_error,v_series,v_series_finite,xi_f_holo"


def test_match_run_reports_flags(tmp_path):
    code = run(["match", "--out", str(tmp_path)])
    assert code == 0
    doc = json.loads((tmp_path / "match.json").read_text())
    assert doc["results"]["residual"] <= 1e-10
    assert "negative-N" in doc["flags"]
    assert "negative-beta2-over-q" in doc["flags"]


def test_sweep_is_deterministic(tmp_path):
    args = ["sweep", "--axis", "Qt", "--from", "1", "--to", "10",
            "--points", "6", "--log"]
    out1, out2 = tmp_path / "a", tmp_path / "b"
    assert run(args + ["--out", str(out1)]) == 0
    assert run(args + ["--out", str(out2)]) == 0
    assert (out1 / "sweep.csv").read_bytes() == (out2 / "sweep.csv").read_bytes()


def test_sweep_concurrency_does_not_change_output(tmp_path):
    args = ["sweep", "--axis", "Qt", "--from", "1", "--to", "5", "--points", "5"]
    out1, out2 = tmp_path / "w1", tmp_path / "w4"
    assert run(args + ["--out", str(out1), "--workers", "1"]) == 0
    assert run(args + ["--out", str(out2), "--workers", "4"]) == 0
    assert (out1 / "sweep.csv").read_bytes() == (out2 / "sweep.csv").read_bytes()


def test_sweep_roundtrip_from_echoed_config(tmp_path):
    out1 = tmp_path / "first"
    assert run(["sweep", "--axis", "Qt", "--from", "1", "--to", "4",
                "--points", "4", "--log", "--out", str(out1)]) == 0
    echoed = [ln[2:] for ln in (out1 / "sweep.csv").read_text().splitlines()
              if ln.startswith("# ")]
    cfg_file = tmp_path / "replay.cfg"
    cfg_file.write_text("\n".join(echoed) + "\n")
    out2 = tmp_path / "second"
    assert run(["sweep", "--config", str(cfg_file), "--out", str(out2)]) == 0
    assert (out1 / "sweep.csv").read_bytes() == (out2 / "sweep.csv").read_bytes()


def test_sweep_values_match_direct_evaluation(tmp_path):
    from lifshitz_fidelity import BulkParams, xi_f_holo_z4

    assert run(["sweep", "--axis", "Qt", "--from", "1", "--to", "10",
                "--points", "5", "--log", "--out", str(tmp_path)]) == 0
    rows = [ln for ln in (tmp_path / "sweep.csv").read_text().splitlines()
            if not ln.startswith("#")]
    header = rows[0].split(",")
    qt_idx, xi_idx = header.index("Qt"), header.index("xi_f_holo")
    for line in rows[1:]:
        cells = line.split(",")
        qt = float(cells[qt_idx])
        expected = xi_f_holo_z4(BulkParams(Qt=qt, xi=-1.0))
        assert float(cells[xi_idx]) == pytest.approx(expected, rel=1e-11)
    # plot data mirrors the swept column
    plot = (tmp_path / "plot_xi_f_holo.dat").read_text().splitlines()
    assert len(plot) == 5 and all(len(ln.split()) == 2 for ln in plot)


def test_sweep_respects_boundary_axis(tmp_path):
    assert run(["sweep", "--axis", "H", "--from", "0.5", "--to", "2.0",
                "--points", "3", "--out", str(tmp_path)]) == 0
    rows = [ln for ln in (tmp_path / "sweep.csv").read_text().splitlines()
            if not ln.startswith("#")]
    assert rows[0].split(",")[0] == "H"
    assert "xi_f_analytic" in rows[0]


def test_config_file_with_flag_override(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("H = 2.0\nbeta = 0.5\n")
    out = tmp_path / "out"
    assert run(["boundary", "--config", str(cfg), "--H", "4.0", "--out", str(out)]) == 0
    doc = json.loads((out / "boundary.json").read_text())
    assert doc["config"]["H"] == 4.0   # flag wins
    assert doc["config"]["beta"] == 0.5


def test_unicode_and_alias_keys(tmp_path):
    out1, out2 = tmp_path / "u", tmp_path / "a"
    assert run(["match", "--Q̃", "2.0", "--ξ", "-0.5", "--out", str(out1)]) == 0
    assert run(["match", "--Qtilde", "2.0", "--xi", "-0.5", "--out", str(out2)]) == 0
    assert (out1 / "match.json").read_bytes() == (out2 / "match.json").read_bytes()


@pytest.mark.parametrize("args", [
    ["boundary", "--nonsense", "1"],
    ["boundary", "--rp", "2.0"],              # bulk key on a boundary run
    ["sweep", "--axis", "Qt"],                # missing range
    ["sweep", "--axis", "weird", "--from", "1", "--to", "2", "--points", "3"],
    ["sweep", "--axis", "Qt", "--from", "-1", "--to", "2", "--points", "3", "--log"],
    ["sweep", "--axis", "Qt", "--from", "1", "--to", "2", "--points", "1"],
    ["boundary", "--H"],                      # dangling flag
    ["boundary", "--H", "abc"],
    ["nonsense"],
])
def test_validation_failures_exit_1(tmp_path, args):
    assert run(args + ["--out", str(tmp_path)]) == 1


def test_numerical_failures_exit_2(tmp_path, capsys):
    # z != 4 breaks the closed-form susceptibility
    assert run(["bulk", "--z", "3.0", "--out", str(tmp_path)]) == 2
    assert "volume_series_z4" in capsys.readouterr().err
    # positive coupling breaks the dictionary
    assert run(["match", "--xi", "1.0", "--out", str(tmp_path)]) == 2
    assert "verify_duality" in capsys.readouterr().err
    # invalid parameter values are numerical domain failures, not usage errors
    assert run(["boundary", "--H", "-1.0", "--out", str(tmp_path)]) == 2


def test_verify_passes_on_correct_build(tmp_path):
    assert run(["verify", "--out", str(tmp_path)]) == 0
    doc = json.loads((tmp_path / "verify.json").read_text())
    assert doc["results"]["failures"] == 0
    assert len(doc["invariants"]) >= 18
    assert all(entry["passed"] for entry in doc["invariants"])


def test_verify_fails_under_fault_injection(tmp_path, monkeypatch):
    true_blackening = geometry.blackening

    def skewed(r, p):
        return true_blackening(r, p) + 1e-6

    monkeypatch.setattr(geometry, "blackening", skewed)
    assert run(["verify", "--out", str(tmp_path)]) != 0

import csv
import math
from pathlib import Path

import numpy as np
import pytest

from chronosim.cli import main
from _helpers import run_cli

DEMO_DIR = Path(__file__).resolve().parent.parent / "demos" / "scenarios"

HISTORY_TEMPLATE = """
kind = "history"
[clock]
levels = {levels}
dt = {dt}
[system]
diagonal = {diagonal}
initial_state = [[0.8, 0.0], [0.6, 0.0]]
[output]
csv = "{csv}"
"""


def read_rows(path):
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


def write_history(tmp_path, name, levels, dt, diagonal):
    csv_path = tmp_path / f"{name}.csv"
    scn = tmp_path / f"{name}.toml"
    scn.write_text(HISTORY_TEMPLATE.format(
        levels=levels, dt=dt, diagonal=diagonal, csv=csv_path))
    return scn, csv_path


# ---------------------------------------------------------------------------
# history pipeline
# ---------------------------------------------------------------------------

def test_history_frozen_system(tmp_path):
    scn, csv_path = write_history(tmp_path, "frozen", 8, 0.5, "[0.0, 0.0]")
    proc = run_cli("run", str(scn))
    assert proc.returncode == 0, proc.stderr
    header = csv_path.read_text().splitlines()[0]
    assert header == ("n,t,weight,fidelity_vs_oracle,schrodinger_residual,"
                      "constraint_residual_total")
    rows = read_rows(csv_path)
    assert len(rows) == 8
    for row in rows:
        assert abs(float(row["fidelity_vs_oracle"]) - 1.0) <= 1e-10
    interior = [float(r["schrodinger_residual"]) for r in rows[1:-1]]
    assert max(interior) <= 1e-12
    edge = [r["schrodinger_residual"] for r in (rows[0], rows[-1])]
    assert all(math.isnan(float(x)) for x in edge)


def test_history_lattice_matched_constraint(tmp_path):
    spacing = 2 * np.pi / (16 * 0.25)
    scn, csv_path = write_history(tmp_path, "matched", 16, 0.25,
                                  f"[0.0, {-3 * spacing!r}]")
    proc = run_cli("run", str(scn))
    assert proc.returncode == 0, proc.stderr
    rows = read_rows(csv_path)
    assert float(rows[0]["constraint_residual_total"]) <= 1e-10


def test_history_dt_halving_residual_ratio(tmp_path):
    # same period, doubled resolution: max residual falls by ~4
    scn_a, csv_a = write_history(tmp_path, "coarse", 16, 0.2, "[0.0, 1.0]")
    scn_b, csv_b = write_history(tmp_path, "fine", 32, 0.1, "[0.0, 1.0]")
    assert run_cli("run", str(scn_a)).returncode == 0
    assert run_cli("run", str(scn_b)).returncode == 0
    coarse = max(float(r["schrodinger_residual"]) for r in read_rows(csv_a)[1:-1])
    fine = max(float(r["schrodinger_residual"]) for r in read_rows(csv_b)[1:-1])
    assert 3.5 <= coarse / fine <= 4.5


# ---------------------------------------------------------------------------
# observers pipeline
# ---------------------------------------------------------------------------

def test_observers_reference_values(tmp_path):
    csv_path = tmp_path / "obs.csv"
    svg_path = tmp_path / "obs.svg"
    proc = run_cli("run", str(DEMO_DIR / "three_observers.toml"),
                   "--csv", str(csv_path), "--svg", str(svg_path))
    assert proc.returncode == 0, proc.stderr
    assert csv_path.read_text().splitlines()[0] == "label,E,C,tick_rate,l1_coherence,purity"
    rows = read_rows(csv_path)
    assert [r["label"] for r in rows] == ["A", "B", "C"]
    cs = [float(r["C"]) for r in rows]
    assert cs == pytest.approx([0.9048374180, 0.3678794412, 0.0497870684], abs=1e-9)
    purities = [float(r["purity"]) for r in rows]
    assert purities[0] > purities[1] > purities[2]
    svg = svg_path.read_text()
    assert svg.startswith("<?xml") and "<polyline" in svg


def test_observers_photon_profile(tmp_path):
    scn = tmp_path / "photon.toml"
    scn.write_text("""
kind = "observers"
[superposition]
alpha = 0.6
beta = 0.8
[[observer]]
label = "A"
entanglement = 0.1
[[observer]]
label = "B"
entanglement = 1.0
[[observer]]
label = "gamma"
entanglement = 3.0
tick_rate = "zero"
[output]
csv = "%s"
""" % (tmp_path / "photon.csv"))
    assert run_cli("run", str(scn)).returncode == 0
    rows = read_rows(tmp_path / "photon.csv")
    assert float(rows[2]["tick_rate"]) == 0.0


def test_observers_equal_entanglement_exit_2(tmp_path):
    scn = tmp_path / "equal.toml"
    scn.write_text("""
kind = "observers"
[superposition]
alpha = 0.6
beta = 0.8
[[observer]]
label = "A"
entanglement = 1.0
[[observer]]
label = "B"
entanglement = 1.0
[[observer]]
label = "C"
entanglement = 3.0
[output]
csv = "x.csv"
""")
    proc = run_cli("run", str(scn))
    assert proc.returncode == 2
    assert "strictly increasing" in proc.stderr


# ---------------------------------------------------------------------------
# unified pipeline and domain errors
# ---------------------------------------------------------------------------

def test_unified_flat_worldline(tmp_path):
    scn = tmp_path / "flat.toml"
    csv_path = tmp_path / "flat.csv"
    scn.write_text(f"""
kind = "unified"
[worldline]
t1 = 4.0
[grid]
points = 9
[output]
csv = "{csv_path}"
""")
    assert run_cli("run", str(scn)).returncode == 0
    assert csv_path.read_text().splitlines()[0] == "t,tau,radicand,error_estimate"
    for row in read_rows(csv_path):
        assert float(row["tau"]) == pytest.approx(float(row["t"]), abs=1e-12)
        assert float(row["radicand"]) == 1.0


def test_unified_constant_velocity_final_tau(tmp_path):
    scn = tmp_path / "v06.toml"
    csv_path = tmp_path / "v06.csv"
    scn.write_text(f"""
kind = "unified"
[worldline]
t1 = 10.0
v = 0.6
[output]
csv = "{csv_path}"
""")
    assert run_cli("run", str(scn)).returncode == 0
    rows = read_rows(csv_path)
    assert rows[0]["tau"] == "0"
    assert float(rows[-1]["tau"]) == pytest.approx(8.0, abs=1e-9)
    assert float(rows[-1]["error_estimate"]) <= 1e-8


@pytest.mark.parametrize("worldline, term", [
    ("gm = 1.0\nr = 1.5", "gravitational term"),
    ("v = 1.5", "kinematic term"),
    ("hubble = 2.0\nr = 1.0", "cosmological term"),
])
def test_unified_domain_errors_exit_3(tmp_path, worldline, term):
    scn = tmp_path / "bad.toml"
    csv_path = tmp_path / "bad.csv"
    scn.write_text(f"""
kind = "unified"
[worldline]
t1 = 5.0
{worldline}
[output]
csv = "{csv_path}"
""")
    proc = run_cli("run", str(scn))
    assert proc.returncode == 3
    assert term in proc.stderr
    assert not csv_path.exists()  # no numeric output on domain errors


# ---------------------------------------------------------------------------
# cosmo pipeline
# ---------------------------------------------------------------------------

def test_cosmo_constant_universe(tmp_path):
    scn = tmp_path / "static.toml"
    csv_path = tmp_path / "static.csv"
    scn.write_text(f"""
kind = "cosmo"
scale_factor = "constant"
t1 = 3.0
points = 7
[output]
csv = "{csv_path}"
""")
    assert run_cli("run", str(scn)).returncode == 0
    assert (csv_path.read_text().splitlines()[0]
            == "t,tau,closed_form_tau_if_available,abs_diff")
    for row in read_rows(csv_path):
        assert float(row["tau"]) == pytest.approx(float(row["t"]), abs=1e-12)
        assert float(row["abs_diff"]) <= 1e-12


def test_cosmo_exponential_closed_form(tmp_path):
    csv_path = tmp_path / "cosmo.csv"
    proc = run_cli("run", str(DEMO_DIR / "cosmo_exponential.toml"),
                   "--csv", str(csv_path))
    assert proc.returncode == 0, proc.stderr
    rows = read_rows(csv_path)
    assert all(float(r["abs_diff"]) <= 1e-8 for r in rows)
    mid = next(r for r in rows if float(r["t"]) == pytest.approx(1.0))
    assert float(mid["tau"]) == pytest.approx(0.632120558829, abs=1e-8)


def test_cosmo_exponential_saturates(tmp_path):
    scn = tmp_path / "sat.toml"
    csv_path = tmp_path / "sat.csv"
    scn.write_text(f"""
kind = "cosmo"
scale_factor = "exponential"
hubble = 0.5
t1 = 100.0
points = 51
[output]
csv = "{csv_path}"
""")
    assert run_cli("run", str(scn)).returncode == 0
    rows = read_rows(csv_path)
    taus = [float(r["tau"]) for r in rows]
    assert all(t < 2.0 + 1e-8 for t in taus)  # plateau below 1/H = 2
    assert taus[-1] == pytest.approx(2.0, abs=1e-6)


def test_cosmo_nonpositive_scale_factor_exit_3(tmp_path):
    scn = tmp_path / "shrink.toml"
    scn.write_text("""
kind = "cosmo"
scale_factor = "tabulated"
table = [[0.0, 1.0], [2.0, -1.0]]
t1 = 2.0
[output]
csv = "x.csv"
""")
    proc = run_cli("run", str(scn))
    assert proc.returncode == 3
    assert "scale factor" in proc.stderr


# ---------------------------------------------------------------------------
# flags, determinism, diagnostics
# ---------------------------------------------------------------------------

def test_byte_identical_reruns(tmp_path):
    for demo in ("history_qubit.toml", "unified_combined.toml"):
        csv_path = tmp_path / f"{demo}.csv"
        first = run_cli("run", str(DEMO_DIR / demo), "--csv", str(csv_path))
        assert first.returncode == 0, first.stderr
        blob_a = csv_path.read_bytes()
        second = run_cli("run", str(DEMO_DIR / demo), "--csv", str(csv_path))
        assert second.returncode == 0
        assert csv_path.read_bytes() == blob_a


def test_csv_uses_lf_line_endings(tmp_path):
    csv_path = tmp_path / "obs.csv"
    run_cli("run", str(DEMO_DIR / "three_observers.toml"), "--csv", str(csv_path))
    blob = csv_path.read_bytes()
    assert b"\r" not in blob
    assert blob.endswith(b"\n")


def test_quiet_flag_suppresses_summary(tmp_path):
    csv_path = tmp_path / "quiet.csv"
    proc = run_cli("run", str(DEMO_DIR / "coherence_sweep.toml"),
                   "--csv", str(csv_path), "--quiet")
    assert proc.returncode == 0
    assert proc.stdout == ""


def test_tol_flag_threads_through(tmp_path):
    csv_path = tmp_path / "tol.csv"
    proc = run_cli("run", str(DEMO_DIR / "cosmo_exponential.toml"),
                   "--csv", str(csv_path), "--tol", "1e-4")
    assert proc.returncode == 0
    rows = read_rows(csv_path)
    assert all(float(r["abs_diff"]) <= 1e-4 for r in rows)


def test_missing_csv_path_is_config_error(tmp_path):
    scn = tmp_path / "nocsv.toml"
    scn.write_text("""
kind = "coherence-sweep"
[sweep]
points = 5
""")
    proc = run_cli("run", str(scn))
    assert proc.returncode == 2
    assert "--csv" in proc.stderr


def test_invalid_toml_exits_2(tmp_path):
    scn = tmp_path / "broken.toml"
    scn.write_text('kind = "unclosed\n')
    assert run_cli("run", str(scn)).returncode == 2


def test_stderr_has_no_ansi_when_piped(tmp_path):
    scn = tmp_path / "bad.toml"
    scn.write_text('kind = "wormhole"\n')
    proc = run_cli("run", str(scn))
    assert "\x1b[" not in proc.stderr


def test_no_color_env_disables_ansi(tmp_path, monkeypatch, capsys):
    # in-process: force a tty-looking stderr, then verify the env override
    monkeypatch.setenv("CHRONO_NO_COLOR", "1")
    monkeypatch.setattr("sys.stderr.isatty", lambda: True, raising=False)
    scn = tmp_path / "bad.toml"
    scn.write_text('kind = "wormhole"\n')
    code = main(["run", str(scn)])
    assert code == 2
    assert "\x1b[" not in capsys.readouterr().err


def test_internal_errors_exit_1(tmp_path, monkeypatch):
    scn = tmp_path / "ok.toml"
    scn.write_text(f"""
kind = "coherence-sweep"
[sweep]
points = 5
[output]
csv = "{tmp_path / 'out.csv'}"
""")
    import chronosim.cli as cli_mod

    def boom(*args, **kwargs):
        raise RuntimeError("simulated crash")

    monkeypatch.setattr(cli_mod, "_run_coherence_sweep", boom)
    assert main(["run", str(scn), "--quiet"]) == 1

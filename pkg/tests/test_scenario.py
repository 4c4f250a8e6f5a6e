from pathlib import Path

import numpy as np
import pytest

from chronosim import ConfigError, DomainError
from chronosim.scenario import (
    CosmoScenario,
    HistoryScenario,
    ObserversScenario,
    UnifiedScenario,
    parse_scenario,
)

DEMO_DIR = Path(__file__).resolve().parent.parent / "demos" / "scenarios"


def write(tmp_path, text):
    path = tmp_path / "scn.toml"
    path.write_text(text)
    return str(path)


# ---------------------------------------------------------------------------
# the shipped demo scenarios stay parseable
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("name", sorted(p.name for p in DEMO_DIR.glob("*.toml")))
def test_demo_scenarios_parse(name):
    scn = parse_scenario(str(DEMO_DIR / name))
    assert scn.kind in ("history", "observers", "dilation", "cosmo",
                        "unified", "coherence-sweep")
    assert scn.csv


def test_demo_history_qubit_is_lattice_matched():
    scn = parse_scenario(str(DEMO_DIR / "history_qubit.toml"))
    payload = scn.payload
    assert isinstance(payload, HistoryScenario)
    spacing = 2 * np.pi / (payload.clock.N * payload.clock.dt)
    evals = np.diag(payload.H_S.entries).real
    assert evals[1] == pytest.approx(-3 * spacing, abs=1e-12)


# ---------------------------------------------------------------------------
# strictness
# ---------------------------------------------------------------------------

def test_unknown_top_level_key_rejected(tmp_path):
    path = write(tmp_path, """
kind = "coherence-sweep"
typo = 1
[sweep]
points = 10
[output]
csv = "x.csv"
""")
    with pytest.raises(ConfigError, match="typo"):
        parse_scenario(path)


def test_unknown_nested_key_rejected(tmp_path):
    path = write(tmp_path, """
kind = "history"
[clock]
levels = 4
dt = 0.5
tick = 1.0
[system]
diagonal = [0.0, 1.0]
initial_state = [1.0, 0.0]
[output]
csv = "x.csv"
""")
    with pytest.raises(ConfigError, match=r"clock.*tick"):
        parse_scenario(path)


def test_missing_required_key(tmp_path):
    path = write(tmp_path, """
kind = "history"
[clock]
levels = 4
[system]
diagonal = [0.0, 1.0]
initial_state = [1.0, 0.0]
""")
    with pytest.raises(ConfigError, match="clock.dt"):
        parse_scenario(path)


def test_invalid_toml_syntax(tmp_path):
    path = write(tmp_path, 'kind = "history\n')
    with pytest.raises(ConfigError, match="invalid TOML"):
        parse_scenario(path)


def test_missing_file():
    with pytest.raises(ConfigError, match="not found"):
        parse_scenario("/nonexistent/zzz.toml")


def test_unknown_kind(tmp_path):
    path = write(tmp_path, 'kind = "wormhole"\n')
    with pytest.raises(ConfigError, match="kind"):
        parse_scenario(path)


def test_wrong_type_rejected(tmp_path):
    path = write(tmp_path, """
kind = "cosmo"
scale_factor = "exponential"
hubble = "fast"
t1 = 1.0
""")
    with pytest.raises(ConfigError, match="hubble"):
        parse_scenario(path)


def test_seed_key_accepted(tmp_path):
    path = write(tmp_path, """
kind = "coherence-sweep"
seed = 42
[sweep]
points = 5
[output]
csv = "x.csv"
""")
    assert parse_scenario(path).seed == 42


# ---------------------------------------------------------------------------
# history specifics
# ---------------------------------------------------------------------------

def test_history_requires_exactly_one_hamiltonian_form(tmp_path):
    base = """
kind = "history"
[clock]
levels = 4
dt = 0.5
[system]
{system}
initial_state = [1.0, 0.0]
[output]
csv = "x.csv"
"""
    both = base.format(system="diagonal = [0.0, 1.0]\nmatrix = [[0.0, 0.0], [0.0, 1.0]]")
    with pytest.raises(ConfigError, match="exactly one"):
        parse_scenario(write(tmp_path, both))
    neither = base.format(system="")
    with pytest.raises(ConfigError, match="exactly one"):
        parse_scenario(write(tmp_path, neither))


def test_history_hermitian_matrix_form(tmp_path):
    path = write(tmp_path, """
kind = "history"
[clock]
levels = 4
dt = 0.5
[system]
matrix = [[[0.0, 0.0], [0.5, -0.5]], [[0.5, 0.5], [1.0, 0.0]]]
initial_state = [1.0, 0.0]
[output]
csv = "x.csv"
""")
    scn = parse_scenario(path)
    H = scn.payload.H_S.entries
    assert H[0, 1] == pytest.approx(0.5 - 0.5j)
    assert H[1, 0] == pytest.approx(0.5 + 0.5j)


def test_history_non_hermitian_matrix_rejected(tmp_path):
    path = write(tmp_path, """
kind = "history"
[clock]
levels = 4
dt = 0.5
[system]
matrix = [[0.0, 1.0], [0.0, 0.0]]
initial_state = [1.0, 0.0]
[output]
csv = "x.csv"
""")
    with pytest.raises(ConfigError, match="hermitian"):
        parse_scenario(path)


def test_history_initial_state_normalized(tmp_path):
    path = write(tmp_path, """
kind = "history"
[clock]
levels = 4
dt = 0.5
[system]
diagonal = [0.0, 1.0]
initial_state = [1.0, 1.0]
[output]
csv = "x.csv"
""")
    psi0 = parse_scenario(path).payload.psi0
    assert psi0.is_normalized()


def test_history_dimension_mismatch(tmp_path):
    path = write(tmp_path, """
kind = "history"
[clock]
levels = 4
dt = 0.5
[system]
diagonal = [0.0, 1.0, 2.0]
initial_state = [1.0, 0.0]
[output]
csv = "x.csv"
""")
    with pytest.raises(ConfigError, match="dim"):
        parse_scenario(path)


# ---------------------------------------------------------------------------
# observers specifics
# ---------------------------------------------------------------------------

OBSERVERS_TEMPLATE = """
kind = "observers"
[superposition]
alpha = {alpha}
beta = {beta}
[[observer]]
label = "A"
entanglement = {ea}
[[observer]]
label = "B"
entanglement = {eb}
[[observer]]
label = "C"
entanglement = {ec}
[output]
csv = "x.csv"
"""


def test_observers_happy_path(tmp_path):
    path = write(tmp_path, OBSERVERS_TEMPLATE.format(
        alpha="[0.6, 0.0]", beta="[0.0, 0.8]", ea=0.1, eb=1.0, ec=3.0))
    scn = parse_scenario(path)
    assert isinstance(scn.payload, ObserversScenario)
    assert scn.payload.beta == pytest.approx(0.8j)


def test_observers_equal_entanglement_rejected(tmp_path):
    path = write(tmp_path, OBSERVERS_TEMPLATE.format(
        alpha="0.6", beta="0.8", ea=1.0, eb=1.0, ec=3.0))
    with pytest.raises(ConfigError, match="strictly increasing"):
        parse_scenario(path)


def test_observers_wrong_count_rejected(tmp_path):
    path = write(tmp_path, """
kind = "observers"
[superposition]
alpha = 0.6
beta = 0.8
[[observer]]
label = "A"
entanglement = 0.1
[output]
csv = "x.csv"
""")
    with pytest.raises(ConfigError, match="exactly 3"):
        parse_scenario(path)


def test_complex_value_forms(tmp_path):
    path = write(tmp_path, OBSERVERS_TEMPLATE.format(
        alpha="0.6", beta="[0.48, 0.64]", ea=0.1, eb=1.0, ec=3.0))
    scn = parse_scenario(path)
    assert scn.payload.alpha == pytest.approx(0.6)
    assert scn.payload.beta == pytest.approx(0.48 + 0.64j)
    bad = write(tmp_path, OBSERVERS_TEMPLATE.format(
        alpha='"big"', beta="0.8", ea=0.1, eb=1.0, ec=3.0))
    with pytest.raises(ConfigError, match="alpha"):
        parse_scenario(bad)


# ---------------------------------------------------------------------------
# unified / cosmo specifics
# ---------------------------------------------------------------------------

def test_unified_domain_violation_is_domain_error(tmp_path):
    path = write(tmp_path, """
kind = "unified"
[worldline]
t1 = 5.0
gm = 1.0
r = 1.5
[output]
csv = "x.csv"
""")
    with pytest.raises(DomainError, match="gravitational term"):
        parse_scenario(path)


def test_unified_tabulated_velocity(tmp_path):
    path = write(tmp_path, """
kind = "unified"
[worldline]
t1 = 10.0
v = [[0.0, 0.0], [10.0, 0.9]]
[output]
csv = "x.csv"
""")
    scn = parse_scenario(path)
    assert isinstance(scn.payload, UnifiedScenario)
    assert scn.payload.spec.tick_rate(0.0) == pytest.approx(1.0)


def test_cosmo_presets(tmp_path):
    path = write(tmp_path, """
kind = "cosmo"
scale_factor = "tabulated"
table = [[0.0, 1.0], [2.0, 3.0]]
t1 = 2.0
[output]
csv = "x.csv"
""")
    scn = parse_scenario(path)
    assert isinstance(scn.payload, CosmoScenario)
    assert scn.payload.table.shape == (2, 2)
    bad = write(tmp_path, """
kind = "cosmo"
scale_factor = "bouncing"
t1 = 2.0
""")
    with pytest.raises(ConfigError, match="scale_factor"):
        parse_scenario(bad)


def test_cosmo_exponential_requires_hubble(tmp_path):
    path = write(tmp_path, """
kind = "cosmo"
scale_factor = "exponential"
t1 = 2.0
[output]
csv = "x.csv"
""")
    with pytest.raises(ConfigError, match="hubble"):
        parse_scenario(path)

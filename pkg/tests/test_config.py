import pytest
from hypothesis import given
from hypothesis import strategies as st

from diamond_bath.config import (
    PRESETS,
    ConfigError,
    Scenario,
    Sweep,
    TimeGrid,
    format_config,
    get_preset,
    list_presets,
    load_config,
    parse_config,
)
from diamond_bath.spin_model import ClusterParams

MINIMAL = """
cluster.J = -1
cluster.Jz = 1
cluster.J0 = 1   # side coupling
bath.lambda = 0.01
bath.s = 2
bath.omega_c = 20
bath.beta = 1
grid.t_end = 5
grid.n_points = 11
"""


def test_minimal_config_defaults():
    sc = parse_config(MINIMAL)
    assert sc.cluster.J == -1 and sc.cluster.h == 0
    assert sc.bath.s == 2
    assert sc.grid.t_start == 0 and sc.grid.values()[-1] == 5
    assert sc.is_psi_I and sc.sweep is None
    assert sc.outputs == ("negativity", "gamma", "delta")


@pytest.mark.parametrize(
    "extra, message",
    [
        ("bath.colour = red", "unknown key"),
        ("bath.s = 3", "duplicate key"),
        ("no equals sign", "expected 'key = value'"),
        ("bath.s2 = 1", "unknown key"),
        ("sweep.param = s", "without sweep.values"),
        ("sweep.values = 1, 2", "without sweep.param"),
        ("outputs = negativity, entropy", "outputs"),
        ("quad.rtol = 0", "quad.rtol"),
        ("initial.state = random", "initial.state"),
        ("initial.amplitudes = 1, 2", "initial.state is psi_I"),
    ],
)
def test_rejects_malformed(extra, message):
    with pytest.raises(ConfigError, match=message):
        parse_config(MINIMAL + extra + "\n")


@pytest.mark.parametrize(
    "old, new",
    [
        ("bath.beta = 1", "bath.beta = -1"),
        ("bath.s = 2", "bath.s = abc"),
        ("grid.n_points = 11", "grid.n_points = 1"),
        ("grid.n_points = 11", "grid.n_points = 2.5"),
        ("grid.t_end = 5", "grid.t_end = 0"),
        ("cluster.J = -1", "cluster.J = nan"),
    ],
)
def test_rejects_invalid_values(old, new):
    with pytest.raises(ConfigError):
        parse_config(MINIMAL.replace(old, new))


def test_missing_keys_listed():
    with pytest.raises(ConfigError, match="bath.beta"):
        parse_config(MINIMAL.replace("bath.beta = 1", ""))


def test_sweep_values_validated():
    with pytest.raises(ConfigError, match="beta"):
        parse_config(MINIMAL + "sweep.param = beta\nsweep.values = 1, -2\n")


def test_explicit_state_normalised():
    amps = ", ".join(["1"] + ["0"] * 14 + ["1j"])
    sc = parse_config(MINIMAL + "initial.state = explicit\ninitial.amplitudes = " + amps + "\n")
    psi = sc.initial_state()
    assert abs(psi[0]) == pytest.approx(2**-0.5)
    assert psi[15] == pytest.approx(1j * 2**-0.5)
    for bad in (", ".join(["1"] * 15), ", ".join(["0"] * 16), ", ".join(["x"] * 16)):
        with pytest.raises(ConfigError):
            parse_config(MINIMAL + "initial.state = explicit\ninitial.amplitudes = " + bad + "\n")


def test_load_config_missing_file(tmp_path):
    with pytest.raises(ConfigError, match="cannot read"):
        load_config(tmp_path / "absent.cfg")


@pytest.mark.parametrize("name", sorted(PRESETS))
def test_presets_round_trip(name):
    sc = get_preset(name)
    assert parse_config(format_config(sc)) == sc


@given(
    st.floats(-3, 3), st.floats(0.1, 5), st.floats(1e-3, 1), st.integers(2, 50),
    st.lists(st.floats(0.1, 10), min_size=1, max_size=4),
    st.lists(st.complex_numbers(max_magnitude=2, allow_nan=False, allow_infinity=False), min_size=16, max_size=16),
)
def test_round_trip_arbitrary(J, s, lam, n, betas, amps):
    base = parse_config(MINIMAL)
    if not any(amps):
        amps[0] = 1
    sc = Scenario(
        ClusterParams(J, 0.5, 1.0, 0.1, -0.2),
        base.bath.replace(s=s, lam=lam),
        TimeGrid(0.5, 3.0, n),
        initial=tuple(amps),
        sweep=Sweep("beta", tuple(betas)),
        outputs=("purity", "gamma"),
        rtol=1e-9,
    )
    assert parse_config(format_config(sc)) == sc


def test_preset_listing():
    names = [name for name, _ in list_presets()]
    assert names == ["fig2", "fig3", "fig4", "fig5"]
    with pytest.raises(ConfigError):
        get_preset("fig9")

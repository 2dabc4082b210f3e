import json

import pytest
import scipy.constants

from rotframe.config import (
    MODES,
    apply_overrides,
    load_config,
    load_experiment,
    parse_config,
    validate_config,
)
from rotframe.core import ConfigError


def sagnac_document(**extra) -> dict:
    document = {
        "mode": "sagnac",
        "units": "natural",
        "setup": {"mass": 1.0, "omega": [0.0, 0.0, 1.0]},
        "path": {"vertices": [[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [1.0, 1.0, 0.0], [0.0, 1.0, 0.0]]},
    }
    document.update(extra)
    return document


def packet_document(**hamiltonian) -> dict:
    return {
        "mode": "propagate",
        "units": "natural",
        "setup": {"mass": 1.0, "omega": [0.0, 0.0, 0.2]},
        "grid": {"points": [16, 16], "spacing": [0.5, 0.5]},
        "packet": {"center": [1.0, 0.0], "width": 1.0},
        "hamiltonian": hamiltonian,
        "integrator": {"dt": 0.01, "steps": 10},
    }


def test_shipped_configs_parse(configs_dir):
    paths = sorted(configs_dir.glob("*.json"))
    assert paths
    for path in paths:
        config = load_experiment(path)
        assert config.mode in MODES
        assert config.mode == json.loads(path.read_text())["mode"]


def test_defaults_are_filled_in():
    config = parse_config(sagnac_document())
    assert config.seed == 0
    assert config.path.subdivisions == 1
    assert config.gauge.rest_frame
    assert config.output.directory == "out"
    assert config.source["hamiltonian"]["boundary"] == "periodic"


def test_si_units_take_constants_from_scipy():
    config = parse_config(sagnac_document(units="si"))
    assert config.setup.hbar == scipy.constants.hbar
    assert config.setup.c == scipy.constants.c


def test_explicit_constants_win():
    document = sagnac_document(units="si")
    document["setup"]["hbar"] = 2.0
    assert parse_config(document).setup.hbar == 2.0


def test_units_must_be_declared():
    document = sagnac_document()
    del document["units"]
    with pytest.raises(ConfigError, match="units"):
        parse_config(document)
    assert parse_config(document, units="natural").units == "natural"


def test_command_line_mode_wins():
    config = parse_config(sagnac_document(), mode="spin-orbit")
    assert config.mode == "spin-orbit"
    assert config.source["mode"] == "spin-orbit"


def test_unknown_mode():
    with pytest.raises(ConfigError, match="mode"):
        parse_config(sagnac_document(), mode="bogus")
    with pytest.raises(ConfigError, match="mode"):
        validate_config(sagnac_document(mode="bogus"))


def test_bad_value_names_the_field():
    document = sagnac_document()
    document["setup"]["mass"] = -1.0
    with pytest.raises(ConfigError, match=r"setup\.mass"):
        parse_config(document)


def test_extra_keys_are_rejected():
    with pytest.raises(ConfigError, match="bogus"):
        parse_config(sagnac_document(bogus=1))


def test_mode_needs_its_tables():
    with pytest.raises(ConfigError, match="grid"):
        parse_config(sagnac_document(), mode="propagate")


def test_circle_path():
    document = sagnac_document(path={"circle": {"radius": 2.0, "sides": 8}, "subdivisions": 3})
    path = parse_config(document).path
    assert len(path.vertices) == 8
    assert path.subdivisions == 3


def test_vertices_and_circle_are_exclusive():
    document = sagnac_document()
    document["path"]["circle"] = {"radius": 1.0, "sides": 4}
    with pytest.raises(ConfigError, match="path"):
        parse_config(document)


def test_degenerate_path_names_the_section():
    document = sagnac_document(path={"vertices": [[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 0.0]]})
    with pytest.raises(ConfigError, match="path"):
        parse_config(document)


def test_grid_axes_must_agree():
    document = packet_document()
    document["grid"]["spacing"] = [0.5]
    with pytest.raises(ConfigError, match=r"grid\.spacing"):
        parse_config(document)
    document["grid"] = {"points": [16, 16], "spacing": [0.5, 0.5], "origin": [0.0]}
    with pytest.raises(ConfigError, match="grid"):
        parse_config(document)


def test_grid_is_centered_by_default():
    grid = parse_config(packet_document()).grid
    assert grid.origin == (-4.0, -4.0)
    assert grid.periodic
    assert not parse_config(packet_document(boundary="sponge")).grid.periodic


def test_spin_packets_default_to_spin_up():
    assert parse_config(packet_document()).packet.spinor is None
    packet = parse_config(packet_document(spin=True)).packet
    assert packet.spinor == [1.0, 0.0]
    assert packet.momentum == []


def test_spinor_entries():
    document = packet_document(spin=True)
    document["packet"]["spinor"] = [[0.0, 1.0], 1.0]
    assert parse_config(document).packet.spinor == [1.0j, 1.0]
    document["packet"]["spinor"] = [0.0, [0.0, 0.0]]
    with pytest.raises(ConfigError, match="spinor"):
        parse_config(document)


def test_overrides_apply_to_a_copy():
    raw = sagnac_document()
    updated = apply_overrides(raw, ["setup.mass=2", "units=si"])
    assert raw["setup"]["mass"] == 1.0
    assert updated["setup"]["mass"] == 2
    assert updated["units"] == "si"
    assert parse_config(updated).setup.mass == 2.0


@pytest.mark.parametrize("override", ["setup.mass", "=2", "grid.points=[8, 8]", "setup..[=1"])
def test_bad_overrides(override):
    with pytest.raises(ConfigError):
        apply_overrides(sagnac_document(), [override])


def test_load_config_errors(tmp_path, write_config):
    with pytest.raises(ConfigError, match="cannot read"):
        load_config(tmp_path / "missing.json")
    broken = tmp_path / "broken.json"
    broken.write_text("{")
    with pytest.raises(ConfigError):
        load_config(broken)
    with pytest.raises(ConfigError, match="table"):
        load_config(write_config([1, 2]))


def test_load_experiment_with_overrides(write_config):
    path = write_config(sagnac_document())
    config = load_experiment(path, ["setup.omega=[0, 0, 2]"], units="natural")
    assert list(config.setup.omega) == [0.0, 0.0, 2.0]

import json

import pytest

from nhscope.config import (
    PRESETS,
    CommandType,
    ConfigManager,
    ModelVariant,
    ScopeSettings,
    load_config,
)
from nhscope.exceptions import ConfigError


def write(tmp_path, data, name="run.json"):
    path = tmp_path / name
    path.write_text(json.dumps(data), encoding="utf-8")
    return path


TWO_LEVEL = {
    "command": "sweep",
    "model": {"variant": "two_level"},
    "grid": {"axis": "gamma", "lo": 0.01, "hi": 3, "steps": 300},
}


def test_two_level_file_is_valid(tmp_path):
    config = load_config(write(tmp_path, TWO_LEVEL))
    assert config.command == CommandType.SWEEP
    assert config.model.variant == ModelVariant.TWO_LEVEL
    assert config.grid.steps == 300
    assert config.detector.w == 10
    assert config.model.to_spec().params == {"gamma": 1.0}


def test_too_few_steps_names_the_field(tmp_path):
    data = {**TWO_LEVEL, "grid": {**TWO_LEVEL["grid"], "steps": 1}}
    with pytest.raises(ConfigError) as info:
        load_config(write(tmp_path, data))
    assert info.value.field == "grid.steps"


def test_unknown_key_lists_valid_keys(tmp_path):
    with pytest.raises(ConfigError) as info:
        load_config(write(tmp_path, {**TWO_LEVEL, "colour": "red"}))
    assert info.value.field == "colour"
    assert "valid keys" in str(info.value)
    assert "detector" in str(info.value)


def test_flags_override_file(tmp_path):
    config = load_config(write(tmp_path, TWO_LEVEL), {"grid": {"steps": 50}, "output": "out.csv"})
    assert config.grid.steps == 50
    assert config.grid.lo == 0.01
    assert config.output == "out.csv"


def test_flat_model_keys_and_size_alias(tmp_path):
    data = {
        "command": "sweep",
        "model": {"variant": "quasicrystal", "JR": 1, "JL": 0.5, "L": 169, "boundary": "periodic"},
        "grid": {"axis": "V", "lo": 0.2, "hi": 1.8, "steps": 161},
    }
    spec = load_config(write(tmp_path, data)).model.to_spec()
    assert spec.size == 169
    assert spec.params["JL"] == 0.5
    assert spec.params["alpha_num"] == 239


def test_unknown_model_parameter(tmp_path):
    data = {**TWO_LEVEL, "model": {"variant": "two_level", "t1": 0.3}}
    with pytest.raises(ConfigError) as info:
        load_config(write(tmp_path, data))
    assert info.value.field == "model"


def test_preset_then_overrides():
    manager = ConfigManager(ScopeSettings())
    config = manager.load_config(overrides={"grid": {"steps": 30}}, preset="fig1b")
    assert config.grid.steps == 30
    assert config.grid.lo == 0.05
    assert config.model.to_spec().size == 150
    assert config.preset == "fig1b"


def test_every_preset_validates():
    manager = ConfigManager(ScopeSettings())
    for name in PRESETS:
        assert manager.load_config(preset=name).preset == name


def test_unknown_preset():
    with pytest.raises(ConfigError):
        ConfigManager(ScopeSettings()).load_config(preset="fig9")


@pytest.mark.parametrize("data, fragment", [
    ({"command": "bound"}, "blocks"),
    ({"command": "finite-size"}, "sizes"),
    ({"command": "finite-size", "sizes": [100, 50]}, "sizes"),
    ({"command": "sweep", "model": {"variant": "external"}}, "external"),
    ({"command": "sweep", "grid": {"lo": 1.0, "hi": 0.5}}, "lo"),
    ({"command": "plot"}, "command"),
])
def test_command_consistency(data, fragment):
    with pytest.raises(ConfigError) as info:
        ConfigManager.validate(data)
    assert fragment in str(info.value)


def test_invalid_json(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json", encoding="utf-8")
    with pytest.raises(ConfigError):
        load_config(path)
    with pytest.raises(ConfigError):
        load_config(tmp_path / "absent.json")


def test_settings_from_environment(monkeypatch):
    monkeypatch.setenv("NHSCOPE_THREADS", "3")
    monkeypatch.setenv("NHSCOPE_REAL_TOL", "1e-8")
    settings = ScopeSettings.from_environment()
    assert settings.threads == 3
    assert settings.real_tol == 1e-8


@pytest.mark.parametrize("name, value", [
    ("NHSCOPE_THREADS", "many"),
    ("NHSCOPE_THREADS", "0"),
    ("NHSCOPE_REAL_TOL", "-1"),
])
def test_bad_settings(monkeypatch, name, value):
    monkeypatch.setenv(name, value)
    with pytest.raises(ConfigError):
        ScopeSettings.from_environment()


def test_single_model_commands_pick_their_variant():
    assert ConfigManager.validate({"command": "bloch", "model": {"u": 0.3}}).model.variant == ModelVariant.PT_SSH
    assert ConfigManager.validate({"command": "verify-sl"}).model.variant == ModelVariant.STURM_LIOUVILLE
    assert ConfigManager.validate({"command": "spectrum"}).model.variant == ModelVariant.SSH


def test_explicit_preset_beats_file_preset(tmp_path):
    manager = ConfigManager(ScopeSettings())
    config = manager.load_config(write(tmp_path, {"preset": "fig2"}), preset="fig3")
    assert config.preset == "fig3"
    assert config.model.variant == ModelVariant.QUASICRYSTAL
    assert manager.load_config(write(tmp_path, {"preset": "fig2"})).preset == "fig2"


def test_figure_presets_carry_detector_settings():
    manager = ConfigManager(ScopeSettings())
    assert manager.load_config(preset="fig1b").detector.floor == 1e-5
    assert manager.load_config(preset="fig3").detector.kappa == 5.0
    assert manager.load_config(preset="fig5").detector.floor == 1e-3

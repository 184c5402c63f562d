"""Tests for the config module."""

import json

import pytest

from delocalization_power.config import config


@pytest.fixture
def config_dir(tmp_path, monkeypatch):
    """Redirect config path to a temp directory for the duration of the test."""
    fake_path = tmp_path / "config.json"
    monkeypatch.setattr(config, "get_config_path", lambda: fake_path)
    yield fake_path


class TestLoadConfig:
    def test_load_config_no_file(self, config_dir):
        assert config.load_config() == {}

    def test_load_config_valid(self, config_dir):
        config_dir.write_text(json.dumps({"key": "value"}), encoding="utf-8")
        assert config.load_config() == {"key": "value"}

    def test_load_config_invalid_json(self, config_dir):
        config_dir.write_text("not valid json", encoding="utf-8")
        assert config.load_config() == {}

    def test_load_config_non_object(self, config_dir):
        config_dir.write_text("[1, 2, 3]", encoding="utf-8")
        assert config.load_config() == {}


class TestSaveConfig:
    def test_save_config_creates_file(self, config_dir):
        config.save_config({"hello": "world"})
        data = json.loads(config_dir.read_text(encoding="utf-8"))
        assert data == {"hello": "world"}

    def test_save_config_creates_parent_dir(self, tmp_path, monkeypatch):
        nested = tmp_path / "a" / "b" / "config.json"
        monkeypatch.setattr(config, "get_config_path", lambda: nested)
        config.save_config({"nested": True})
        assert nested.exists()


class TestSetAndGetConfigValue:
    def test_set_and_get_simple_key(self, config_dir):
        config.set_config_value("name", "dlp")
        assert config.get_config_value("name") == "dlp"

    def test_set_and_get_nested_key(self, config_dir):
        config.set_config_value("TOLERANCES.structure", "1e-7")
        assert config.get_config_value("TOLERANCES.structure") == "1e-7"

    def test_set_overwrites_existing(self, config_dir):
        config.set_config_value("SIMULATION.seed", "1")
        config.set_config_value("SIMULATION.seed", "2")
        assert config.get_config_value("SIMULATION.seed") == "2"

    def test_get_missing_key_returns_none(self, config_dir):
        assert config.get_config_value("missing") is None

    def test_get_returns_none_for_section(self, config_dir):
        config.set_config_value("SIMULATION.trials", "10")
        assert config.get_config_value("SIMULATION") is None


class TestTypedAccessors:
    def test_float_falls_back_to_library_default(self, config_dir):
        assert config.get_config_float("TOLERANCES.structure") == 1e-6

    def test_float_reads_stored_string(self, config_dir):
        config.set_config_value("TOLERANCES.verify", "1e-7")
        assert config.get_config_float("TOLERANCES.verify") == pytest.approx(1e-7)

    def test_float_unparsable_uses_fallback(self, config_dir):
        config.set_config_value("TOLERANCES.rank", "tiny")
        assert config.get_config_float("TOLERANCES.rank") == 1e-8
        assert config.get_config_float("TOLERANCES.rank", 0.5) == 0.5

    def test_int_reads_stored_string(self, config_dir):
        config.set_config_value("SIMULATION.trials", " 12 ")
        assert config.get_config_int("SIMULATION.trials") == 12

    def test_int_default(self, config_dir):
        assert config.get_config_int("EPOWER.restarts") == 64

    def test_int_unknown_key_without_fallback(self, config_dir):
        assert config.get_config_int("NOPE.key") is None


class TestFlattenConfig:
    def test_flatten_nested_sections(self, config_dir):
        config.set_config_value("TOLERANCES.rank", "1e-9")
        config.set_config_value("SIMULATION.seed", "3")
        assert config.flatten_config() == {"SIMULATION.seed": "3", "TOLERANCES.rank": "1e-9"}

    def test_flatten_explicit_dict(self):
        assert config.flatten_config({"a": {"b": {"c": 1}}, "d": 2}) == {"a.b.c": 1, "d": 2}

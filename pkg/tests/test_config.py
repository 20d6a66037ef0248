import pytest
from pydantic import ValidationError

from src.utils.config_manager import ConfigManager
from src.utils.validators import (
    CliConfig,
    ExtractionSettings,
    GeometrySettings,
    parse_gauge_override,
    parse_parameter_list,
)


class TestCliConfig:
    def test_defaults(self):
        config = CliConfig(command="classify")
        assert config.parameters == ()
        assert config.output_format == "text"
        assert config.gauge is None
        assert config.gauge_bound == 2
        assert config.tolerance == 1e-8
        assert config.steps == 1024

    def test_parameter_list_from_text(self):
        assert CliConfig(command="classify", parameters="k, l").parameters == ("k", "l")

    @pytest.mark.parametrize("names", ["x", "k,k", "2k", "k-l"])
    def test_invalid_parameters(self, names):
        with pytest.raises(ValidationError):
            CliConfig(command="classify", parameters=names)

    def test_format_is_normalized(self):
        assert CliConfig(command="classify", output_format="JSON").output_format == "json"
        with pytest.raises(ValidationError):
            CliConfig(command="classify", output_format="yaml")

    @pytest.mark.parametrize("field, value", [("gauge_bound", 4), ("tolerance", 0.0), ("steps", 0)])
    def test_ranges(self, field, value):
        with pytest.raises(ValidationError):
            CliConfig(command="metric", **{field: value})

    def test_gauge_override_text(self):
        config = CliConfig(command="gauge", gauge="b=0, e=-1/x")
        assert config.gauge == {"b": "0", "e": "-1/x"}


class TestParsing:
    def test_parameter_list(self):
        assert parse_parameter_list(None) == ()
        assert parse_parameter_list("k,,l") == ("k", "l")

    def test_gauge_override_keeps_nested_commas(self):
        assert parse_gauge_override("b=f(x,y)") == {"b": "f(x,y)"}

    @pytest.mark.parametrize("raw", ["a=1", "b"])
    def test_gauge_override_errors(self, raw):
        with pytest.raises(ValueError):
            parse_gauge_override(raw)


class TestSettings:
    def test_geometry_from_config(self):
        settings = GeometrySettings.from_config()
        assert settings.gauge_bound == 2
        assert settings.tolerance == 1e-8
        assert settings.steps_per_unit == 1024

    def test_extraction_from_config(self):
        settings = ExtractionSettings.from_config()
        assert settings.laurent_bound == 3
        assert settings.power_bound == 3

    def test_config_file(self, tmp_path):
        path = tmp_path / "system_config.yml"
        path.write_text("geometry:\n  gauge_bound: 1\ncorpus:\n  path: cases.json\n", encoding="utf-8")
        config = ConfigManager(path)
        assert config.get("geometry", "gauge_bound") == 1
        assert config.get("geometry", "tolerance", 1e-6) == 1e-6
        assert config.section("extraction") == {}
        assert config.resolve_path("corpus", "path", "x.json").name == "cases.json"
        with pytest.raises(ValueError):
            config.get("geometry", "missing")

    def test_missing_file_gives_defaults(self, tmp_path):
        config = ConfigManager(tmp_path / "absent.yml")
        assert config.section("geometry") == {}

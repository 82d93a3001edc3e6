"""
Core Configuration Tests

This module contains tests for settings, configuration files, run
configuration merging, output helpers and logging setup.
"""

import json
import logging
import math

import numpy as np
import pandas as pd
import pytest
from pydantic import ValidationError

from src.core.config import Settings, get_settings, load_settings, read_config_file, use_settings
from src.core.exceptions import ComputationError, ConfigurationError
from src.core.io_utils import atomic_write_text, round_significant, to_json_text, write_frame_csv
from src.core.logging_config import configure_logging
from src.core.run_config import SimulateConfig, SweepConfig
from src.main import resolve_config
from src.prediction import PredictionPipeline, ReportConfig
from src.prediction.report import LabeledSeries
from test_helpers import write_json_file


@pytest.mark.unit
class TestSettings:
    """Test cases for Settings."""

    def test_defaults(self):
        """Test numerical defaults."""
        settings = Settings()
        assert settings.grid_points == 2001
        assert settings.trim_fraction == 0.1
        assert settings.min_layer_fidelity == 0.9
        assert settings.cycle_time == 1e-6
        assert settings.float_format == "%.9g"

    def test_environment_ignored(self, monkeypatch):
        """Test that environment variables do not change settings."""
        monkeypatch.setenv("GRID_POINTS", "11")
        assert Settings().grid_points == 2001

    def test_unknown_field_rejected(self):
        """Test extra="forbid"."""
        with pytest.raises(ValidationError):
            Settings(colour="blue")

    def test_ranges_validated(self):
        """Test field ranges."""
        with pytest.raises(ValidationError):
            Settings(trim_fraction=1.0)
        with pytest.raises(ValidationError):
            Settings(grid_points=2)

    def test_use_settings(self):
        """Test installing and restoring active settings."""
        use_settings(Settings(trials=3))
        assert get_settings().trials == 3
        use_settings(None)
        assert get_settings().trials == 50


@pytest.mark.unit
class TestConfigFiles:
    """Test cases for configuration files."""

    def test_dashes_become_underscores(self, tmp_path):
        """Test option names written as on the command line."""
        path = write_json_file(tmp_path / "c.json", {"grid-points": 101, "trim": 0.2})
        assert read_config_file(path) == {"grid_points": 101, "trim": 0.2}

    def test_load_settings_ignores_command_options(self, tmp_path):
        """Test that non-settings keys are left to the run configuration."""
        path = write_json_file(tmp_path / "c.json", {"grid_points": 101, "pi": 0.3})
        settings = load_settings(path, trials=7, max_workers=None)
        assert settings.grid_points == 101
        assert settings.trials == 7
        assert settings.max_workers == 4

    @pytest.mark.parametrize("content", ["{not json", "[1, 2]"])
    def test_malformed_files(self, tmp_path, content):
        """Test invalid JSON and non-object documents."""
        path = tmp_path / "c.json"
        path.write_text(content)
        with pytest.raises(ConfigurationError):
            read_config_file(path)

    def test_missing_file(self, tmp_path):
        """Test a missing config file."""
        with pytest.raises(ConfigurationError):
            read_config_file(tmp_path / "absent.json")


@pytest.mark.unit
class TestResolveConfig:
    """Test cases for merging config files with command-line values."""

    def test_command_line_wins(self, tmp_path):
        """Test precedence of flags over file values."""
        path = write_json_file(tmp_path / "c.json", {"trials": 9, "pi": 0.1, "layer_fidelity": 0.99})
        settings, config = resolve_config(
            "simulate", {"config": str(path), "trials": 4, "out": str(tmp_path / "o.csv")}
        )
        assert isinstance(config, SimulateConfig)
        assert config.trials == 4
        assert config.pi == 0.1
        assert settings.trials == 9

    def test_settings_supply_defaults(self, tmp_path):
        """Test that settings keys set command defaults."""
        path = write_json_file(tmp_path / "c.json", {"max_distance": 21, "target_rmse": 1e-2})
        _, config = resolve_config("sweep", {"config": str(path), "hamiltonian": "h.txt"})
        assert isinstance(config, SweepConfig)
        assert config.d_max == 21
        assert config.target_rmse == 1e-2

    def test_settings_only_keys_do_not_leak(self, tmp_path):
        """Test that a settings key unknown to the command is accepted."""
        path = write_json_file(tmp_path / "c.json", {"cycle_time": 2e-6})
        _, config = resolve_config("simulate", {"config": str(path), "pi": 0.0, "layer_fidelity": 0.9, "out": "o.csv"})
        assert config.layer_fidelity == 0.9

    def test_unknown_key_rejected(self, tmp_path):
        """Test that keys belonging to neither settings nor the command are rejected."""
        path = write_json_file(tmp_path / "c.json", {"colour": "blue"})
        with pytest.raises(ValidationError):
            resolve_config("simulate", {"config": str(path), "pi": 0.0, "layer_fidelity": 0.9, "out": "o.csv"})


@pytest.mark.unit
class TestOutputHelpers:
    """Test cases for atomic writers and rounding."""

    def test_atomic_write_leaves_no_temporaries(self, tmp_path):
        """Test that only the destination remains after a write."""
        target = tmp_path / "nested" / "out.txt"
        atomic_write_text(target, "hello\n")
        assert target.read_text() == "hello\n"
        assert [p.name for p in target.parent.iterdir()] == ["out.txt"]

    def test_failed_write_keeps_previous_content(self, tmp_path, mocker):
        """Test that an interrupted write leaves the old file intact."""
        target = tmp_path / "out.txt"
        target.write_text("old")
        mocker.patch("src.core.io_utils.os.replace", side_effect=OSError("disk full"))
        with pytest.raises(OSError):
            atomic_write_text(target, "new")
        assert target.read_text() == "old"
        assert [p.name for p in tmp_path.iterdir()] == ["out.txt"]

    def test_round_significant(self):
        """Test recursive rounding of floats."""
        value = {"a": 1.23456789012345, "b": [np.float64(2.0 / 3.0), 5], "c": math.inf, "d": np.int64(3)}
        rounded = round_significant(value, 4)
        assert rounded == {"a": 1.235, "b": [0.6667, 5], "c": math.inf, "d": 3}
        assert isinstance(rounded["d"], int)

    def test_json_text_uses_settings_precision(self):
        """Test significant digits from the active settings."""
        use_settings(Settings(significant_digits=3))
        assert json.loads(to_json_text({"x": 1.23456})) == {"x": 1.23}

    def test_csv_float_format(self, tmp_path):
        """Test the CSV float format."""
        path = write_frame_csv(pd.DataFrame({"x": [1.0 / 3.0]}), tmp_path / "f.csv")
        assert path.read_text() == "x\n0.333333333\n"


@pytest.mark.unit
class TestLogging:
    """Test cases for logging setup."""

    def test_unknown_level(self):
        """Test that unknown level names are rejected."""
        with pytest.raises(ValueError):
            configure_logging("LOUD")

    def test_json_lines(self, capsys):
        """Test JSON rendering of standard-library records."""
        configure_logging("INFO", json_logs=True)
        logging.getLogger("raeperf.test").info("hello")
        line = capsys.readouterr().err.strip().splitlines()[-1]
        record = json.loads(line)
        assert record["event"] == "hello"
        assert record["level"] == "info"
        configure_logging("WARNING")

    def test_pipeline_failures_logged(self, mocker, caplog):
        """Test that a failing label is logged and re-raised."""
        mocker.patch("src.prediction.pipeline_manager.predict_label", side_effect=ComputationError("boom"))
        pipeline = PredictionPipeline(ReportConfig(), max_workers=1)
        with caplog.at_level(logging.ERROR, logger="src.prediction.pipeline_manager"):
            with pytest.raises(ComputationError):
                pipeline.run([LabeledSeries("x", ())])
        assert "Prediction failed for 'x'" in caplog.text

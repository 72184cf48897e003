"""
Configuration management system for zonecross.
"""
import copy
import logging
import os
from pathlib import Path
from typing import Any, Dict, Optional

import yaml

logger = logging.getLogger(__name__)

DEFAULT_CONFIG_FILE = Path(__file__).resolve().parents[3] / "config" / "default_config.yaml"


class ConfigManager:
    """
    Configuration manager for synthesis, detection and evaluation settings.

    Layers, lowest priority first: hard-coded defaults, the YAML config file,
    then ``ZONECROSS_*`` environment variables.
    """

    def __init__(self, config_file: Optional[str] = None):
        """
        Initialize configuration manager.

        Args:
            config_file (Optional[str]): Path to configuration file
        """
        self.config: Dict[str, Any] = {}
        self._load_default_config()

        if config_file:
            self._load_config_file(config_file)
        else:
            self._load_default_config_file()

        self._load_environment_overrides()

    def _load_default_config(self):
        """Load hardcoded default configuration."""
        self.config = {
            "geometry": {
                "carrier_hz": 5.24e9,
                "num_antennas": 3,
                "los_distance_m": 2.0,
            },
            "synth": {
                "sample_rate_hz": 1000.0,
                "e0": 0.2,
                "phi0": 0.0,
                "los_gain": [1.0, 0.0],
                "n_integration_points": 64,
                "quadrature": "gauss",
                "noise_snr_db": 20.0,
                "phase_drift_per_frame_rad": 0.2,
                "seed": 0,
            },
            "trajectory": {
                "speed_mps": 0.8,
                "approach_dist_m": 2.0,
                "body_len_m": 0.4,
                "lead_in_s": 1.0,
                "hesitations": 0,
                "hesitation_retreat_m": 0.8,
            },
            "dsp": {
                "ma_window": 50,
                "ratio_pair": [0, 1],
                "consistency_pair": [0, 2],
                "epsilon_den": 1e-9,
                "baseline_frames": 500,
                "k_sigma": 4.0,
                "floor_db": 0.5,
                "min_segment_frames": 300,
                "merge_gap_frames": 200,
            },
            "detect": {
                "gate_rel": 0.1,
                "prominence_rel": 0.15,
                "context_frames": 250,
                "retrace_max": 0.5,
            },
            "eval": {
                "master_seed": 816,
                "workers": 1,
            },
            "output": {
                "log_level": "INFO",
                "report_file": "eval_report.json",
                "trial_log_file": "eval_trials.jsonl",
            },
        }

    def _load_default_config_file(self):
        """Load default configuration file if it exists."""
        possible_paths = [
            "config/default_config.yaml",
            "../config/default_config.yaml",
            str(DEFAULT_CONFIG_FILE),
        ]

        for config_path in possible_paths:
            if os.path.exists(config_path):
                self._load_config_file(config_path)
                break

    def _load_config_file(self, config_file: str):
        """
        Load configuration from YAML file.

        Args:
            config_file (str): Path to configuration file
        """
        try:
            with open(config_file, "r") as f:
                file_config = yaml.safe_load(f)
                if file_config:
                    self._deep_update(self.config, file_config)
        except FileNotFoundError:
            logger.warning("Configuration file not found: %s", config_file)
        except yaml.YAMLError as e:
            logger.warning("Error parsing configuration file %s: %s", config_file, e)

    def _load_environment_overrides(self):
        """Load configuration overrides from environment variables."""
        env_mappings = {
            "ZONECROSS_LOG_LEVEL": ["output", "log_level"],
            "ZONECROSS_SEED": ["synth", "seed"],
            "ZONECROSS_SNR_DB": ["synth", "noise_snr_db"],
            "ZONECROSS_WORKERS": ["eval", "workers"],
            "ZONECROSS_MA_WINDOW": ["dsp", "ma_window"],
            "ZONECROSS_PROMINENCE_REL": ["detect", "prominence_rel"],
        }

        for env_var, config_path in env_mappings.items():
            value = os.getenv(env_var)
            if value is not None:
                self._set_nested_value(self.config, config_path, _coerce(value))

    def _deep_update(self, base_dict: Dict[str, Any], update_dict: Dict[str, Any]):
        """
        Deep update dictionary with another dictionary.

        Args:
            base_dict (Dict[str, Any]): Base dictionary to update
            update_dict (Dict[str, Any]): Dictionary with updates
        """
        for key, value in update_dict.items():
            if isinstance(value, dict) and key in base_dict and isinstance(base_dict[key], dict):
                self._deep_update(base_dict[key], value)
            else:
                base_dict[key] = value

    def _set_nested_value(self, dictionary: Dict[str, Any], path: list, value: Any):
        for key in path[:-1]:
            if key not in dictionary:
                dictionary[key] = {}
            dictionary = dictionary[key]
        dictionary[path[-1]] = value

    def get(self, key: str, default: Any = None) -> Any:
        """
        Get configuration value using dot notation.

        Args:
            key (str): Configuration key (e.g., "dsp.ma_window")
            default (Any): Default value if key not found

        Returns:
            Any: Configuration value
        """
        value = self.config
        for k in key.split("."):
            if isinstance(value, dict) and k in value:
                value = value[k]
            else:
                return default
        return value

    def set(self, key: str, value: Any):
        """Set configuration value using dot notation."""
        self._set_nested_value(self.config, key.split("."), value)

    def get_section(self, section: str) -> Dict[str, Any]:
        """
        Get entire configuration section.

        Args:
            section (str): Section name

        Returns:
            Dict[str, Any]: Section configuration (a copy)
        """
        return copy.deepcopy(self.config.get(section, {}))

    def to_dict(self) -> Dict[str, Any]:
        return copy.deepcopy(self.config)

    def save_config(self, output_file: str):
        """
        Save current configuration to YAML file.

        Args:
            output_file (str): Output file path
        """
        with open(output_file, "w") as f:
            yaml.safe_dump(self.config, f, default_flow_style=False, indent=2)


def _coerce(value: str) -> Any:
    """Convert an environment string to bool, int or float where it looks like one."""
    lowered = value.lower()
    if lowered in ("true", "false"):
        return lowered == "true"
    if lowered in ("none", "null", ""):
        return None
    try:
        return int(value)
    except ValueError:
        pass
    try:
        return float(value)
    except ValueError:
        return value


# Global configuration instance
_config_manager: Optional[ConfigManager] = None


def get_config() -> ConfigManager:
    """
    Get global configuration manager instance.

    Returns:
        ConfigManager: Global configuration manager
    """
    global _config_manager
    if _config_manager is None:
        _config_manager = ConfigManager()
    return _config_manager


def reload_config(config_file: Optional[str] = None) -> ConfigManager:
    """
    Reload global configuration.

    Args:
        config_file (Optional[str]): Configuration file to load
    """
    global _config_manager
    _config_manager = ConfigManager(config_file)
    return _config_manager

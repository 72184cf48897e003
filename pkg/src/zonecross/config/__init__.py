"""
Configuration management for zonecross.
"""

from .logging import get_logger, setup_logging
from .manager import ConfigManager, get_config, reload_config

__all__ = ["ConfigManager", "get_config", "reload_config", "setup_logging", "get_logger"]

"""
Colored console logging for zonecross entry points.
"""
import logging
from typing import Optional, Union

import colorlog

_HANDLER_NAME = "zonecross-console"

LOG_FORMAT = "%(log_color)s%(levelname)-8s%(reset)s %(cyan)s%(name)s%(reset)s %(message)s"


def setup_logging(level: Union[int, str] = "INFO", stream=None) -> logging.Logger:
    """
    Install a colorlog handler on the package logger.

    Calling it again only updates the level.

    Args:
        level (Union[int, str]): Logging level name or number
        stream: Output stream (defaults to stderr)

    Returns:
        logging.Logger: The ``zonecross`` package logger
    """
    root = logging.getLogger("zonecross")
    if isinstance(level, str):
        level = logging.getLevelName(level.upper())
        if not isinstance(level, int):
            level = logging.INFO
    root.setLevel(level)

    if not any(getattr(h, "name", None) == _HANDLER_NAME for h in root.handlers):
        handler = colorlog.StreamHandler(stream)
        handler.set_name(_HANDLER_NAME)
        handler.setFormatter(
            colorlog.ColoredFormatter(
                LOG_FORMAT,
                log_colors={
                    "DEBUG": "white",
                    "INFO": "green",
                    "WARNING": "yellow",
                    "ERROR": "red",
                    "CRITICAL": "bold_red",
                },
            )
        )
        root.addHandler(handler)
        root.propagate = False
    return root


def get_logger(name: Optional[str] = None) -> logging.Logger:
    """Logger under the ``zonecross`` namespace."""
    if not name:
        return logging.getLogger("zonecross")
    if name == "zonecross" or name.startswith("zonecross."):
        return logging.getLogger(name)
    return logging.getLogger(f"zonecross.{name}")

"""The package-wide loguru sink.

Everything logs to stderr so that reports on stdout stay machine readable. The threshold comes from
``SIMPLEXDESIGNS_LOG_LEVEL`` at import time and can be changed later with ``configure_logging``.
"""

import os as _os
import sys as _sys

from loguru import logger

from simplexdesigns.exceptions import ConfigError as _ConfigError

LEVEL_VARIABLE = "SIMPLEXDESIGNS_LOG_LEVEL"

log_format = (
    "<green>{time:YYYY-MM-DD HH:mm:ss}</green> | "
    "<lvl>{level}</lvl> |  "
    "<cyan>{name}</cyan>:<cyan>{function}</cyan>:<cyan>{line}</cyan> - "
    "<level>{message}</level>"
)


def configure_logging(level: str) -> int:
    """Replace every sink with a single stderr sink at ``level`` and return its handler id."""
    level = level.upper()
    try:
        logger.level(level)
    except ValueError as exc:
        raise _ConfigError(f"unknown log level {level!r}") from exc
    logger.remove()
    return logger.add(_sys.stderr, format=log_format, level=level)


configure_logging(_os.environ.get(LEVEL_VARIABLE, "INFO"))

"""Maximal cliques of the 2m-subset geometry and the symmetric designs they carry.

Runtime knobs live in one optional TOML file, loaded with ``parse_config`` (the CLI's ``--conf``).
Library code reads them through ``setting`` with a built-in default, so nothing needs a config file.
"""

__version__ = "0.1.0"

from dataclasses import dataclass as _dataclass
from pprint import pformat as _pformat
from typing import Any as _Any, Optional as _Optional

import toml as _toml  # type: ignore

from simplexdesigns.exceptions import ConfigError as _ConfigError
from simplexdesigns.logger import logger


@_dataclass
class _Config:
    """Parsed TOML tables, addressed by dotted paths such as ``"geometry.max_points"``."""

    data: _Optional[dict[str, _Any]] = None

    def __repr__(self):
        return _pformat(self.data)

    def from_file(self, infile):
        with open(infile, "r") as f:
            self.data = _toml.load(f)

    def __getitem__(self, path):
        if self.data is None:
            raise _ConfigError(f"no config file loaded, cannot look up {path!r}")

        keys = path.split(".")
        node: _Any = self.data
        for depth, key in enumerate(keys):
            if not isinstance(node, dict):
                raise _ConfigError(f"{'.'.join(keys[:depth])!r} is a value, not a table")
            if key not in node:
                raise _ConfigError(f"{'.'.join(keys[: depth + 1])!r} is not set")
            node = node[key]
        return node

    def get(self, path):
        try:
            return self[path]
        except _ConfigError:
            return None


config = _Config()


def parse_config(infile):
    """Load ``infile`` as the active configuration, replacing any earlier one."""
    logger.info(f"Loading settings from {infile}")
    config.from_file(infile)


def setting(path: str, default: _Any = None) -> _Any:
    """Configured value at a dotted path, or ``default`` when unset or unparsed."""
    value = config.get(path)
    return default if value is None else value

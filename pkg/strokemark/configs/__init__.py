# Copyright (c) 2026 strokemark developers
# MIT license

from .manager import ConfigManager  # noqa: F401

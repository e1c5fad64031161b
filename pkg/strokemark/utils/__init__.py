# Copyright (c) 2026 strokemark developers
# MIT license

from .logging import setup_logging  # noqa: F401

# Copyright (c) 2026 strokemark developers
# MIT license

"""
Globally shared instances/objects shared throughout ``strokemark``.
"""

from .configs.manager import ConfigManager


# The globally shared `~ConfigManager` instance/object, that holds the
# default configurations as well as user-provided configurations.
#
# NOTE: The entry point (``strokemark.cli.main``) loads the user
#       configurations into this object by e.g.,:
#       ``CONFIGS.read_userconfig(<user_config_file>)``
CONFIGS = ConfigManager()

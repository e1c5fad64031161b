# Copyright (c) 2026 strokemark developers
# MIT license

"""
Logging utilities.
"""

import sys
import logging
from logging import FileHandler, StreamHandler


logger = logging.getLogger(__name__)


def setup_logging(dict_config=None, level=None, stream=None, logfile=None):
    """Setup the logging.

    This will override the logging configurations in the config file
    if specified (e.g., by command line arguments).

    Parameters
    ----------
    dict_config : dict
        Dict of logging configurations, e.g., ``ConfigManager.logging``.
        If this parameter specified, the logging will be reconfigured.
    level : str
        Override the existing log level
    stream : str; "stderr", "stdout", or ""
        If not None, then replace the old ``StreamHandler``;
        ``stream=""`` disables the ``StreamHandler``.
    logfile : str
        Specify the file where the log messages go to.
        ``logfile=""`` disables the ``FileHandler``.

    NOTE
    ----
    Existing ``StreamHandler`` or ``FileHandler`` are **replaced** (i.e.,
    the old one removed, then the new one added).
    """
    filemode = "a"
    root_logger = logging.getLogger()

    if dict_config:
        dict_config = dict(dict_config)
        # NOTE: ``basicConfig()`` refuses ``filemode`` without ``filename``
        filemode = dict_config.pop("filemode", filemode)
        # Clear existing handlers, otherwise ``basicConfig()`` is a no-op
        for handler in list(root_logger.handlers):
            handler.close()
            root_logger.removeHandler(handler)
        logging.basicConfig(**dict_config)

    if level is not None:
        level_int = getattr(logging, level.upper(), None)
        if not isinstance(level_int, int):
            raise ValueError("invalid log level: %s" % level)
        root_logger.setLevel(level_int)

    # Preserve the configured format styles for the new handlers
    if root_logger.handlers:
        formatter = root_logger.handlers[0].formatter
    else:
        formatter = logging.Formatter(logging.BASIC_FORMAT)

    if stream is None:
        pass
    elif stream in ["", "stderr", "stdout"]:
        for handler in list(root_logger.handlers):
            if (isinstance(handler, StreamHandler) and
                    not isinstance(handler, FileHandler)):
                handler.close()
                root_logger.removeHandler(handler)
        if stream:
            handler = StreamHandler(getattr(sys, stream))
            handler.setFormatter(formatter)
            root_logger.addHandler(handler)
    else:
        raise ValueError("invalid stream: %s" % stream)

    if logfile is not None:
        for handler in list(root_logger.handlers):
            if isinstance(handler, FileHandler):
                filemode = handler.mode
                handler.close()
                root_logger.removeHandler(handler)
        if logfile:
            handler = FileHandler(logfile, mode=filemode)
            handler.setFormatter(formatter)
            root_logger.addHandler(handler)
    logger.info("Set up logging.")

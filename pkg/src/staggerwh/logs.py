# -*- coding: UTF-8 -*-
import logging

__all__ = ["logger", "set_verbosity"]

# Package logger
logger = logging.getLogger(__package__)
_log_format = logging.Formatter(
    "%(asctime)s %(levelname)s - %(message)s", datefmt="%Y-%m-%d %H:%M:%S"
)
logger.setLevel(logging.INFO)
_handler = logging.StreamHandler()
_handler.setFormatter(_log_format)
logger.addHandler(_handler)


def set_verbosity(verbose: bool = False, quiet: bool = False) -> None:
    """Adjust the package logger level.

    :param verbose: `<bool>` Lower the level to DEBUG.
    :param quiet: `<bool>` Raise the level to WARNING. Takes precedence over `verbose`.
    """
    if quiet:
        logger.setLevel(logging.WARNING)
    elif verbose:
        logger.setLevel(logging.DEBUG)
    else:
        logger.setLevel(logging.INFO)

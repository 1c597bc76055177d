# app/utils/logger.py
import logging
import sys

from app.config import LOG_LEVEL

_ROOT_NAME = "hardy"
_configured = False


def _configure_root() -> logging.Logger:
    root = logging.getLogger(_ROOT_NAME)
    root.setLevel(LOG_LEVEL)
    # stderr keeps stdout free for CSV output
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(asctime)s - %(name)s - %(levelname)s - %(message)s"))
    root.addHandler(handler)
    root.propagate = False
    return root


def get_logger(name: str) -> logging.Logger:
    """
    Returns a child of the package logger. Handlers are attached only once,
    however many modules ask for a logger.
    """
    global _configured
    if not _configured:
        _configure_root()
        _configured = True
    short = name.rsplit(".", 1)[-1]
    return logging.getLogger(f"{_ROOT_NAME}.{short}")

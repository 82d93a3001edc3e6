"""
raeperf - Logging Configuration

Modules log through the standard library (``logging.getLogger(__name__)``);
this module routes those records through structlog's stdlib integration so
they are rendered as key/value console lines or JSON lines on stderr.
"""

import logging
import sys
from typing import Union

import structlog

from src.core.exceptions import ConfigurationError


def configure_logging(level: Union[str, int] = "INFO", json_logs: bool = False) -> None:
    """
    Configure root logging with a structlog formatter writing to stderr.

    Args:
        level: Log level name or number
        json_logs: Render JSON lines instead of console key/value output
    """
    shared_processors = [
        structlog.stdlib.add_log_level,
        structlog.stdlib.add_logger_name,
        structlog.processors.TimeStamper(fmt="iso"),
    ]

    renderer = (
        structlog.processors.JSONRenderer()
        if json_logs
        else structlog.dev.ConsoleRenderer(colors=False)
    )

    formatter = structlog.stdlib.ProcessorFormatter(
        foreign_pre_chain=shared_processors,
        processors=[
            structlog.stdlib.ProcessorFormatter.remove_processors_meta,
            renderer,
        ],
    )

    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(formatter)

    root = logging.getLogger()
    for existing in list(root.handlers):
        root.removeHandler(existing)
    root.addHandler(handler)

    if isinstance(level, str):
        numeric = logging.getLevelName(level.upper())
        if not isinstance(numeric, int):
            raise ConfigurationError(f"Unknown log level: {level}")
        level = numeric
    root.setLevel(level)

    structlog.configure(
        processors=shared_processors + [structlog.stdlib.ProcessorFormatter.wrap_for_formatter],
        logger_factory=structlog.stdlib.LoggerFactory(),
        wrapper_class=structlog.stdlib.BoundLogger,
        cache_logger_on_first_use=True,
    )

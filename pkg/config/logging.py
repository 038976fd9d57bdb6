"""
Logging configuration
"""

import logging
import sys
from pathlib import Path

try:
    from pythonjsonlogger.json import JsonFormatter
except ImportError:  # python-json-logger < 3
    from pythonjsonlogger.jsonlogger import JsonFormatter

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


def setup_logging(log_level: str = "INFO", json_format: bool = False, logs_dir: Path = None):
    """
    Setup application logging.

    Output goes to stderr and logs/app.log; stdout is reserved for command output.
    """

    # Create logs directory
    logs_dir = logs_dir or Path(__file__).parent.parent / "logs"
    logs_dir.mkdir(exist_ok=True)

    level = getattr(logging, log_level.upper(), None)
    if not isinstance(level, int):
        raise ValueError(f"Unknown log level: {log_level}")

    handlers = [
        logging.StreamHandler(sys.stderr),
        logging.FileHandler(logs_dir / "app.log")
    ]
    formatter = JsonFormatter(LOG_FORMAT) if json_format else logging.Formatter(LOG_FORMAT)
    for handler in handlers:
        handler.setFormatter(formatter)

    # Configure logging
    logging.basicConfig(level=level, handlers=handlers, force=True)

    # Set specific logger levels
    logging.getLogger("sympy").setLevel(logging.WARNING)
    logging.getLogger("asyncio").setLevel(logging.WARNING)

    return logging.getLogger(__name__)

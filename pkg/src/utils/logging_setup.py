"""
utils/logging_setup.py

Root logger configuration for the CLI and API entry points
"""

import logging
import sys
from datetime import datetime
from pathlib import Path
from typing import Optional

from src import config


def setup_logging(level: Optional[str] = None, log_dir: Optional[str] = None) -> logging.Logger:
    """Configure the root logger.

    Logs always go to stderr so command output on stdout stays clean.
    A timestamped log file is added when a log directory is configured.

    Args:
        level: Level name, defaults to CAUSAL_LOG_LEVEL
        log_dir: Directory for log files, defaults to CAUSAL_LOG_DIR

    Returns:
        The package logger
    """
    level = (level or config.LOG_LEVEL).upper()
    log_dir = log_dir or config.LOG_DIR

    handlers: list = [logging.StreamHandler(sys.stderr)]
    if log_dir:
        log_folder = Path(log_dir)
        log_folder.mkdir(parents=True, exist_ok=True)
        timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")
        handlers.append(logging.FileHandler(log_folder / f"causal_{timestamp}.log", encoding="utf-8"))

    logging.basicConfig(
        level=getattr(logging, level, logging.WARNING),
        format="%(asctime)s - %(levelname)s - %(message)s",
        handlers=handlers,
        force=True,
    )
    return logging.getLogger("src")

# molcav/utils/log.py
"""
Logging setup for run-scoped log files.

Loggers are created at import time without handlers.
File handlers are added when reconfigure_loggers() is called with the
run directory of a scenario, so every run keeps its own logs/ folder
and library imports never spam the terminal.
"""

import logging
from pathlib import Path

# Only our own modules get log files
APP_LOG_PREFIXES = (
    'physics', 'fitting', 'scenarios', 'core', 'models',
    'utils', 'cli', 'molcav', 'io_paths', 'config'
)

FILE_LOG_FORMAT = "%(asctime)s | %(name)s | %(levelname)-8s | %(message)s"
CONSOLE_LOG_FORMAT = "[%(levelname)s] %(name)s: %(message)s"


def setup_logger(name: str, level: int = logging.DEBUG) -> logging.Logger:
    """
    Create or retrieve a logger without handlers.

    File handlers are added later by reconfigure_loggers().

    Args:
        name: Logger name (e.g., "physics.spectra")
        level: Logging level (default: DEBUG)

    Returns:
        Configured logger instance
    """
    logger = logging.getLogger(name)
    logger.setLevel(level)
    logger.propagate = False  # Prevent duplicate logs to root logger

    return logger


def _remove_file_handlers(logger: logging.Logger) -> None:
    for handler in [h for h in logger.handlers if isinstance(h, logging.FileHandler)]:
        handler.close()
        logger.removeHandler(handler)


def reconfigure_loggers(run_dir: Path) -> Path:
    """
    Point application loggers at the logs/ folder of a run directory.

    Process:
    1. Remove all existing file handlers from all loggers
    2. Add new file handlers for app loggers only
    3. Preserve any stream handlers added separately

    Args:
        run_dir: Output directory of the scenario being run

    Returns:
        The log directory that now receives the files
    """
    from ..io_paths import logs_dir, _mk

    log_dir = _mk(logs_dir(run_dir))

    loggers = [logging.getLogger(name) for name in list(logging.Logger.manager.loggerDict.keys())]
    loggers.append(logging.getLogger())

    for logger in loggers:
        _remove_file_handlers(logger)

        if logger.name and logger.name.startswith(APP_LOG_PREFIXES):
            log_file = log_dir / (logger.name.replace('.', '_') + ".log.txt")
            try:
                fh = logging.FileHandler(log_file, mode="a", encoding="utf-8")
                fh.setLevel(logging.DEBUG)
                fh.setFormatter(logging.Formatter(FILE_LOG_FORMAT, datefmt="%Y-%m-%d %H:%M:%S"))
                logger.addHandler(fh)
            except Exception as e:
                print(f"Warning: Could not create log file handler for {logger.name}: {e}")

    return log_dir


def clear_logger_configuration() -> None:
    """
    Remove all file handlers from all loggers.
    Called when a run finishes so the next run starts clean.
    """
    loggers = [logging.getLogger(name) for name in list(logging.Logger.manager.loggerDict.keys())]
    loggers.append(logging.getLogger())

    for logger in loggers:
        _remove_file_handlers(logger)



def setup_console_logger(name: str, level: int = logging.INFO) -> logging.Logger:
    """
    Create a logger WITH console output.

    Used by the command-line front end. Library modules should use
    setup_logger() instead.

    Args:
        name: Logger name
        level: Console output level (default: INFO)

    Returns:
        Logger with console handler attached
    """
    logger = setup_logger(name, level)

    has_console = any(
        isinstance(h, logging.StreamHandler) and not isinstance(h, logging.FileHandler)
        for h in logger.handlers
    )

    if not has_console:
        console = logging.StreamHandler()
        console.setLevel(level)
        console.setFormatter(logging.Formatter(CONSOLE_LOG_FORMAT))
        logger.addHandler(console)

    return logger

import logging
import shutil
from pathlib import Path
from functools import wraps
from datetime import datetime

LOG_FORMAT = '%(asctime)s %(levelname)s %(message)s'


def setup_logger(name: str, log_file: str | Path, level: int = logging.INFO) -> logging.Logger:
    """
    Logger writing to a single file.

    Calling it again with the same name (a second run in one process) swaps the
    file handler instead of adding another one.
    """
    logger = logging.getLogger(name)
    logger.setLevel(level)
    for stale in [h for h in logger.handlers if isinstance(h, logging.FileHandler)]:
        logger.removeHandler(stale)
        stale.close()

    file_handler = logging.FileHandler(log_file)
    file_handler.setFormatter(logging.Formatter(LOG_FORMAT))
    logger.addHandler(file_handler)
    return logger


def get_function_logger(func):
    """Decorator giving a step its own log file under the caller's log directory"""
    @wraps(func)
    def wrapper(*args, **kwargs):
        work_log_dir = kwargs.pop('work_log_dir', None)
        if work_log_dir is None:
            work_log_dir = getattr(args[0], 'log_dir', None) if args else None
        if work_log_dir is None:
            return func(*args, **kwargs)

        work_log_dir = Path(work_log_dir)
        work_log_dir.mkdir(parents=True, exist_ok=True)
        step_logger = setup_logger(f"dyform_{func.__name__}", work_log_dir / f"{func.__name__}.log")
        step_logger.info(f"Step {func.__name__} called with {kwargs or 'no keyword arguments'}")
        try:
            return func(*args, **kwargs)
        finally:
            step_logger.info(f"Step {func.__name__} finished")
    return wrapper


def log_exception(logger: logging.Logger, exc: BaseException) -> None:
    """Log an exception with its traceback at ERROR level"""
    logger.error(f"{type(exc).__name__}: {exc}", exc_info=exc)


def log_configuration(config_path: str | Path, log_dir: str | Path, run_name: str) -> Path:
    """
    Keep a timestamped copy of the configuration file next to the run logs.

    Args:
        config_path (str | Path): configuration file the run was started with
        log_dir (str | Path): run log directory
        run_name (str): prefix of the copied file name

    Returns:
        Path: the copy, config_<run_name>_<YYYYmmdd_HHMMSS>.yaml
    """
    log_dir = Path(log_dir)
    log_dir.mkdir(parents=True, exist_ok=True)
    timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")
    target = log_dir / f"config_{run_name}_{timestamp}.yaml"
    shutil.copyfile(config_path, target)
    return target

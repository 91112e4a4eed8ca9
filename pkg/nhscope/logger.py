"""
Logging utilities for nhscope
Console output goes to stderr so stdout stays free for run summaries
"""

import logging
import sys
from pathlib import Path
from typing import Optional

ROOT_LOGGER_NAME = "nhscope"


class ColoredFormatter(logging.Formatter):
    """Console formatter with ANSI colors and a level emoji"""

    COLORS = {
        'DEBUG': '\033[36m',
        'INFO': '\033[32m',
        'WARNING': '\033[33m',
        'ERROR': '\033[31m',
        'CRITICAL': '\033[35m',
        'RESET': '\033[0m'
    }

    EMOJIS = {
        'DEBUG': '🔍',
        'INFO': 'ℹ️',
        'WARNING': '⚠️',
        'ERROR': '❌',
        'CRITICAL': '🚨'
    }

    def format(self, record):
        # Work on a copy: file handlers share the record
        record = logging.makeLogRecord(record.__dict__)
        level_color = self.COLORS.get(record.levelname, self.COLORS['RESET'])
        emoji = self.EMOJIS.get(record.levelname, '📝')
        record.levelname = f"{level_color}{record.levelname}{self.COLORS['RESET']}"
        record.msg = f"{emoji} {record.msg}"
        return super().format(record)


class JobFormatter(logging.Formatter):
    """Prefixes records that carry a job_id"""

    def format(self, record):
        job_id = getattr(record, 'job_id', None)
        if job_id:
            record = logging.makeLogRecord(record.__dict__)
            record.msg = f"[{job_id}] {record.msg}"
        return super().format(record)


class ScopeLogger:
    """Owns the handlers of the nhscope logger tree"""

    def __init__(self,
                 name: str = ROOT_LOGGER_NAME,
                 log_level: str = "INFO",
                 log_file: Optional[str] = None,
                 enable_console: bool = True,
                 enable_colors: bool = True):
        self.name = name
        self.log_level = log_level.upper()
        self.log_file = log_file
        self.enable_console = enable_console
        self.enable_colors = enable_colors

        level = getattr(logging, self.log_level, None)
        if not isinstance(level, int):
            raise ValueError(f"Unknown log level: {log_level}")
        self.level = level

        self.logger = logging.getLogger(name)
        self.logger.setLevel(level)
        self.logger.handlers.clear()

        self._setup_formatters()
        if self.enable_console:
            self._setup_console_handler()
        if self.log_file:
            self._setup_file_handler()

    def _setup_formatters(self):
        """Setup log formatters"""
        fmt = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
        if self.enable_colors:
            self.console_formatter = ColoredFormatter(fmt=fmt, datefmt='%H:%M:%S')
        else:
            self.console_formatter = JobFormatter(fmt=fmt, datefmt='%H:%M:%S')

        self.file_formatter = JobFormatter(
            fmt='%(asctime)s - %(name)s - %(levelname)s - %(funcName)s:%(lineno)d - %(message)s',
            datefmt='%Y-%m-%d %H:%M:%S'
        )

    def _setup_console_handler(self):
        console_handler = logging.StreamHandler(sys.stderr)
        console_handler.setLevel(self.level)
        console_handler.setFormatter(self.console_formatter)
        self.logger.addHandler(console_handler)

    def _setup_file_handler(self):
        log_path = Path(self.log_file)
        log_path.parent.mkdir(parents=True, exist_ok=True)

        file_handler = logging.FileHandler(log_path, encoding="utf-8")
        file_handler.setLevel(self.level)
        file_handler.setFormatter(self.file_formatter)
        self.logger.addHandler(file_handler)

    def job_start(self, job_id: str, command: str, target: str):
        self.logger.info(f"🚀 Starting {command} for {target}", extra={"job_id": job_id})

    def job_complete(self, job_id: str, execution_time: float):
        self.logger.info(f"✅ Job completed in {execution_time:.2f}s", extra={"job_id": job_id})

    def job_failed(self, job_id: str, error: str):
        self.logger.error(f"❌ Job failed: {error}", extra={"job_id": job_id})

    def sweep_progress(self, job_id: str, done: int, total: int):
        percent = 100.0 * done / total if total else 100.0
        self.logger.debug(f"📊 Sweep progress: {done}/{total} ({percent:.1f}%)",
                          extra={"job_id": job_id})


# Global logger instance
_global_logger: Optional[ScopeLogger] = None


def initialize_logger(log_level: str = "INFO",
                      log_file: Optional[str] = None,
                      enable_console: bool = True,
                      enable_colors: bool = True) -> ScopeLogger:
    """Initialize the global logger"""
    global _global_logger

    _global_logger = ScopeLogger(
        name=ROOT_LOGGER_NAME,
        log_level=log_level,
        log_file=log_file,
        enable_console=enable_console,
        enable_colors=enable_colors and sys.stderr.isatty()
    )
    return _global_logger


def get_logger(name: Optional[str] = None) -> logging.Logger:
    """Get a logger below the nhscope root"""
    if _global_logger is None:
        initialize_logger(log_level="WARNING")

    if not name:
        return _global_logger.logger
    if name == ROOT_LOGGER_NAME or name.startswith(ROOT_LOGGER_NAME + "."):
        return logging.getLogger(name)
    return logging.getLogger(f"{ROOT_LOGGER_NAME}.{name}")


def log_job_start(job_id: str, command: str, target: str):
    if _global_logger:
        _global_logger.job_start(job_id, command, target)


def log_job_complete(job_id: str, execution_time: float):
    if _global_logger:
        _global_logger.job_complete(job_id, execution_time)


def log_job_failed(job_id: str, error: str):
    if _global_logger:
        _global_logger.job_failed(job_id, error)


def log_sweep_progress(job_id: str, done: int, total: int):
    if _global_logger:
        _global_logger.sweep_progress(job_id, done, total)

#!/usr/bin/env python3
"""
Logging setup for the infobs command line tool

Features:
- Console log on stderr (stdout carries command results)
- Optional rotating file logs: plain text, structured JSON and errors only
- Run context (command, seed, n, instance) copied into JSON records
- Uncaught exceptions logged at CRITICAL
"""

import json
import logging
import logging.handlers
import sys
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

RUN_FIELDS = ("command", "seed", "n", "instance")

TEXT_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
ERROR_FORMAT = TEXT_FORMAT + '\n%(pathname)s:%(lineno)d\n'
CONSOLE_FORMAT = '%(levelname)s: %(message)s'


class JSONFormatter(logging.Formatter):
    """One JSON object per record, with any run context passed through extra="""

    def format(self, record: logging.LogRecord) -> str:
        entry: Dict[str, Any] = {
            'timestamp': datetime.fromtimestamp(record.created).isoformat(),
            'level': record.levelname,
            'logger': record.name,
            'message': record.getMessage(),
            'where': f"{record.module}.{record.funcName}:{record.lineno}",
        }
        context = {name: getattr(record, name) for name in RUN_FIELDS if hasattr(record, name)}
        if context:
            entry['run'] = context
        if record.exc_info and record.exc_info[0] is not None:
            exc_type, exc_value, _ = record.exc_info
            entry['exception'] = {
                'type': exc_type.__name__,
                'message': str(exc_value),
                'traceback': self.formatException(record.exc_info),
            }
        return json.dumps(entry, default=str)


class LoggingSystem:
    """Handlers of one CLI run, attached to the root logger"""

    def __init__(self,
                 log_dir: Optional[str] = None,
                 max_file_size: int = 10 * 1024 * 1024,  # 10 MB
                 backup_count: int = 5,
                 log_level: str = 'WARNING'):
        """
        Args:
            log_dir: Directory for log files, None for console logging only
            max_file_size: Maximum size of each log file in bytes
            backup_count: Number of rotated files kept per log
            log_level: DEBUG, INFO, WARNING, ERROR or CRITICAL (case-insensitive)
        """
        self.log_dir = Path(log_dir) if log_dir else None
        self.max_file_size = max_file_size
        self.backup_count = backup_count
        self.log_level = getattr(logging, str(log_level).upper(), logging.WARNING)
        self.handlers: List[logging.Handler] = []
        self._install()

    def _file_specs(self) -> List[Tuple[str, logging.Formatter, int]]:
        return [
            ('infobs.log', logging.Formatter(TEXT_FORMAT), self.log_level),
            ('infobs.json.log', JSONFormatter(), self.log_level),
            ('errors.log', logging.Formatter(ERROR_FORMAT), logging.ERROR),
        ]

    def _install(self):
        console = logging.StreamHandler(sys.stderr)
        console.setFormatter(logging.Formatter(CONSOLE_FORMAT))
        console.setLevel(self.log_level)
        self.handlers.append(console)

        if self.log_dir is not None:
            self.log_dir.mkdir(parents=True, exist_ok=True)
            for name, formatter, level in self._file_specs():
                handler = logging.handlers.RotatingFileHandler(
                    self.log_dir / name, maxBytes=self.max_file_size, backupCount=self.backup_count)
                handler.setFormatter(formatter)
                handler.setLevel(level)
                self.handlers.append(handler)

        root = logging.getLogger()
        root.setLevel(self.log_level)
        for handler in self.handlers:
            root.addHandler(handler)
        logging.getLogger(__name__).debug(
            f"Logging at {logging.getLevelName(self.log_level)}, "
            f"files in {self.log_dir.absolute() if self.log_dir else 'none'}")

    def flush(self):
        for handler in self.handlers:
            handler.flush()

    def close(self):
        root = logging.getLogger()
        for handler in self.handlers:
            root.removeHandler(handler)
            handler.close()
        self.handlers = []


_logging_system: Optional[LoggingSystem] = None


def get_logging_system(log_dir: Optional[str] = None, log_level: str = 'WARNING',
                       reconfigure: bool = False) -> LoggingSystem:
    """Current logging system; reconfigure replaces its handlers"""
    global _logging_system
    if _logging_system is None or reconfigure:
        if _logging_system is not None:
            _logging_system.close()
        _logging_system = LoggingSystem(log_dir=log_dir, log_level=log_level)
    return _logging_system


def setup_exception_logging():
    """Log uncaught exceptions at CRITICAL through sys.excepthook"""
    def exception_handler(exc_type, exc_value, exc_traceback):
        if issubclass(exc_type, KeyboardInterrupt):
            sys.__excepthook__(exc_type, exc_value, exc_traceback)
            return
        logging.critical("Uncaught exception", exc_info=(exc_type, exc_value, exc_traceback))

    sys.excepthook = exception_handler

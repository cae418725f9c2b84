import logging
import datetime
import re
from pathlib import Path
from typing import Optional, Tuple

import config.settings as settings


class LoggerFactory:
    """
    Builds the engine's loggers and the file handlers that capture a run or a CLI session.
    """

    _DEFAULT_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
    _DEFAULT_LEVEL = logging.getLevelName(settings.LOG_LEVEL.upper())
    _UNSAFE = re.compile(r"[^A-Za-z0-9_.-]+")

    @staticmethod
    def get_logger(name: str, level: Optional[int] = None) -> logging.Logger:
        logger = logging.getLogger(name)
        logger.setLevel(LoggerFactory._DEFAULT_LEVEL if level is None else level)
        if not logger.handlers:
            stream = logging.StreamHandler()
            stream.setFormatter(logging.Formatter(LoggerFactory._DEFAULT_FORMAT))
            logger.addHandler(stream)
        return logger

    @staticmethod
    def run_log_path(run_id: str, scenario_path: str) -> Path:
        """Timestamped file under LOGS_DIR named after the scenario file and the run."""
        stamp = datetime.datetime.now().strftime("%Y%m%d_%H%M%S")
        scenario = LoggerFactory._UNSAFE.sub("_", Path(scenario_path).stem)
        run = LoggerFactory._UNSAFE.sub("_", run_id)
        return Path(settings.LOGS_DIR) / f"run_{stamp}_{scenario}_{run}.log"

    @staticmethod
    def _open_handler(log_file: Path) -> logging.FileHandler:
        log_file.parent.mkdir(parents=True, exist_ok=True)
        handler = logging.FileHandler(log_file, encoding="utf-8")
        handler.setLevel(LoggerFactory._DEFAULT_LEVEL)
        handler.setFormatter(logging.Formatter(LoggerFactory._DEFAULT_FORMAT))
        return handler

    @staticmethod
    def setup_run_logger(run_id: str, scenario_path: str,
                         base_name: str = "netattack.engine") -> Tuple[logging.Logger, Optional[logging.FileHandler]]:
        """
        Attach a file handler for one attack run to the engine logger.

        Args:
            run_id: Identifier of the run (profile + seed)
            scenario_path: Scenario file being simulated; its stem goes into the file name
            base_name: Logger the handler is attached to

        Returns:
            (logger, handler). The handler is None when the file could not be opened
            or is already attached. Release it with detach() when the run ends.
        """
        logger = logging.getLogger(base_name)
        logger.setLevel(LoggerFactory._DEFAULT_LEVEL)
        log_file = LoggerFactory.run_log_path(run_id, scenario_path).absolute()

        if any(isinstance(h, logging.FileHandler) and h.baseFilename == str(log_file) for h in logger.handlers):
            return logger, None
        try:
            handler = LoggerFactory._open_handler(log_file)
        except OSError as e:
            logger.warning(f"⚠️ Run log unavailable for {run_id}: {e}")
            return logger, None

        logger.addHandler(handler)
        logger.info(f"📄 Run {run_id} logging to {log_file}")
        return logger, handler

    @staticmethod
    def setup_global_file_logger(base_filename: str = "netattack_session") -> Optional[logging.FileHandler]:
        """Send every netattack log record of this CLI session to a file as well."""
        stamp = datetime.datetime.now().strftime("%Y%m%d_%H%M%S")
        log_file = Path(settings.LOGS_DIR) / f"{base_filename}_{stamp}.log"
        try:
            handler = LoggerFactory._open_handler(log_file)
        except OSError as e:
            logging.getLogger("netattack").warning(f"⚠️ Session log unavailable: {e}")
            return None

        root = logging.getLogger()
        root.setLevel(LoggerFactory._DEFAULT_LEVEL)
        root.addHandler(handler)
        logging.getLogger("netattack").info(f"📄 Session logging to {log_file}")
        return handler

    @staticmethod
    def detach(logger: logging.Logger, handler: Optional[logging.Handler]) -> None:
        """Remove and close a handler returned by one of the setup methods."""
        if handler is None:
            return
        logger.removeHandler(handler)
        handler.close()

"""Registro de depuración de dlp (activado con --debug).

Los módulos de análisis nunca crean archivos de log por su cuenta: solo
escriben cuando la CLI ya creó el DebugLogger.
"""

import logging
import os
import sys
from datetime import datetime
from typing import Any, Optional

import numpy as np

LOGGER_NAME = "delocalization_power"
LOG_FORMAT = "%(asctime)s | %(levelname)-8s | %(funcName)-30s | %(message)s"


def _default_log_dir() -> str:
    return os.path.join(os.path.expanduser("~"), ".dlp_logs")


def _format_value(value: Any) -> str:
    if isinstance(value, float):
        return f"{value:.3e}"
    if isinstance(value, np.ndarray):
        return f"array{value.shape}"
    return str(value)


class DebugLogger:
    """Singleton que escribe una sesión de depuración por ejecución."""

    _instance: Optional["DebugLogger"] = None
    _initialized: bool = False

    def __new__(cls, log_dir: Optional[str] = None):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __init__(self, log_dir: Optional[str] = None):
        if DebugLogger._initialized:
            return

        target_dir = log_dir or _default_log_dir()
        os.makedirs(target_dir, exist_ok=True)
        stamp = datetime.now().strftime("%Y%m%d_%H%M%S")
        self.log_path = os.path.join(target_dir, f"dlp_debug_{stamp}.log")

        self.logger = logging.getLogger(LOGGER_NAME)
        self.logger.setLevel(logging.DEBUG)
        self.logger.propagate = False
        self._handler = logging.FileHandler(self.log_path, encoding="utf-8")
        self._handler.setFormatter(logging.Formatter(LOG_FORMAT, datefmt="%Y-%m-%d %H:%M:%S"))
        self.logger.addHandler(self._handler)

        self.logger.info("=" * 80)
        self.logger.info(f"SESIÓN dlp | numpy {np.__version__} | {self.log_path}")
        self.logger.info("=" * 80)

        # stdout queda reservado para los reportes JSON
        print(f"\n📝 Logging habilitado: {self.log_path}\n", file=sys.stderr)
        DebugLogger._initialized = True

    def debug(self, message: str):
        self.logger.debug(message, stacklevel=2)

    def info(self, message: str):
        self.logger.info(message, stacklevel=2)

    def warning(self, message: str):
        self.logger.warning(message, stacklevel=2)

    def error(self, message: str):
        self.logger.error(message, stacklevel=2)

    def function_enter(self, func_name: str, **kwargs):
        """Registra la entrada a una operación con sus parámetros."""
        params = ", ".join(f"{k}={_format_value(v)}" for k, v in kwargs.items())
        self.logger.info(f">>> ENTRANDO a {func_name}({params})", stacklevel=2)

    def function_exit(self, func_name: str, return_value=None):
        if return_value is None:
            self.logger.info(f"<<< SALIENDO de {func_name}", stacklevel=2)
        else:
            self.logger.info(f"<<< SALIENDO de {func_name} -> {return_value}", stacklevel=2)

    def residuals(self, label: str, **values: Optional[float]):
        """Registra residuos numéricos en notación científica; omite los que valen None."""
        parts = [f"{k}={_format_value(v)}" for k, v in values.items() if v is not None]
        self.logger.debug(f"{label}: {' '.join(parts)}", stacklevel=2)

    def close(self):
        """Desconecta el handler del archivo (los tests reinician el singleton)."""
        self._handler.flush()
        self.logger.removeHandler(self._handler)
        self._handler.close()

    def get_log_path(self) -> str:
        return self.log_path


_debug_logger: Optional[DebugLogger] = None


def get_logger(log_dir: Optional[str] = None) -> DebugLogger:
    """Obtiene (o crea) la instancia global del logger."""
    global _debug_logger
    if _debug_logger is None:
        _debug_logger = DebugLogger(log_dir)
    return _debug_logger


def is_logging_enabled() -> bool:
    return _debug_logger is not None


def log_debug(message: str) -> None:
    """Emite un mensaje de debug solo si el logging fue habilitado con --debug."""
    if is_logging_enabled():
        _debug_logger.logger.debug(message, stacklevel=2)

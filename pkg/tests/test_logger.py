"""Tests for the debug logger."""

import numpy as np
import pytest

from delocalization_power.core import logger


@pytest.fixture
def fresh_logger(tmp_path, monkeypatch):
    monkeypatch.setattr(logger, "_debug_logger", None)
    monkeypatch.setattr(logger.DebugLogger, "_instance", None)
    monkeypatch.setattr(logger.DebugLogger, "_initialized", False)
    yield tmp_path
    if logger._debug_logger is not None:
        logger._debug_logger.close()


def _read(debug_logger):
    for handler in debug_logger.logger.handlers:
        handler.flush()
    with open(debug_logger.get_log_path(), encoding="utf-8") as handle:
        return handle.read()


class TestDebugLogger:
    def test_disabled_by_default(self, fresh_logger):
        assert logger.is_logging_enabled() is False
        logger.log_debug("ignored")

    def test_get_logger_writes_session_file(self, fresh_logger, capsys):
        debug_logger = logger.get_logger(str(fresh_logger))
        assert logger.is_logging_enabled()
        assert "Logging habilitado" in capsys.readouterr().err
        assert debug_logger.get_log_path().startswith(str(fresh_logger))

        debug_logger.function_enter("classify_gate", gate="cnot")
        logger.log_debug("schmidt rank 2")

        text = _read(debug_logger)
        assert "SESIÓN dlp" in text
        assert "ENTRANDO a classify_gate(gate=cnot)" in text
        assert "schmidt rank 2" in text

    def test_numeric_arguments_are_summarized(self, fresh_logger):
        debug_logger = logger.get_logger(str(fresh_logger))
        debug_logger.function_enter("verify", tol=1e-9, matrix=np.eye(4))
        text = _read(debug_logger)
        assert "tol=1.000e-09" in text
        assert "matrix=array(4, 4)" in text

    def test_residuals_skip_missing_values(self, fresh_logger):
        debug_logger = logger.get_logger(str(fresh_logger))
        debug_logger.residuals("classify residuals", diagonality=2.5e-7, reconstruction=None)
        text = _read(debug_logger)
        assert "classify residuals: diagonality=2.500e-07" in text
        assert "reconstruction" not in text

    def test_singleton(self, fresh_logger):
        assert logger.get_logger(str(fresh_logger)) is logger.get_logger()

    def test_close_detaches_handler(self, fresh_logger):
        debug_logger = logger.get_logger(str(fresh_logger))
        handler = debug_logger._handler
        debug_logger.close()
        assert handler not in debug_logger.logger.handlers

"""Logging configuration and utilities."""

import json
import logging
import sys
from datetime import datetime, timezone
from typing import Any, Dict, Optional


class StructuredFormatter(logging.Formatter):
    """Structured JSON formatter for logs."""

    def format(self, record: logging.LogRecord) -> str:
        """Format log record as JSON."""
        log_data = {
            "timestamp": datetime.now(timezone.utc).isoformat(),
            "level": record.levelname,
            "logger": record.name,
            "message": record.getMessage(),
            "module": record.module,
            "function": record.funcName,
            "line": record.lineno,
        }

        if record.exc_info:
            log_data["exception"] = self.formatException(record.exc_info)

        # Structured fields arrive via extra={"fields": {...}}
        fields = getattr(record, "fields", None)
        if isinstance(fields, dict):
            log_data.update(fields)

        return json.dumps(log_data, default=str)


def setup_logging(
    level: str = "INFO",
    structured: bool = False,
    log_file: Optional[str] = None,
) -> None:
    """Setup logging configuration.

    Args:
        level: Logging level (DEBUG, INFO, WARNING, ERROR)
        structured: Use structured JSON logging
        log_file: Optional log file path
    """
    log_level = getattr(logging, level.upper(), logging.INFO)

    if structured:
        formatter: logging.Formatter = StructuredFormatter()
    else:
        formatter = logging.Formatter("%(asctime)s - %(name)s - %(levelname)s - %(message)s")

    handlers = []

    # Data products may go to stdout; diagnostics always go to stderr.
    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setFormatter(formatter)
    handlers.append(console_handler)

    if log_file:
        file_handler = logging.FileHandler(log_file)
        file_handler.setFormatter(formatter)
        handlers.append(file_handler)

    logging.basicConfig(level=log_level, handlers=handlers, force=True)


class RunLogger:
    """Structured logger for fit and command lifecycle events."""

    def __init__(self, name: str = "hawkesmisd.run"):
        self.logger = logging.getLogger(name)

    def _emit(self, level: int, message: str, fields: Dict[str, Any]) -> None:
        self.logger.log(level, message, extra={"fields": fields})

    def log_command(self, command: str, status: str, duration_ms: float) -> None:
        """Log a finished CLI command."""
        self._emit(
            logging.INFO,
            f"Command {command} finished with status {status} in {duration_ms:.1f} ms",
            {"event": "command", "command": command, "status": status, "duration_ms": duration_ms},
        )

    def log_iteration(self, iteration: int, max_delta: float, mu: float) -> None:
        """Log one EM iteration."""
        self._emit(
            logging.DEBUG,
            f"EM iteration {iteration}: max |dP| = {max_delta:.3e}, mu = {mu:.6g}",
            {"event": "fit_iteration", "iteration": iteration, "max_delta": max_delta, "mu": mu},
        )

    def log_fit(self, n: int, iterations: int, converged: bool, eta_t: float, duration_ms: float) -> None:
        """Log a completed fit; non-convergence is a warning."""
        level = logging.INFO if converged else logging.WARNING
        state = "converged" if converged else "did NOT converge"
        self._emit(
            level,
            f"MISD fit on {n} events {state} after {iterations} iterations (eta_t = {eta_t:.4f})",
            {
                "event": "fit_complete",
                "n": n,
                "iterations": iterations,
                "converged": converged,
                "eta_t": eta_t,
                "duration_ms": duration_ms,
            },
        )

    def log_degenerate(self, what: str) -> None:
        """Log a degenerate-triggering signal."""
        self._emit(logging.WARNING, f"Degenerate triggering: {what}", {"event": "degenerate", "detail": what})

    def log_ingest(self, accepted: int, dropped: int, source: str) -> None:
        """Log ingest row accounting."""
        self._emit(
            logging.INFO,
            f"Ingested {accepted} events from {source}; {dropped} rows outside the window dropped",
            {"event": "ingest", "accepted": accepted, "dropped": dropped, "source": source},
        )

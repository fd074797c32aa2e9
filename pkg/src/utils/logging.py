"""JSON-lines logging for enumeration, routing, and check progress.

Modules attach structured details with `extra={"context": {...}}`. Context
values are usually vertex counts, milestone tuples, and exact rationals; a
`Fraction` is written as "p/q" so log lines match the strings in reports.

Logs go to stderr only. Stdout and report files hold results, which must be
byte-identical across reruns, so nothing time-dependent is ever written there.
"""

from __future__ import annotations

import json
import logging
import sys
from datetime import datetime, timezone
from fractions import Fraction
from typing import Any

from src.config import settings


def _jsonable(value: Any) -> Any:
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, (set, frozenset)):
        return sorted(_jsonable(v) for v in value)
    return value


class JsonFormatter(logging.Formatter):
    """One JSON object per record: ts, level, logger, message, context, exception."""

    def format(self, record: logging.LogRecord) -> str:
        payload: dict[str, Any] = {
            "ts": datetime.now(timezone.utc).isoformat(),
            "level": record.levelname,
            "logger": record.name,
            "message": record.getMessage(),
        }

        context = getattr(record, "context", None)
        if isinstance(context, dict):
            payload["context"] = _jsonable(context)

        if record.exc_info:
            payload["exception"] = self.formatException(record.exc_info)

        return json.dumps(payload, ensure_ascii=False, default=str)


def configure_logging(debug: bool | None = None) -> None:
    """Install the JSON handler on the root logger, replacing any earlier one.

    `debug=None` falls back to `settings.debug`. Debug level adds expansion
    values and generator acceptance; info level logs each finished computation.
    """

    effective_debug = settings.debug if debug is None else debug
    level = logging.DEBUG if effective_debug else logging.INFO

    root_logger = logging.getLogger()
    root_logger.setLevel(level)
    for handler in list(root_logger.handlers):
        root_logger.removeHandler(handler)

    handler = logging.StreamHandler(sys.stderr)
    handler.setLevel(level)
    handler.setFormatter(JsonFormatter())
    root_logger.addHandler(handler)


def get_logger(name: str) -> logging.Logger:
    return logging.getLogger(name)

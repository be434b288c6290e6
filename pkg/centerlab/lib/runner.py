import io
import json
import logging
import os
import sys
import time
import traceback
import warnings
from typing import Any, Dict, TextIO

from .command import Command
from .errors import CenteringError

LOG_LEVEL_ENV = "CENTERLAB_LOG_LEVEL"
LOG_FORMAT = "%(asctime)s [%(levelname)s] %(message)s"

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_ENV = 2
EXIT_EXECUTION = 3
EXIT_CONFIG = 5
EXIT_DEPS = 6

logger = logging.getLogger(__name__)


def emit_error(payload: Dict[str, Any], stream: TextIO = None) -> None:
    stream = stream or sys.stderr
    stream.write(json.dumps(payload, ensure_ascii=False, default=str) + "\n")


def log_level() -> int:
    """Nivel de $CENTERLAB_LOG_LEVEL (DEBUG por defecto); ValueError si no es un nivel de logging."""
    name = os.getenv(LOG_LEVEL_ENV, "DEBUG").strip().upper()
    level = logging.getLevelName(name)
    if not isinstance(level, int):
        raise ValueError(f"{LOG_LEVEL_ENV}={name!r} no es un nivel de logging")
    return level


def _capture_logs(log_stream: io.StringIO, level: int) -> logging.Handler:
    # un handler por ejecución escribiendo al buffer
    handler = logging.StreamHandler(log_stream)
    handler.setFormatter(logging.Formatter(LOG_FORMAT))
    root = logging.getLogger()
    root.addHandler(handler)
    root.setLevel(level)
    return handler


def run(command: Command, stdout: TextIO = None) -> int:
    """Ejecuta el subcomando y devuelve el código de salida.

    Éxito: resumen JSON en stdout con los artefactos, totales y logs capturados.
    Fallo: un documento JSON en stderr.
    """
    stdout = stdout or sys.stdout
    try:
        level = log_level()
    except ValueError as e:
        emit_error({"system": "Error: nivel de log inválido", "message": str(e)})
        return EXIT_ENV

    writer = getattr(command.deps, "writer", None)
    if writer is not None:
        try:
            writer.prepare()
        except OSError as e:
            emit_error({
                "system": f"Error: no se puede usar el directorio de salida {writer.out_dir}",
                "message": str(e),
            })
            return EXIT_ENV

    log_stream = io.StringIO()
    root = logging.getLogger()
    previous_level = root.level
    handler = None
    t0 = time.time()
    try:
        handler = _capture_logs(log_stream, level)
        logger.debug(f"[RUN] {command.name} config={command.cfg.model_dump(mode='json')}")
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            result = command.resolve()
        duration_ms = int((time.time() - t0) * 1000)

        out = {
            "command": command.name,
            "config": command.cfg.model_dump(mode="json"),
            "result": result,
            "artifacts": writer.written if writer is not None else [],
            "warnings": [str(w.message) for w in caught],
            "totals": {
                "latency_ms": duration_ms,
            },
            "logs": log_stream.getvalue(),
        }
        stdout.write(json.dumps(out, ensure_ascii=False, default=str) + "\n")
        return EXIT_OK
    except CenteringError as e:
        logger.error(f"[RUN] {command.name}: {e}")
        emit_error({
            "system": f"Error ejecutando {command.name}",
            "errors": [e.to_json()],
            "type": type(e).__name__,
            "logs": log_stream.getvalue(),
        })
        return EXIT_EXECUTION
    except Exception as e:
        tb_str = "".join(traceback.format_exception(type(e), e, e.__traceback__))
        emit_error({
            "system": f"Error ejecutando {command.name}",
            "message": str(e),
            "type": type(e).__name__,
            "traceback": tb_str,
        })
        return EXIT_EXECUTION
    finally:
        if handler is not None:
            root.removeHandler(handler)
        root.setLevel(previous_level)

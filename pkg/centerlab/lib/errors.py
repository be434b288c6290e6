from typing import Any, Dict, List, Optional

import numpy as np

Json = Dict[str, Any]


class CenteringError(ValueError):
    """Error base de la librería: cada subclase tiene un código estable y un título.

    `to_json()` devuelve el mismo formato de error que usan las validaciones de
    configuración, así la CLI puede volcar cualquier fallo como JSON.
    """
    code = "centerlab.error"
    title = "Error"

    def __init__(self, detail: str, pointer: Optional[str] = None, meta: Optional[Json] = None):
        super().__init__(detail)
        self.detail = detail
        self.pointer = pointer
        self.meta = meta or {}

    def to_json(self) -> Json:
        err: Json = {
            "code": self.code,
            "title": self.title,
            "detail": self.detail,
        }
        if self.pointer:
            err["source"] = {"pointer": self.pointer}
        if self.meta:
            err["meta"] = self.meta
        return err


class InvalidInputError(CenteringError):
    code = "input.invalid"
    title = "Entrada inválida"


class DimensionError(CenteringError):
    code = "input.dimension"
    title = "Dimensiones incompatibles"


class BoundsError(CenteringError):
    code = "input.bounds"
    title = "Valor fuera de rango"


class NumericalError(CenteringError):
    code = "numerical.failure"
    title = "Fallo numérico"


class UndefinedCorrelationError(CenteringError):
    code = "correlation.undefined"
    title = "Correlación no definida"


class DegenerateInputError(CenteringError):
    code = "input.degenerate"
    title = "Entrada degenerada"


class UndefinedProportionError(DegenerateInputError):
    code = "energy.undefined"
    title = "Proporción de energía no definida"


class ParseError(CenteringError):
    code = "file.parse"
    title = "Error de lectura"

    def __init__(self, detail: str, line: Optional[int] = None, **kwargs):
        meta = dict(kwargs.pop("meta", None) or {})
        if line is not None:
            meta["line"] = line
        super().__init__(detail, meta=meta, **kwargs)
        self.line = line


class UsageError(CenteringError):
    code = "cli.usage"
    title = "Uso incorrecto"


class PartialModelWarning(UserWarning):
    """El PLS secuencial se detuvo antes de K componentes."""


def offending_cells(mask, limit: int = 20) -> List[List[int]]:
    """Lista (fila, columna) de las celdas marcadas, como mucho `limit`."""
    idx = np.argwhere(np.asarray(mask))
    return [[int(i), int(j)] for i, j in idx[:limit]]

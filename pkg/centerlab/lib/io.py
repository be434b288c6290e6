"""Lectura y escritura de matrices en CSV, transformaciones logarítmicas y ficheros de etiquetas."""
import logging
from enum import Enum
from pathlib import Path
from typing import List, Optional, Union

import numpy as np
import pandas as pd
from pydantic import BaseModel, Field

from .errors import InvalidInputError, ParseError, offending_cells
from .matrix import DataMatrix, MatrixLike, as_matrix

logger = logging.getLogger(__name__)

DEFAULT_PRECISION = 17


class Transform(str, Enum):
    NONE = "none"
    LOG10 = "log10"
    LOG10_PLUS1 = "log10_plus1"


class MatrixFile(BaseModel):
    path: str = Field(..., title="Ruta del CSV")
    transpose: bool = Field(False, title="El fichero tiene los objetos en filas")
    header: bool = Field(False, title="Primera fila con etiquetas de columna")
    index: bool = Field(False, title="Primera columna con etiquetas de fila")
    delimiter: str = Field(",", min_length=1, max_length=1, title="Separador")


def _first_data_line(file: MatrixFile) -> int:
    return 2 if file.header else 1


def _to_float(cell) -> float:
    # float() redondea correctamente: %.17g vuelve al mismo double
    try:
        return float(cell)
    except (TypeError, ValueError):
        return np.nan


def _read_frame(file: MatrixFile) -> pd.DataFrame:
    try:
        return pd.read_csv(
            file.path,
            sep=file.delimiter,
            header=0 if file.header else None,
            index_col=0 if file.index else None,
            skip_blank_lines=True,
            dtype=str,
            keep_default_na=False,
        )
    except FileNotFoundError as ex:
        raise ParseError(f"no existe el fichero {file.path}", pointer="/path") from ex
    except pd.errors.EmptyDataError as ex:
        raise ParseError(f"{file.path} está vacío", line=1) from ex
    except pd.errors.ParserError as ex:
        # pandas informa "Expected N fields in line L, saw M"
        line = None
        msg = str(ex)
        if " in line " in msg:
            try:
                line = int(msg.split(" in line ")[1].split(",")[0])
            except ValueError:
                line = None
        raise ParseError(f"filas de longitud irregular en {file.path}: {msg.strip()}", line=line) from ex


def apply_transform(values: np.ndarray, transform: Transform) -> np.ndarray:
    transform = Transform(transform)
    if transform is Transform.NONE:
        return values
    if transform is Transform.LOG10:
        bad = values <= 0
        if bad.any():
            raise InvalidInputError(
                f"log10 necesita entradas estrictamente positivas; {int(bad.sum())} celdas no lo son",
                pointer="/transform",
                meta={"cells": offending_cells(bad)},
            )
        return np.log10(values)
    bad = values < 0
    if bad.any():
        raise InvalidInputError(
            f"log10_plus1 necesita entradas ≥ 0; {int(bad.sum())} celdas son negativas",
            pointer="/transform",
            meta={"cells": offending_cells(bad)},
        )
    return np.log10(values + 1.0)


def load_matrix(file: Union[MatrixFile, str], transform: Transform = Transform.NONE) -> DataMatrix:
    """Lee un CSV numérico rectangular y lo devuelve con los objetos en columnas."""
    if isinstance(file, str):
        file = MatrixFile(path=file)
    frame = _read_frame(file)
    if frame.shape[0] == 0 or frame.shape[1] == 0:
        raise ParseError(f"{file.path} no contiene datos", line=_first_data_line(file))

    stripped = frame.apply(lambda col: col.str.strip())
    numeric = stripped.apply(lambda col: col.map(_to_float))
    bad = numeric.isna().to_numpy()
    if bad.any():
        row, col = (int(v) for v in np.argwhere(bad)[0])
        line = _first_data_line(file) + row
        cell = stripped.iat[row, col]
        empty = not isinstance(cell, str) or cell == ""
        what = "fila incompleta o celda vacía" if empty else f"valor no numérico '{cell}'"
        raise ParseError(
            f"{what} en la línea {line}, columna {col + 1}",
            line=line,
            meta={"cells": offending_cells(bad)},
        )

    values = apply_transform(numeric.to_numpy(dtype=np.float64), transform)
    rows = [str(v) for v in frame.index] if file.index else None
    cols = [str(v) for v in frame.columns] if file.header else None
    X = DataMatrix(values, rows, cols)
    if file.transpose:
        X = X.transpose()
    logger.info(f"[IO] {file.path}: {X.d}×{X.n} transformación={Transform(transform).value}")
    return X


def matrix_frame(X: MatrixLike) -> pd.DataFrame:
    M = as_matrix(X)
    return pd.DataFrame(M.values, index=M.trait_labels, columns=M.object_labels)


def save_matrix(
    X: MatrixLike,
    path: Union[str, Path],
    precision: int = DEFAULT_PRECISION,
    delimiter: str = ",",
) -> Path:
    """Escribe la matriz con `precision` cifras significativas (17 reproduce el double exacto).

    Las etiquetas, si las hay, van en la primera fila/columna.
    """
    M = as_matrix(X)
    path = Path(path)
    frame = matrix_frame(M)
    frame.to_csv(
        path,
        sep=delimiter,
        header=M.object_labels is not None,
        index=M.trait_labels is not None,
        float_format=f"%.{precision}g",
        lineterminator="\n",
    )
    logger.debug(f"[IO] escrito {path} ({M.d}×{M.n})")
    return path


def load_labels(path: Union[str, Path], n: int, object_labels: Optional[List[str]] = None) -> List[Optional[str]]:
    """Lee un CSV `object,group` y devuelve el grupo de cada objeto (None si no aparece).

    `object` puede ser un índice desde 0 o una etiqueta de objeto.
    """
    try:
        frame = pd.read_csv(path, dtype=str, keep_default_na=False)
    except FileNotFoundError as ex:
        raise ParseError(f"no existe el fichero de etiquetas {path}", pointer="/labels") from ex
    missing = {"object", "group"} - set(frame.columns)
    if missing:
        raise ParseError(f"al fichero de etiquetas le faltan las columnas {sorted(missing)}", line=1)

    position = {label: i for i, label in enumerate(object_labels or [])}
    groups: List[Optional[str]] = [None] * n
    for row, (obj, group) in enumerate(zip(frame["object"], frame["group"])):
        # las celdas ausentes llegan como "" o NaN según pandas
        obj = obj.strip() if isinstance(obj, str) else ""
        group = group.strip() if isinstance(group, str) else ""
        if not group:
            raise ParseError(f"grupo vacío para el objeto '{obj}' en la línea {row + 2}", line=row + 2)
        if obj in position:
            j = position[obj]
        elif obj.lstrip("-").isdigit():
            j = int(obj)
        else:
            raise ParseError(f"objeto desconocido '{obj}' en la línea {row + 2}", line=row + 2)
        if not 0 <= j < n:
            raise ParseError(f"índice de objeto {j} fuera de [0, {n}) en la línea {row + 2}", line=row + 2)
        groups[j] = group
    return groups

import json
import logging
import os
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import pandas as pd

from ..lib.artifacts import ArtifactWriter
from ..lib.io import save_matrix
from ..lib.matrix import MatrixLike

logger = logging.getLogger(__name__)

OUT_DIR_ENV = "CENTERLAB_OUT_DIR"


class TypeOutDirWriter(ArtifactWriter):
    """Escribe cada artefacto como fichero dentro de un directorio."""

    def __init__(self, out_dir: Union[str, Path]):
        self._out_dir = Path(out_dir)
        self._written: List[str] = []

    @property
    def out_dir(self) -> Path:
        return self._out_dir

    @property
    def written(self) -> List[str]:
        return list(self._written)

    def prepare(self) -> Path:
        self._out_dir.mkdir(parents=True, exist_ok=True)
        if not os.access(self._out_dir, os.W_OK):
            raise PermissionError(f"no se puede escribir en {self._out_dir}")
        return self._out_dir

    def _target(self, name: str) -> Path:
        self._written.append(name)
        return self._out_dir / name

    def write_matrix(self, name: str, X: MatrixLike) -> Path:
        return save_matrix(X, self._target(name))

    def write_frame(self, name: str, frame: pd.DataFrame, index: bool = True) -> Path:
        path = self._target(name)
        frame.to_csv(path, index=index, float_format="%.17g", lineterminator="\n")
        logger.debug(f"[IO] escrito {path}")
        return path

    def write_json(self, name: str, payload: Dict[str, Any]) -> Path:
        path = self._target(name)
        # claves ordenadas y sin marcas de tiempo: mismo resultado, mismos bytes
        text = json.dumps(payload, ensure_ascii=False, sort_keys=True, indent=2, default=_jsonable)
        path.write_text(text + "\n", encoding="utf-8")
        logger.debug(f"[IO] escrito {path}")
        return path

    def write_text(self, name: str, text: str) -> Path:
        path = self._target(name)
        path.write_text(text, encoding="utf-8")
        logger.debug(f"[IO] escrito {path}")
        return path


def _jsonable(value):
    tolist = getattr(value, "tolist", None)
    if callable(tolist):
        return tolist()
    return str(value)


def OutDirWriter(out_dir: Optional[Union[str, Path]] = None):
    return TypeOutDirWriter(out_dir or os.getenv(OUT_DIR_ENV, "."))

from abc import ABC, abstractmethod
from pathlib import Path
from typing import Any, Dict, List

import pandas as pd
from pydantic.json_schema import JsonSchemaValue
from pydantic_core import core_schema

from .matrix import MatrixLike


class ArtifactWriter(ABC):
    """Destino de los artefactos de un subcomando (CSV, JSON, SVG)."""

    @property
    @abstractmethod
    def out_dir(self) -> Path:
        ...

    @property
    @abstractmethod
    def written(self) -> List[str]:
        """Nombres de los artefactos escritos, en orden."""

    @abstractmethod
    def prepare(self) -> Path:
        """Crea el directorio de salida; OSError si no se puede escribir en él."""

    @abstractmethod
    def write_matrix(self, name: str, X: MatrixLike) -> Path:
        ...

    @abstractmethod
    def write_frame(self, name: str, frame: pd.DataFrame, index: bool = True) -> Path:
        ...

    @abstractmethod
    def write_json(self, name: str, payload: Dict[str, Any]) -> Path:
        ...

    @abstractmethod
    def write_text(self, name: str, text: str) -> Path:
        ...

    @classmethod
    def __get_pydantic_core_schema__(cls, _source, _handler):
        return core_schema.is_instance_schema(cls)

    @classmethod
    def __get_pydantic_json_schema__(cls, _core_schema, _handler) -> JsonSchemaValue:
        # esquema genérico, suficiente para documentación
        return {
            "type": "object",
            "title": "ArtifactWriter",
            "description": "Instancia que implementa write_matrix/write_frame/write_json/write_text.",
        }

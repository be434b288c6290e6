"""Matriz de datos d×n (objetos en columnas, rasgos en filas), medias y los cuatro centrados."""
import logging
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Optional, Sequence, Tuple, Union

import numpy as np

from .errors import DimensionError, InvalidInputError, offending_cells

logger = logging.getLogger(__name__)


class CenteringKind(str, Enum):
    NONE = "none"
    GRAND = "grand"
    OBJECT = "object"
    TRAIT = "trait"
    DOUBLE = "double"


class DataMatrix:
    """Matriz inmutable d×n con etiquetas opcionales de rasgos y objetos.

    Las entradas deben ser finitas. El array interno es de solo lectura, así que
    una instancia se puede compartir entre hilos sin copiar.
    """
    __slots__ = ("_values", "_trait_labels", "_object_labels")

    def __init__(
        self,
        values,
        trait_labels: Optional[Sequence[str]] = None,
        object_labels: Optional[Sequence[str]] = None,
    ):
        arr = np.array(values, dtype=np.float64)
        if arr.ndim == 1:
            arr = arr.reshape(1, -1)
        if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
            raise DimensionError(
                f"se esperaba una matriz d×n con d, n ≥ 1, llegó forma {arr.shape}",
                meta={"shape": list(arr.shape)},
            )
        bad = ~np.isfinite(arr)
        if bad.any():
            raise InvalidInputError(
                f"{int(bad.sum())} entradas no finitas (NaN/Inf)",
                meta={"cells": offending_cells(bad)},
            )
        arr.setflags(write=False)

        if trait_labels is not None and len(trait_labels) != arr.shape[0]:
            raise DimensionError(f"{len(trait_labels)} etiquetas de rasgo para d={arr.shape[0]}")
        if object_labels is not None and len(object_labels) != arr.shape[1]:
            raise DimensionError(f"{len(object_labels)} etiquetas de objeto para n={arr.shape[1]}")

        self._values = arr
        self._trait_labels = tuple(str(x) for x in trait_labels) if trait_labels is not None else None
        self._object_labels = tuple(str(x) for x in object_labels) if object_labels is not None else None

    @property
    def values(self) -> np.ndarray:
        return self._values

    @property
    def d(self) -> int:
        return self._values.shape[0]

    @property
    def n(self) -> int:
        return self._values.shape[1]

    @property
    def shape(self) -> Tuple[int, int]:
        return self._values.shape

    @property
    def trait_labels(self) -> Optional[Tuple[str, ...]]:
        return self._trait_labels

    @property
    def object_labels(self) -> Optional[Tuple[str, ...]]:
        return self._object_labels

    def frobenius_norm(self) -> float:
        return float(np.linalg.norm(self._values))

    def transpose(self) -> "DataMatrix":
        return DataMatrix(self._values.T, self._object_labels, self._trait_labels)

    def with_values(self, values) -> "DataMatrix":
        """Misma orientación y etiquetas con otras entradas."""
        return DataMatrix(values, self._trait_labels, self._object_labels)

    def __array__(self, dtype=None, copy=None):
        if dtype is None:
            return self._values
        return self._values.astype(dtype)

    def __repr__(self) -> str:
        return f"DataMatrix(d={self.d}, n={self.n})"


MatrixLike = Union[DataMatrix, np.ndarray, Sequence[Sequence[float]]]


def as_matrix(X: MatrixLike) -> DataMatrix:
    if isinstance(X, DataMatrix):
        return X
    return DataMatrix(X)


@dataclass(frozen=True)
class MeanDecomposition:
    mu_g: float
    mu_d: np.ndarray    # media de cada rasgo a lo largo de los objetos (longitud d)
    mu_n: np.ndarray    # media de cada objeto a lo largo de los rasgos (longitud n)
    MG: np.ndarray
    MO: np.ndarray
    MT: np.ndarray
    MD: np.ndarray


def compute_means(X: MatrixLike) -> MeanDecomposition:
    """Media global, vectores de medias y las matrices de medias M_G, M_O, M_T, M_D.

    M_D = M_O + M_T − M_G, de modo que X − M_D queda doblemente centrada.
    """
    A = as_matrix(X).values
    d, n = A.shape
    mu_g = float(A.mean())
    mu_d = A.mean(axis=1)
    mu_n = A.mean(axis=0)
    MG = np.full((d, n), mu_g)
    MO = np.outer(mu_d, np.ones(n))
    MT = np.outer(np.ones(d), mu_n)
    MD = MO + MT - MG
    for M in (mu_d, mu_n, MG, MO, MT, MD):
        M.setflags(write=False)
    return MeanDecomposition(mu_g, mu_d, mu_n, MG, MO, MT, MD)


def mean_matrices(X: MatrixLike, kind: CenteringKind) -> Dict[str, np.ndarray]:
    """Componentes de media que `center(X, kind)` elimina; su suma es X − center(X, kind)."""
    kind = CenteringKind(kind)
    if kind is CenteringKind.NONE:
        return {}
    means = compute_means(X)
    if kind is CenteringKind.GRAND:
        return {"grand": means.MG}
    if kind is CenteringKind.OBJECT:
        return {"object": means.MO}
    if kind is CenteringKind.TRAIT:
        return {"trait": means.MT}
    return {"object": means.MO, "trait": means.MT, "grand_correction": -means.MG}


def center(X: MatrixLike, kind: CenteringKind) -> DataMatrix:
    """Centra X según `kind`.

    Object resta μ_d de cada columna (filas con suma 0), Trait resta μ_n de cada
    fila (columnas con suma 0), Grand resta μ_G y Double resta M_D. Todas las
    variantes son idempotentes y Object/Trait conmutan.
    """
    M = as_matrix(X)
    kind = CenteringKind(kind)
    A = M.values
    if kind is CenteringKind.NONE:
        return M
    if kind is CenteringKind.GRAND:
        out = A - A.mean()
    elif kind is CenteringKind.OBJECT:
        out = A - A.mean(axis=1, keepdims=True)
    elif kind is CenteringKind.TRAIT:
        out = A - A.mean(axis=0, keepdims=True)
    else:
        out = A - A.mean(axis=1, keepdims=True)
        out = out - out.mean(axis=0, keepdims=True)
    logger.debug(f"[CENTER] {kind.value} sobre {M.d}×{M.n}")
    return M.with_values(out)


def _centering_sums(A: np.ndarray, kind: CenteringKind) -> np.ndarray:
    if kind is CenteringKind.NONE:
        return np.zeros(0)
    if kind is CenteringKind.GRAND:
        return np.array([A.sum()])
    if kind is CenteringKind.OBJECT:
        return A.sum(axis=1)
    if kind is CenteringKind.TRAIT:
        return A.sum(axis=0)
    return np.concatenate([A.sum(axis=1), A.sum(axis=0)])


def is_centered(X: MatrixLike, kind: CenteringKind, tol: float = 1e-12) -> bool:
    """True si las sumas que `center(X, kind)` anula están por debajo de tol·max(1, ‖X‖_F)."""
    if not tol > 0:
        raise InvalidInputError(f"tol debe ser positivo, llegó {tol}", pointer="/tol")
    M = as_matrix(X)
    sums = _centering_sums(M.values, CenteringKind(kind))
    bound = tol * max(1.0, M.frobenius_norm())
    return bool(np.all(np.abs(sums) <= bound))


def frobenius_inner(A, B) -> float:
    """Producto interno de Frobenius Σ_ij A_ij B_ij."""
    a = np.asarray(A, dtype=np.float64)
    b = np.asarray(B, dtype=np.float64)
    if a.shape != b.shape:
        raise DimensionError(f"formas distintas: {a.shape} y {b.shape}")
    return float(np.vdot(a, b))


def mean_orthogonality(X: MatrixLike) -> Dict[str, float]:
    """⟨M_O, M_T⟩_F sobre X y sobre X centrada por la media global.

    Solo el segundo es cero en general; se informan ambos.
    """
    raw = compute_means(X)
    gc = compute_means(center(X, CenteringKind.GRAND))
    return {
        "raw": frobenius_inner(raw.MO, raw.MT),
        "grand_centered": frobenius_inner(gc.MO, gc.MT),
    }

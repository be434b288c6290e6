"""PLS de dos bloques bajo centrado por objetos o doble: SVD de la covarianza cruzada y extracción secuencial."""
import logging
import warnings
from dataclasses import dataclass
from enum import Enum
from typing import Dict

import numpy as np
import pandas as pd

from .decomposition import DEFAULT_RANK_TOL, _svd, canonical_signs, numerical_rank
from .errors import BoundsError, DimensionError, InvalidInputError, PartialModelWarning
from .matrix import CenteringKind, DataMatrix, as_matrix, center

logger = logging.getLogger(__name__)

PLS_CENTERINGS = (CenteringKind.OBJECT, CenteringKind.DOUBLE)


class PlsMethod(str, Enum):
    SVD = "svd"
    SEQUENTIAL = "sequential"


@dataclass(frozen=True)
class TwoBlockData:
    X1: DataMatrix
    X2: DataMatrix

    def __post_init__(self):
        object.__setattr__(self, "X1", as_matrix(self.X1))
        object.__setattr__(self, "X2", as_matrix(self.X2))
        if self.X1.n != self.X2.n:
            raise DimensionError(
                f"los bloques tienen distinto número de objetos: {self.X1.n} y {self.X2.n}"
            )

    @property
    def n(self) -> int:
        return self.X1.n


@dataclass(frozen=True)
class PlsModel:
    """Componentes k = 1..K: pesos w (unitarios), scores t = X_c^T w, loadings de regresión p."""
    w1: np.ndarray  # d1×K
    w2: np.ndarray  # d2×K
    t1: np.ndarray  # n×K
    t2: np.ndarray  # n×K
    p1: np.ndarray  # d1×K
    p2: np.ndarray  # d2×K
    covariances: np.ndarray
    centering: CenteringKind
    method: PlsMethod

    @property
    def n_components(self) -> int:
        return int(self.covariances.size)

    def to_frames(self) -> Dict[str, pd.DataFrame]:
        """Tablas para exportar: pesos y loadings por rasgo, scores por objeto, covarianzas."""
        def block(w, p, t):
            K = w.shape[1]
            rows = {f"w{k + 1}": w[:, k] for k in range(K)}
            rows.update({f"p{k + 1}": p[:, k] for k in range(K)})
            loadings = pd.DataFrame(rows)
            loadings.index.name = "trait"
            scores = pd.DataFrame({f"t{k + 1}": t[:, k] for k in range(K)})
            scores.index.name = "object"
            return loadings, scores

        l1, s1 = block(self.w1, self.p1, self.t1)
        l2, s2 = block(self.w2, self.p2, self.t2)
        cov = pd.DataFrame({"component": np.arange(1, self.n_components + 1), "covariance": self.covariances})
        return {
            "block1_loadings": l1, "block1_scores": s1,
            "block2_loadings": l2, "block2_scores": s2,
            "covariances": cov,
        }


def abs_cosine(u, v) -> float:
    u = np.asarray(u, dtype=np.float64).ravel()
    v = np.asarray(v, dtype=np.float64).ravel()
    nu, nv = np.linalg.norm(u), np.linalg.norm(v)
    if nu == 0 or nv == 0:
        return 0.0
    return float(abs(u @ v) / (nu * nv))


def cross_covariance(blocks: TwoBlockData) -> np.ndarray:
    """Σ₁₂ = (1/n)·X1_O·X2_O^T; ambos bloques se centran por objetos internamente."""
    n = blocks.n
    if n < 2:
        raise DimensionError(f"se necesitan al menos 2 objetos, llegó n={n}")
    A1 = center(blocks.X1, CenteringKind.OBJECT).values
    A2 = center(blocks.X2, CenteringKind.OBJECT).values
    return A1 @ A2.T / n


def _centered_blocks(blocks: TwoBlockData, centering) -> tuple:
    centering = CenteringKind(centering)
    if centering not in PLS_CENTERINGS:
        raise InvalidInputError(
            f"centrado '{centering.value}' no válido para PLS: la covarianza cruzada exige centrar "
            "por objetos, use 'object' o 'double'",
            pointer="/centering",
        )
    if blocks.n < 2:
        raise DimensionError(f"se necesitan al menos 2 objetos, llegó n={blocks.n}")
    return centering, center(blocks.X1, centering).values, center(blocks.X2, centering).values


def _regression_loadings(A: np.ndarray, t: np.ndarray) -> np.ndarray:
    tt = float(t @ t)
    return A @ t / tt if tt > 0 else np.zeros(A.shape[0])


def pls_svd(blocks: TwoBlockData, K: int, centering=CenteringKind.DOUBLE) -> PlsModel:
    """Pesos = K primeros vectores singulares de (1/n)·X1_c·X2_c^T; scores por proyección."""
    centering, A1, A2 = _centered_blocks(blocks, centering)
    n = blocks.n
    C = A1 @ A2.T / n
    rank = numerical_rank(C) if np.any(C) else 0
    if not 1 <= K <= rank:
        raise BoundsError(f"K={K} fuera de [1, {rank}] (rango de la covarianza cruzada)", pointer="/K")
    U, s, Vt = _svd(C)
    W1, W2 = canonical_signs(U[:, :K], Vt[:K].T)
    T1 = A1.T @ W1
    T2 = A2.T @ W2
    P1 = np.column_stack([_regression_loadings(A1, T1[:, k]) for k in range(K)])
    P2 = np.column_stack([_regression_loadings(A2, T2[:, k]) for k in range(K)])
    logger.debug(f"[PLS] svd {centering.value} K={K} cov={np.round(s[:K], 6).tolist()}")
    return PlsModel(W1, W2, T1, T2, P1, P2, s[:K].copy(), centering, PlsMethod.SVD)


def pls_sequential(blocks: TwoBlockData, K: int, centering=CenteringKind.DOUBLE) -> PlsModel:
    """Extracción componente a componente con deflación de cada bloque contra su propio score.

    X_i ← X_i − p_i t_i^T, con p_i = X_i t_i / ‖t_i‖²; los scores de cada bloque
    quedan mutuamente ortogonales. Si un bloque se anula antes de K componentes
    se devuelve el modelo parcial con un aviso.
    """
    centering, A1, A2 = _centered_blocks(blocks, centering)
    if K < 1:
        raise BoundsError(f"K debe ser ≥ 1, llegó {K}", pointer="/K")
    n = blocks.n
    s_first = None
    cols = {key: [] for key in ("w1", "w2", "t1", "t2", "p1", "p2", "cov")}

    for k in range(K):
        C = A1 @ A2.T / n
        U, s, Vt = _svd(C)
        if s_first is None:
            s_first = s[0]
        if s[0] == 0 or s[0] <= DEFAULT_RANK_TOL * s_first:
            _stop_early(k, K, "la covarianza cruzada deflactada es numéricamente nula")
            break
        w1, w2 = canonical_signs(U[:, :1], Vt[:1].T)
        w1, w2 = w1[:, 0], w2[:, 0]
        t1 = A1.T @ w1
        t2 = A2.T @ w2
        p1 = _regression_loadings(A1, t1)
        p2 = _regression_loadings(A2, t2)
        cols["w1"].append(w1)
        cols["w2"].append(w2)
        cols["t1"].append(t1)
        cols["t2"].append(t2)
        cols["p1"].append(p1)
        cols["p2"].append(p2)
        cols["cov"].append(float(t1 @ t2) / n)
        A1 = A1 - np.outer(p1, t1)
        A2 = A2 - np.outer(p2, t2)
        logger.debug(f"[PLS] secuencial {centering.value} componente {k + 1} cov={cols['cov'][-1]:.6g}")

    if not cols["cov"]:
        raise BoundsError("no se pudo extraer ninguna componente: la covarianza cruzada es nula", pointer="/K")

    def stack(key):
        return np.column_stack(cols[key])

    return PlsModel(
        stack("w1"), stack("w2"), stack("t1"), stack("t2"), stack("p1"), stack("p2"),
        np.asarray(cols["cov"]), centering, PlsMethod.SEQUENTIAL,
    )


def _stop_early(k: int, K: int, reason: str):
    msg = f"PLS secuencial detenido tras {k} de {K} componentes: {reason}"
    logger.warning(f"[PLS] {msg}")
    warnings.warn(msg, PartialModelWarning, stacklevel=3)


def fit_pls(blocks: TwoBlockData, K: int, centering=CenteringKind.DOUBLE, method=PlsMethod.SEQUENTIAL) -> PlsModel:
    if PlsMethod(method) is PlsMethod.SVD:
        return pls_svd(blocks, K, centering)
    return pls_sequential(blocks, K, centering)

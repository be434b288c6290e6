"""Modos de variación por SVD bajo cualquier centrado, ledger de correlaciones, rango y reconstrucción."""
import itertools
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional

import numpy as np
import pandas as pd
from scipy import linalg

from .errors import BoundsError, DimensionError, NumericalError, UndefinedCorrelationError
from .matrix import CenteringKind, DataMatrix, MatrixLike, as_matrix, center, mean_matrices

logger = logging.getLogger(__name__)

DEFAULT_RANK_TOL = 1e-10


@dataclass(frozen=True)
class EnergyShares:
    proportions: np.ndarray
    total_energy: float


@dataclass(frozen=True)
class ModesOfVariation:
    """X_c = U·diag(D)·V^T truncada al rango numérico.

    `loadings` (d×r) son direcciones en el espacio de objetos y `scores` (n×r)
    direcciones en el espacio de rasgos; ambas con columnas ortonormales.
    """
    loadings: np.ndarray
    singular_values: np.ndarray
    scores: np.ndarray
    centering: CenteringKind
    mean_components: Dict[str, np.ndarray] = field(default_factory=dict)
    total_energy: float = 0.0

    @property
    def rank(self) -> int:
        return int(self.singular_values.shape[0])

    @property
    def score_coordinates(self) -> np.ndarray:
        """Coordenadas de cada objeto: V·diag(D)."""
        return self.scores * self.singular_values

    def energy_shares(self) -> EnergyShares:
        energy = self.singular_values ** 2
        total = float(energy.sum())
        props = energy / total if total > 0 else np.zeros_like(energy)
        return EnergyShares(props, self.total_energy)


def canonical_signs(U: np.ndarray, V: np.ndarray):
    """La entrada de mayor módulo de cada columna de U pasa a ser positiva; V cambia a la par."""
    if U.shape[1] == 0:
        return U, V
    idx = np.argmax(np.abs(U), axis=0)
    signs = np.sign(U[idx, np.arange(U.shape[1])])
    signs[signs == 0] = 1.0
    return U * signs, V * signs


def _svd(A: np.ndarray):
    try:
        return linalg.svd(A, full_matrices=False, lapack_driver="gesdd")
    except linalg.LinAlgError as ex:
        logger.warning(f"[SVD] gesdd no convergió ({ex}), reintento con gesvd")
    try:
        return linalg.svd(A, full_matrices=False, lapack_driver="gesvd")
    except linalg.LinAlgError as ex:
        raise NumericalError(
            f"la SVD no convergió: {ex}",
            meta={"shape": list(A.shape), "frobenius_norm": float(np.linalg.norm(A))},
        ) from ex


def _rank_from_spectrum(s: np.ndarray, rel_tol: float) -> int:
    if s.size == 0 or s[0] <= 0:
        return 0
    return int(np.sum(s > rel_tol * s[0]))


def numerical_rank(X: MatrixLike, rel_tol: float = DEFAULT_RANK_TOL) -> int:
    """Número de valores singulares mayores que rel_tol·σ₁ (0 para la matriz nula)."""
    if not 0 < rel_tol < 1:
        raise BoundsError(f"rel_tol debe estar en (0,1), llegó {rel_tol}", pointer="/rel_tol")
    s = linalg.svdvals(np.asarray(as_matrix(X).values))
    return _rank_from_spectrum(s, rel_tol)


def svd_modes(
    X: MatrixLike,
    centering: CenteringKind = CenteringKind.OBJECT,
    max_rank: Optional[int] = None,
    rel_tol: float = DEFAULT_RANK_TOL,
) -> ModesOfVariation:
    M = as_matrix(X)
    centering = CenteringKind(centering)
    if max_rank is not None and not 0 <= max_rank <= min(M.d, M.n):
        raise BoundsError(
            f"max_rank={max_rank} fuera de [0, {min(M.d, M.n)}]", pointer="/max_rank"
        )
    Xc = center(M, centering).values
    U, s, Vt = _svd(Xc)
    order = np.argsort(-s, kind="stable")
    U, s, V = U[:, order], s[order], Vt[order].T

    r = _rank_from_spectrum(s, rel_tol)
    if max_rank is not None:
        r = min(r, max_rank)
    U, V = canonical_signs(U[:, :r], V[:, :r])
    logger.debug(f"[SVD] {centering.value} {M.d}×{M.n} rango={r}")
    return ModesOfVariation(
        loadings=U,
        singular_values=s[:r],
        scores=V,
        centering=centering,
        mean_components=mean_matrices(M, centering),
        total_energy=float(np.sum(Xc ** 2)),
    )


def reconstruct(modes: ModesOfVariation, k: int) -> DataMatrix:
    """Componentes de media más las k primeras componentes de rango uno."""
    if not 0 <= k <= modes.rank:
        raise BoundsError(f"k={k} fuera de [0, {modes.rank}]", pointer="/k")
    d, n = modes.loadings.shape[0], modes.scores.shape[0]
    out = np.zeros((d, n))
    for M in modes.mean_components.values():
        out = out + M
    out = out + (modes.loadings[:, :k] * modes.singular_values[:k]) @ modes.scores[:, :k].T
    return DataMatrix(out)


def pearson_correlation(x, y) -> float:
    x = np.asarray(x, dtype=np.float64).ravel()
    y = np.asarray(y, dtype=np.float64).ravel()
    if x.shape != y.shape:
        raise DimensionError(f"longitudes distintas: {x.size} y {y.size}")
    if x.size < 2:
        raise DimensionError("se necesitan al menos 2 entradas")
    xc = x - x.mean()
    yc = y - y.mean()
    sx = np.linalg.norm(xc)
    sy = np.linalg.norm(yc)
    # varianza nula relativa a la escala del vector
    if sx <= 1e-14 * max(1.0, np.abs(x).max()) or sy <= 1e-14 * max(1.0, np.abs(y).max()):
        raise UndefinedCorrelationError("uno de los vectores tiene varianza nula")
    return float(np.clip(xc @ yc / (sx * sy), -1.0, 1.0))


def _max_abs_correlation(W: np.ndarray) -> Optional[float]:
    values = []
    for i, j in itertools.combinations(range(W.shape[1]), 2):
        try:
            values.append(abs(pearson_correlation(W[:, i], W[:, j])))
        except UndefinedCorrelationError:
            continue
    return max(values) if values else None


def _max_abs_inner(W: np.ndarray) -> Optional[float]:
    if W.shape[1] < 2:
        return None
    G = W.T @ W
    np.fill_diagonal(G, 0.0)
    return float(np.abs(G).max())


@dataclass(frozen=True)
class LedgerRow:
    centering: CenteringKind
    rank: int
    scores_max_corr: Optional[float]
    loadings_max_corr: Optional[float]
    scores_max_inner: Optional[float]
    loadings_max_inner: Optional[float]


@dataclass(frozen=True)
class CorrelationLedger:
    rows: Dict[CenteringKind, LedgerRow]

    def __getitem__(self, kind) -> LedgerRow:
        return self.rows[CenteringKind(kind)]

    def to_frame(self) -> pd.DataFrame:
        records: List[dict] = []
        for kind, row in self.rows.items():
            records.append({
                "centering": kind.value,
                "rank": row.rank,
                "scores_max_abs_corr": row.scores_max_corr,
                "loadings_max_abs_corr": row.loadings_max_corr,
                "scores_max_abs_inner": row.scores_max_inner,
                "loadings_max_abs_inner": row.loadings_max_inner,
            })
        return pd.DataFrame.from_records(records)


LEDGER_KINDS = (CenteringKind.NONE, CenteringKind.OBJECT, CenteringKind.TRAIT, CenteringKind.DOUBLE)


def correlation_ledger(X: MatrixLike) -> CorrelationLedger:
    """Máxima |correlación| entre pares de scores y de loadings para cada centrado.

    Una celda vale None cuando tras centrar quedan menos de dos componentes.
    """
    M = as_matrix(X)
    if min(M.d, M.n) < 3:
        raise DimensionError(f"el ledger necesita min(d,n) ≥ 3, llegó {M.d}×{M.n}")
    rows = {}
    for kind in LEDGER_KINDS:
        modes = svd_modes(M, kind)
        rows[kind] = LedgerRow(
            centering=kind,
            rank=modes.rank,
            scores_max_corr=_max_abs_correlation(modes.scores),
            loadings_max_corr=_max_abs_correlation(modes.loadings),
            scores_max_inner=_max_abs_inner(modes.scores),
            loadings_max_inner=_max_abs_inner(modes.loadings),
        )
    return CorrelationLedger(rows)

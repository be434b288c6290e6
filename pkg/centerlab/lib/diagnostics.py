"""Test de energía en la dirección constante y desglose de energía antes/después del doble centrado."""
import logging
from dataclasses import dataclass
from typing import Any, Dict, Optional, Tuple

import numpy as np
from joblib import Parallel, delayed
from scipy import linalg
from scipy.stats import gaussian_kde

from .decomposition import DEFAULT_RANK_TOL, numerical_rank, svd_modes
from .errors import BoundsError, DegenerateInputError, InvalidInputError, UndefinedProportionError
from .matrix import CenteringKind, MatrixLike, as_matrix, center

logger = logging.getLogger(__name__)

DEFAULT_B = 500
DEFAULT_THRESHOLD = 0.95
# direcciones nulas evaluadas por bloque; fija el orden de reducción
CHUNK_SIZE = 128


def constant_direction(d: int) -> np.ndarray:
    """Vector de unos normalizado en R^d."""
    if d < 1:
        raise BoundsError(f"d debe ser ≥ 1, llegó {d}", pointer="/d")
    return np.full(d, 1.0 / np.sqrt(d))


def _energy_ratio(U: np.ndarray, A: np.ndarray, total: float) -> np.ndarray:
    # filas de U son direcciones unitarias
    return np.clip(np.sum((U @ A) ** 2, axis=1) / total, 0.0, 1.0)


def direction_energy(X_O: MatrixLike, u) -> float:
    """‖u^T X_O‖² / ‖X_O‖_F²: proporción de la energía de la nube a lo largo de u."""
    A = as_matrix(X_O).values
    u = np.asarray(u, dtype=np.float64).ravel()
    if u.size != A.shape[0]:
        raise InvalidInputError(f"la dirección tiene longitud {u.size}, se esperaba {A.shape[0]}")
    if abs(np.linalg.norm(u) - 1.0) > 1e-10:
        raise InvalidInputError(f"la dirección no es unitaria (‖u‖={np.linalg.norm(u):.6g})")
    total = float(np.sum(A ** 2))
    if total == 0.0:
        raise UndefinedProportionError("la matriz no tiene energía")
    return float(_energy_ratio(u[None, :], A, total)[0])


def column_space_basis(X_O: MatrixLike, rel_tol: float = DEFAULT_RANK_TOL) -> np.ndarray:
    """Base ortonormal (d×r) del espacio generado por las columnas."""
    A = as_matrix(X_O).values
    U, s, _ = linalg.svd(A, full_matrices=False)
    if s.size == 0 or s[0] == 0:
        raise DegenerateInputError("la matriz es nula, su espacio de columnas es trivial")
    r = int(np.sum(s > rel_tol * s[0]))
    return U[:, :r]


def sample_null_directions(X_O: MatrixLike, B: int, seed: Optional[int] = None) -> np.ndarray:
    """B direcciones unitarias (B×d) uniformes en el espacio de columnas de X_O.

    Coeficientes gaussianos independientes sobre una base ortonormal, normalizados:
    la distribución es invariante por rotaciones dentro del subespacio.
    """
    if B < 1:
        raise BoundsError(f"B debe ser ≥ 1, llegó {B}", pointer="/B")
    basis = column_space_basis(X_O)
    rng = np.random.default_rng(seed)
    coef = rng.standard_normal((B, basis.shape[1]))
    coef /= np.linalg.norm(coef, axis=1, keepdims=True)
    dirs = coef @ basis.T
    # renormaliza para absorber el redondeo de la base
    return dirs / np.linalg.norm(dirs, axis=1, keepdims=True)


@dataclass(frozen=True)
class EnergyTestResult:
    observed: float
    null_samples: np.ndarray
    p_value: float
    percentile_threshold: float
    threshold_value: float
    reject: bool
    seed: Optional[int]
    in_span_fraction: float

    @property
    def B(self) -> int:
        return int(self.null_samples.size)

    def to_json(self, include_null: bool = True) -> Dict[str, Any]:
        out: Dict[str, Any] = {
            "observed": self.observed,
            "B": self.B,
            "p_value": self.p_value,
            "percentile_threshold": self.percentile_threshold,
            "threshold_value": self.threshold_value,
            "reject": self.reject,
            "seed": self.seed,
            "in_span_fraction": self.in_span_fraction,
        }
        if include_null:
            out["null_samples"] = [float(v) for v in self.null_samples]
        return out


def energy_test(
    X: MatrixLike,
    B: int = DEFAULT_B,
    seed: Optional[int] = None,
    threshold: float = DEFAULT_THRESHOLD,
    n_jobs: int = 1,
) -> EnergyTestResult:
    """Compara la energía de la dirección constante (tras centrar objetos) con B direcciones al azar.

    p = (1 + #{nulo ≥ observado}) / (B + 1); se rechaza si el observado supera el
    cuantil `threshold` de la distribución nula empírica.
    """
    if not 0 < threshold < 1:
        raise BoundsError(f"threshold debe estar en (0,1), llegó {threshold}", pointer="/threshold")
    X_O = center(X, CenteringKind.OBJECT)
    A = X_O.values
    total = float(np.sum(A ** 2))
    if total == 0.0:
        raise DegenerateInputError("X es constante por filas: la matriz centrada por objetos es nula")

    u = constant_direction(X_O.d)
    observed = direction_energy(X_O, u)
    basis = column_space_basis(X_O)
    in_span = float(np.sum((basis.T @ u) ** 2))

    dirs = sample_null_directions(X_O, B, seed)
    chunks = [dirs[i:i + CHUNK_SIZE] for i in range(0, B, CHUNK_SIZE)]
    parts = Parallel(n_jobs=n_jobs)(delayed(_energy_ratio)(c, A, total) for c in chunks)
    null = np.concatenate(parts)

    q = float(np.quantile(null, threshold))
    p_value = (1.0 + float(np.sum(null >= observed))) / (B + 1.0)
    reject = bool(observed > q)
    logger.info(
        f"[ENERGY] observado={observed:.4f} cuantil{threshold:.2f}={q:.4f} p={p_value:.4f} rechaza={reject}"
    )
    return EnergyTestResult(
        observed=observed,
        null_samples=null,
        p_value=p_value,
        percentile_threshold=threshold,
        threshold_value=q,
        reject=reject,
        seed=seed,
        in_span_fraction=in_span,
    )


@dataclass(frozen=True)
class EnergyBreakdown:
    """Cuotas de energía relativas a ‖X_O‖_F² de las FDA centradas por objetos y doblemente centradas."""
    object_centered_shares: np.ndarray
    double_centered_shares: np.ndarray
    constant_direction_share: float
    object_centered_residual: float
    double_centered_residual: float
    total_energy: float

    @property
    def first_component_drop(self) -> float:
        return float(self.object_centered_shares[0] - self.double_centered_shares[0])

    @property
    def drop_fraction_of_constant(self) -> Optional[float]:
        """Fracción de la cuota de la dirección constante explicada por la caída de la primera componente."""
        if self.constant_direction_share == 0:
            return None
        return self.first_component_drop / self.constant_direction_share

    def to_json(self) -> Dict[str, Any]:
        return {
            "object_centered_shares": [float(v) for v in self.object_centered_shares],
            "double_centered_shares": [float(v) for v in self.double_centered_shares],
            "constant_direction_share": self.constant_direction_share,
            "object_centered_residual": self.object_centered_residual,
            "double_centered_residual": self.double_centered_residual,
            "total_energy": self.total_energy,
            "first_component_drop": self.first_component_drop,
            "drop_fraction_of_constant": self.drop_fraction_of_constant,
        }


def energy_breakdown(X: MatrixLike, k: int) -> EnergyBreakdown:
    M = as_matrix(X)
    X_O = center(M, CenteringKind.OBJECT)
    total = float(np.sum(X_O.values ** 2))
    if total == 0.0:
        raise DegenerateInputError("la matriz centrada por objetos es nula")
    rank = numerical_rank(X_O)
    if not 1 <= k <= rank:
        raise BoundsError(f"k={k} fuera de [1, {rank}]", pointer="/k")

    obj = svd_modes(M, CenteringKind.OBJECT).singular_values ** 2 / total
    dbl = svd_modes(M, CenteringKind.DOUBLE).singular_values ** 2 / total
    X_D = center(M, CenteringKind.DOUBLE).values
    # energía de la matriz de medias de rasgo de X_O (Pitágoras)
    constant_share = float(np.sum((X_O.values - X_D) ** 2)) / total

    obj_k = obj[:k]
    dbl_k = dbl[:min(k, dbl.size)]
    return EnergyBreakdown(
        object_centered_shares=obj_k,
        double_centered_shares=dbl_k,
        constant_direction_share=constant_share,
        object_centered_residual=float(max(0.0, 1.0 - obj_k.sum())),
        double_centered_residual=float(max(0.0, 1.0 - constant_share - dbl_k.sum())),
        total_energy=total,
    )


def smooth_histogram(samples, grid_len: int = 256) -> Tuple[np.ndarray, np.ndarray]:
    """Estimación de densidad gaussiana con ancho de banda de Silverman, solo para dibujar."""
    x = np.asarray(samples, dtype=np.float64).ravel()
    if x.size == 0:
        raise InvalidInputError("no hay muestras para el histograma suavizado")
    lo, hi = float(x.min()), float(x.max())
    pad = 0.1 * (hi - lo) if hi > lo else 0.5 * max(abs(lo), 1e-3)
    grid = np.linspace(lo - pad, hi + pad, grid_len)
    if x.size < 2 or np.ptp(x) == 0:
        logger.warning("[ENERGY] muestras degeneradas, densidad nula")
        return grid, np.zeros_like(grid)
    kde = gaussian_kde(x, bw_method="silverman")
    return grid, kde(grid)

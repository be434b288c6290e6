"""Generadores sintéticos deterministas por semilla: ejemplo de juguete, dos bloques, gaussianos y 2×n."""
import logging
from dataclasses import dataclass
from typing import Any, Dict, Optional, Tuple

import numpy as np
from pydantic import BaseModel, Field

from .integration import TwoBlockData
from .matrix import DataMatrix

logger = logging.getLogger(__name__)


class ToySpec(BaseModel):
    d: int = Field(50, ge=2, title="Rasgos")
    n: int = Field(25, ge=2, title="Objetos")
    # c(x) = c0 + c1 x + c2 x² + c3 x³ sobre x ∈ [−1, 1]; la media global va aquí
    cubic: Tuple[float, float, float, float] = Field((1.0, -1.5, 0.0, 3.0), title="Coeficientes cúbicos")
    # l(y) = slope·y sobre y ∈ [−1, 1], de media cero
    linear_slope: float = Field(2.0, title="Pendiente de la media de rasgos")
    freq_d: int = Field(2, ge=1, title="Periodos del seno en los rasgos")
    freq_n: int = Field(1, ge=1, title="Periodos del seno en los objetos")
    amplitude: float = Field(0.4, ge=0.0, title="Amplitud γ de la onda")
    noise: float = Field(0.0, ge=0.0, title="Desviación del ruido")
    seed: Optional[int] = Field(None, title="Semilla")


class TwoBlockSpec(BaseModel):
    d1: int = Field(300, ge=4, title="Rasgos del bloque 1")
    d2: int = Field(500, ge=4, title="Rasgos del bloque 2")
    n: int = Field(200, ge=4, title="Objetos")
    signal_long: float = Field(150.0, ge=0.0, title="Amplitud de la componente de cuadros largos")
    signal_short: float = Field(110.0, ge=0.0, title="Amplitud de la componente de cuadros cortos")
    x1_step: float = Field(2.0, ge=0.0, title="Escalón de la media de objetos de X1")
    x1_step_rows: int = Field(100, ge=0, title="Filas afectadas arriba y abajo en X1")
    x2_object_mean: float = Field(3.0, ge=0.0, title="Amplitud de la media de objetos de X2")
    x2_gradient: float = Field(20.0, ge=0.0, title="Pendiente del gradiente de medias de rasgo de X2")
    noise: float = Field(1.0, ge=0.0, title="Desviación del ruido")
    seed: Optional[int] = Field(None, title="Semilla")


@dataclass(frozen=True)
class TwoBlockTruth:
    """Estructura plantada: loadings (d×2), scores (n×2) y efectos de media."""
    loadings1: np.ndarray
    loadings2: np.ndarray
    scores: np.ndarray
    signal1: np.ndarray
    signal2: np.ndarray
    object_mean1: np.ndarray
    object_mean2: np.ndarray
    trait_mean2: np.ndarray

    @property
    def gradient_direction(self) -> np.ndarray:
        """Dirección en el espacio de objetos de X2 del efecto de medias de rasgo: el vector constante."""
        d2 = self.loadings2.shape[0]
        return np.full(d2, 1.0 / np.sqrt(d2))

    def to_json(self) -> Dict[str, Any]:
        return {
            "loadings1": self.loadings1.T.tolist(),
            "loadings2": self.loadings2.T.tolist(),
            "scores": self.scores.T.tolist(),
            "object_mean1": self.object_mean1.tolist(),
            "object_mean2": self.object_mean2.tolist(),
            "trait_mean2": self.trait_mean2.tolist(),
            "gradient_direction": self.gradient_direction.tolist(),
        }


def _zero_mean_sine(length: int, periods: int) -> np.ndarray:
    s = np.sin(2.0 * np.pi * periods * np.arange(length) / length)
    return s - s.mean()


def gen_toy(spec: Optional[ToySpec] = None) -> DataMatrix:
    """X[i,j] = c(i) + l(j) + γ·s(i)·t(j) + σ·ruido.

    s y t son senos de periodos completos con media exactamente cero, así que
    sin ruido el doble centrado deja γ·s·t^T, de rango uno.
    """
    spec = spec or ToySpec()
    x = np.linspace(-1.0, 1.0, spec.d)
    y = np.linspace(-1.0, 1.0, spec.n)
    c0, c1, c2, c3 = spec.cubic
    c = c0 + c1 * x + c2 * x ** 2 + c3 * x ** 3
    l = spec.linear_slope * (y - y.mean())
    s = _zero_mean_sine(spec.d, spec.freq_d)
    t = _zero_mean_sine(spec.n, spec.freq_n)
    X = c[:, None] + l[None, :] + spec.amplitude * np.outer(s, t)
    if spec.noise > 0:
        rng = np.random.default_rng(spec.seed)
        X = X + spec.noise * rng.standard_normal(X.shape)
    logger.debug(f"[SYNTH] juguete {spec.d}×{spec.n} γ={spec.amplitude} σ={spec.noise}")
    return DataMatrix(X)


def toy_sines(spec: Optional[ToySpec] = None) -> Tuple[np.ndarray, np.ndarray]:
    """Los senos generadores (s, t) del ejemplo de juguete."""
    spec = spec or ToySpec()
    return _zero_mean_sine(spec.d, spec.freq_d), _zero_mean_sine(spec.n, spec.freq_n)


def _checker(length: int, blocks: int) -> np.ndarray:
    """Patrón ±1 por bloques contiguos, alternando signo."""
    idx = np.arange(length) * blocks // length
    return np.where(idx % 2 == 0, 1.0, -1.0)


def _planted_pair(length: int) -> np.ndarray:
    """Patrones de cuadros largo y corto, centrados y ortonormalizados (length×2)."""
    P = np.column_stack([_checker(length, 2), _checker(length, 4)])
    P = P - P.mean(axis=0)
    Q, R = np.linalg.qr(P)
    return Q * np.sign(np.diag(R))


def gen_two_block(spec: Optional[TwoBlockSpec] = None) -> Tuple[TwoBlockData, TwoBlockTruth]:
    """Dos bloques con la misma señal conjunta de rango dos, doblemente centrada.

    X1 = S1 + escalón de medias de objetos + ruido;
    X2 = S2 + medias de objetos + gradiente lineal de medias de rasgo + ruido.
    """
    spec = spec or TwoBlockSpec()
    rng = np.random.default_rng(spec.seed)
    A = _planted_pair(spec.d1)
    Bm = _planted_pair(spec.d2)
    S = _planted_pair(spec.n)
    amps = np.array([spec.signal_long, spec.signal_short])
    S1 = (A * amps) @ S.T
    S2 = (Bm * amps) @ S.T

    m1 = np.zeros(spec.d1)
    rows = min(spec.x1_step_rows, spec.d1 // 2)
    m1[:rows] = spec.x1_step
    m1[spec.d1 - rows:] = -spec.x1_step
    m2 = spec.x2_object_mean * np.sin(2.0 * np.pi * np.arange(spec.d2) / spec.d2)
    g = spec.x2_gradient * (np.arange(spec.n) / (spec.n - 1) - 0.5)

    X1 = S1 + m1[:, None] + spec.noise * rng.standard_normal((spec.d1, spec.n))
    X2 = S2 + m2[:, None] + g[None, :] + spec.noise * rng.standard_normal((spec.d2, spec.n))
    logger.debug(f"[SYNTH] dos bloques {spec.d1}×{spec.n} y {spec.d2}×{spec.n}")
    truth = TwoBlockTruth(A, Bm, S, S1, S2, m1, m2, g)
    return TwoBlockData(DataMatrix(X1), DataMatrix(X2)), truth


def gen_gaussian(d: int, n: int, seed: Optional[int] = None) -> DataMatrix:
    """Entradas normales estándar i.i.d."""
    rng = np.random.default_rng(seed)
    return DataMatrix(rng.standard_normal((d, n)))


def gen_two_trait(n: int = 25, seed: Optional[int] = None) -> DataMatrix:
    """Matriz 2×n en posición general: dos rasgos correlacionados con medias no nulas."""
    rng = np.random.default_rng(seed)
    z = rng.standard_normal((2, n))
    L = np.array([[1.0, 0.0], [0.6, 0.8]])
    X = L @ z + np.array([[3.0], [1.5]])
    return DataMatrix(X)

"""Gráficos SVG estáticos: heatmap, haces de curvas, modos de variación, matriz de dispersión
y vistas del test de energía."""
import io
import logging
import math
from typing import List, Literal, Optional

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402
from pydantic import BaseModel, Field  # noqa: E402

from .decomposition import ModesOfVariation, pearson_correlation  # noqa: E402
from .diagnostics import EnergyBreakdown, EnergyTestResult, smooth_histogram  # noqa: E402
from .errors import InvalidInputError, UndefinedCorrelationError  # noqa: E402

logger = logging.getLogger(__name__)

# ids de SVG y metadatos fijos: mismo dibujo, mismos bytes
matplotlib.rcParams["svg.hashsalt"] = "centerlab"
matplotlib.rcParams["svg.fonttype"] = "none"
SVG_METADATA = {"Date": None, "Creator": "centerlab"}

PlotKind = Literal["heatmap", "curves", "modes", "scatter_matrix", "energy_test", "energy_breakdown"]
Orientation = Literal["objects", "traits"]


class PlotSpec(BaseModel):
    kind: PlotKind = Field(..., title="Tipo de gráfico")
    title: Optional[str] = Field(None, title="Título")
    x_label: Optional[str] = Field(None, title="Etiqueta del eje x")
    y_label: Optional[str] = Field(None, title="Etiqueta del eje y")
    groups: Optional[List[Optional[str]]] = Field(None, title="Grupo de cada objeto (coloreado por etiquetas)")
    color_limit: Optional[float] = Field(None, gt=0, title="Límite simétrico de la escala de color")
    max_components: int = Field(4, ge=1, le=8, title="Componentes de la matriz de dispersión o paneles de modos")
    orientation: Orientation = Field("objects", title="Curvas por objeto (columnas) o por rasgo (filas)")
    connect: bool = Field(True, title="Unir puntos en orden de objeto")
    show_mean: bool = Field(True, title="Dibujar la curva media")


def _svg(fig) -> str:
    buf = io.StringIO()
    fig.savefig(buf, format="svg", metadata=SVG_METADATA)
    plt.close(fig)
    return buf.getvalue()


def _object_colors(n: int, groups: Optional[List[Optional[str]]]):
    """Arcoíris cronológico (fríos al principio, cálidos al final) o un color por grupo."""
    if groups is None:
        return plt.get_cmap("rainbow")(np.linspace(0.0, 1.0, max(n, 1)))[:n]
    if len(groups) != n:
        raise InvalidInputError(f"{len(groups)} etiquetas de grupo para {n} objetos", pointer="/groups")
    names = sorted({g for g in groups if g is not None})
    palette = plt.get_cmap("tab10")
    lookup = {g: palette(i % 10) for i, g in enumerate(names)}
    grey = (0.6, 0.6, 0.6, 1.0)
    return np.array([lookup[g] if g is not None else grey for g in groups])


def _as_2d(data) -> np.ndarray:
    A = np.asarray(data, dtype=np.float64)
    if A.ndim == 1:
        A = A.reshape(-1, 1)
    if A.size == 0:
        raise InvalidInputError("no hay datos que dibujar")
    return A


def _heatmap(data, spec: PlotSpec):
    A = _as_2d(data)
    vmax = spec.color_limit or float(np.abs(A).max())
    if vmax == 0:
        vmax = 1.0
    fig, ax = plt.subplots(figsize=(6, 5))
    # RdBu: negativos en rojo, positivos en azul, blanco en 0
    im = ax.imshow(A, cmap="RdBu", vmin=-vmax, vmax=vmax, aspect="auto", interpolation="nearest")
    fig.colorbar(im, ax=ax)
    ax.set_xlabel(spec.x_label or "objeto")
    ax.set_ylabel(spec.y_label or "rasgo")
    return fig, ax


def _oriented(A: np.ndarray, spec: PlotSpec):
    """Curvas en columnas y sus colores: objetos (por grupo si hay etiquetas) o rasgos."""
    if spec.orientation == "traits":
        d = A.shape[0]
        return A.T, plt.get_cmap("rainbow")(np.linspace(0.0, 1.0, max(d, 1)))[:d], "objeto"
    return A, _object_colors(A.shape[1], spec.groups), "rasgo"


def _draw_curves(ax, curves: np.ndarray, colors, spec: PlotSpec, x_label: str) -> None:
    x = np.arange(curves.shape[0])
    for j in range(curves.shape[1]):
        ax.plot(x, curves[:, j], color=colors[j], linewidth=0.8)
    ax.set_xlabel(spec.x_label or x_label)


def _curves(data, spec: PlotSpec):
    curves, colors, x_label = _oriented(_as_2d(data), spec)
    fig, ax = plt.subplots(figsize=(7, 4.5))
    _draw_curves(ax, curves, colors, spec, x_label)
    if spec.show_mean:
        ax.plot(np.arange(curves.shape[0]), curves.mean(axis=1), color="green", linestyle="--", linewidth=2)
    ax.set_ylabel(spec.y_label or "valor")
    return fig, ax


def _modes(modes: ModesOfVariation, spec: PlotSpec):
    """Panel de medias y un panel por componente k con las curvas σ_k·u_k·v_k^T."""
    if not isinstance(modes, ModesOfVariation):
        raise InvalidInputError("modes necesita un ModesOfVariation")
    d, n = modes.loadings.shape[0], modes.scores.shape[0]
    shares = modes.energy_shares().proportions
    panels = [("medias", sum(modes.mean_components.values(), np.zeros((d, n))))]
    for k in range(min(modes.rank, spec.max_components)):
        mode = modes.singular_values[k] * np.outer(modes.loadings[:, k], modes.scores[:, k])
        panels.append((f"modo {k + 1} ({shares[k]:.1%})", mode))

    ncols = min(3, len(panels))
    nrows = math.ceil(len(panels) / ncols)
    fig, axes = plt.subplots(nrows, ncols, figsize=(4 * ncols, 3 * nrows), squeeze=False)
    for ax, (label, M) in zip(axes.flat, panels):
        curves, colors, x_label = _oriented(M, spec)
        _draw_curves(ax, curves, colors, spec, x_label)
        ax.set_title(label, fontsize=9)
    for ax in axes.flat[len(panels):]:
        ax.set_axis_off()
    axes[0, 0].set_ylabel(spec.y_label or "valor")
    return fig, axes[0, 0]


def _corr_label(x, y) -> str:
    try:
        r = round(pearson_correlation(x, y), 2)
    except UndefinedCorrelationError:
        return "corr = n/a"
    # evita "-0.00"
    return f"corr = {r:.2f}" if r != 0 else "corr = 0.00"


def _scatter_matrix(data, spec: PlotSpec):
    A = _as_2d(data)
    n, k = A.shape
    k = min(k, spec.max_components)
    colors = _object_colors(n, spec.groups)
    order = np.arange(n)
    fig, axes = plt.subplots(k, k, figsize=(2.6 * k, 2.6 * k), squeeze=False)
    for i in range(k):
        for j in range(k):
            ax = axes[i, j]
            if i == j:
                grid, dens = smooth_histogram(A[:, i])
                top = float(dens.max()) if dens.max() > 0 else 1.0
                # altura de cada punto según su orden de objeto
                heights = top * (0.1 + 0.8 * order / max(n - 1, 1))
                ax.scatter(A[:, i], heights, c=colors, s=8)
                ax.plot(grid, dens, color="black", linewidth=1)
            else:
                if spec.connect:
                    ax.plot(A[:, j], A[:, i], color="lightgrey", linewidth=0.5, zorder=1)
                ax.scatter(A[:, j], A[:, i], c=colors, s=8, zorder=2)
                ax.text(0.02, 0.95, _corr_label(A[:, j], A[:, i]), transform=ax.transAxes,
                        fontsize=7, va="top")
            if i == k - 1:
                ax.set_xlabel(f"comp. {j + 1}")
            if j == 0:
                ax.set_ylabel(f"comp. {i + 1}")
    return fig, axes[0, 0]


def _energy_test(result: EnergyTestResult, spec: PlotSpec):
    if not isinstance(result, EnergyTestResult):
        raise InvalidInputError("energy_test necesita un EnergyTestResult")
    grid, dens = smooth_histogram(result.null_samples)
    top = float(dens.max()) if dens.max() > 0 else 1.0
    rng = np.random.default_rng(0)
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.scatter(result.null_samples, top * rng.uniform(0.05, 0.6, result.B), color="black", s=6)
    ax.plot(grid, dens, color="black", linewidth=1.2)
    ax.axvline(result.observed, color="red", linestyle="-.", linewidth=1.5)
    ax.axvline(result.threshold_value, color="grey", linestyle=":", linewidth=1)
    ax.set_xlabel(spec.x_label or "proporción de energía")
    ax.set_ylabel(spec.y_label or "densidad")
    return fig, ax


def _energy_breakdown(result: EnergyBreakdown, spec: PlotSpec):
    if not isinstance(result, EnergyBreakdown):
        raise InvalidInputError("energy_breakdown necesita un EnergyBreakdown")
    fig, ax = plt.subplots(figsize=(6, 4))
    # componentes de abajo arriba en el orden en que se encuentran
    for k, share in enumerate(result.object_centered_shares):
        ax.hlines(k + 1, 0, share, color="blue", linewidth=2)
    for k, share in enumerate(result.double_centered_shares):
        ax.hlines(k + 1.15, 0, share, color="red", linestyle="--", linewidth=2)
    ax.hlines(0, 0, result.constant_direction_share, color="red", linestyle="-.", linewidth=2)
    ax.set_xlim(0, 1)
    ax.set_xlabel(spec.x_label or "cuota de ‖X_O‖²")
    ax.set_ylabel(spec.y_label or "componente (0 = dirección constante)")
    return fig, ax


_RENDERERS = {
    "heatmap": _heatmap,
    "curves": _curves,
    "modes": _modes,
    "scatter_matrix": _scatter_matrix,
    "energy_test": _energy_test,
    "energy_breakdown": _energy_breakdown,
}


def render_plot(data, spec: PlotSpec) -> str:
    """Devuelve un documento SVG independiente para `data` según `spec.kind`."""
    fig, ax = _RENDERERS[spec.kind](data, spec)
    if spec.title:
        fig.suptitle(spec.title)
    fig.tight_layout()
    logger.debug(f"[PLOT] {spec.kind}")
    return _svg(fig)

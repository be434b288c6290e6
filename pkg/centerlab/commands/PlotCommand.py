from typing import Optional

from pydantic import Field

from ..lib.command import Command, InputConfig
from ..lib.decomposition import svd_modes
from ..lib.diagnostics import DEFAULT_B, DEFAULT_THRESHOLD, energy_breakdown, energy_test
from ..lib.io import load_labels
from ..lib.matrix import CenteringKind, center
from ..lib.plots import Orientation, PlotKind, PlotSpec, render_plot
from .BreakdownCommand import resolve_k


class PlotConfig(InputConfig):
    kind: PlotKind = Field(..., title="Tipo de gráfico")
    centering: CenteringKind = Field(CenteringKind.OBJECT, title="Centrado previo (heatmap, curves, modes, scatter_matrix)")
    labels: Optional[str] = Field(None, title="CSV object,group para colorear por grupo")
    color_limit: Optional[float] = Field(None, gt=0.0, title="Límite simétrico de la escala de color")
    title: Optional[str] = Field(None, title="Título")
    components: int = Field(4, ge=1, le=8, title="Componentes (scatter_matrix) o paneles de modos (modes)")
    orientation: Orientation = Field("objects", title="Curvas por objeto o por rasgo (curves, modes)")
    x_label: Optional[str] = Field(None, title="Etiqueta del eje x")
    y_label: Optional[str] = Field(None, title="Etiqueta del eje y")
    connect: bool = Field(True, title="Unir puntos en orden de objeto (scatter_matrix)")
    show_mean: bool = Field(True, title="Curva media (curves)")
    B: int = Field(DEFAULT_B, ge=1, title="Direcciones nulas (energy_test)")
    seed: Optional[int] = Field(None, title="Semilla (energy_test)")
    threshold: float = Field(DEFAULT_THRESHOLD, gt=0.0, lt=1.0, title="Percentil (energy_test)")
    k: Optional[int] = Field(None, ge=1, title="Componentes (energy_breakdown)")


class PlotCommand(Command):
    name = "plot"

    @classmethod
    def config_model(cls):
        return PlotConfig

    def _execute(self, cfg: PlotConfig, deps):
        X = cfg.load()
        groups = load_labels(cfg.labels, X.n, X.object_labels) if cfg.labels else None
        spec = PlotSpec(
            kind=cfg.kind,
            title=cfg.title,
            groups=groups,
            color_limit=cfg.color_limit,
            max_components=cfg.components,
            orientation=cfg.orientation,
            x_label=cfg.x_label,
            y_label=cfg.y_label,
            connect=cfg.connect,
            show_mean=cfg.show_mean,
        )

        if cfg.kind == "energy_test":
            data = energy_test(X, B=cfg.B, seed=cfg.seed, threshold=cfg.threshold)
        elif cfg.kind == "energy_breakdown":
            data = energy_breakdown(X, resolve_k(X, cfg.k))
        elif cfg.kind == "modes":
            data = svd_modes(X, cfg.centering)
        elif cfg.kind == "scatter_matrix":
            data = svd_modes(X, cfg.centering).score_coordinates
        else:
            data = center(X, cfg.centering).values

        name = f"{cfg.kind}.svg"
        deps.writer.write_text(name, render_plot(data, spec))
        return {"kind": cfg.kind, "file": name}

import json
from typing import Any, Dict, Optional

import numpy as np
from pydantic import BaseModel, Field, field_validator

from ..lib.command import Command
from ..lib.errors import ParseError
from ..lib.integration import PLS_CENTERINGS, PlsMethod, PlsModel, TwoBlockData, abs_cosine, fit_pls
from ..lib.io import MatrixFile, Transform, load_matrix
from ..lib.matrix import CenteringKind


class PlsConfig(BaseModel):
    input1: MatrixFile = Field(..., title="Bloque 1")
    input2: MatrixFile = Field(..., title="Bloque 2")
    transform: Transform = Field(Transform.NONE, title="Transformación previa (ambos bloques)")
    centering: CenteringKind = Field(CenteringKind.DOUBLE, title="Centrado de ambos bloques")
    K: int = Field(2, ge=1, title="Componentes")
    method: PlsMethod = Field(PlsMethod.SEQUENTIAL, title="Método")
    truth: Optional[str] = Field(None, title="JSON con la estructura plantada (synth two-block)")

    @field_validator("centering")
    @classmethod
    def _object_centered(cls, v: CenteringKind) -> CenteringKind:
        if v not in PLS_CENTERINGS:
            raise ValueError(
                f"centrado '{v.value}' no válido para PLS: la covarianza cruzada se define "
                "multiplicando versiones centradas por objetos de los dos bloques; use 'object' o 'double'"
            )
        return v


def _load_truth(path: str) -> Dict[str, Any]:
    try:
        with open(path, encoding="utf-8") as fh:
            truth = json.load(fh)
    except FileNotFoundError as ex:
        raise ParseError(f"no existe el fichero {path}", pointer="/truth") from ex
    except json.JSONDecodeError as ex:
        raise ParseError(f"JSON inválido en {path}: {ex.msg}", line=ex.lineno) from ex
    missing = {"loadings1", "loadings2", "scores", "gradient_direction"} - set(truth)
    if missing:
        raise ParseError(f"a {path} le faltan las claves {sorted(missing)}", pointer="/truth")
    return truth


def alignment_report(model: PlsModel, truth: Dict[str, Any]) -> Dict[str, Any]:
    """|cos| entre cada componente ajustada y la estructura plantada."""
    planted = min(model.n_components, len(truth["loadings1"]))
    components = []
    for k in range(planted):
        components.append({
            "component": k + 1,
            "block1_weight": abs_cosine(model.w1[:, k], truth["loadings1"][k]),
            "block2_weight": abs_cosine(model.w2[:, k], truth["loadings2"][k]),
            "block1_score": abs_cosine(model.t1[:, k], truth["scores"][k]),
            "block2_score": abs_cosine(model.t2[:, k], truth["scores"][k]),
        })
    g = np.asarray(truth["gradient_direction"])
    return {
        "centering": model.centering.value,
        "method": model.method.value,
        "components": components,
        "block2_gradient": [abs_cosine(model.w2[:, k], g) for k in range(model.n_components)],
    }


class PlsCommand(Command):
    name = "pls"

    @classmethod
    def config_model(cls):
        return PlsConfig

    def _execute(self, cfg: PlsConfig, deps):
        blocks = TwoBlockData(load_matrix(cfg.input1, cfg.transform), load_matrix(cfg.input2, cfg.transform))
        model = fit_pls(blocks, cfg.K, cfg.centering, cfg.method)
        frames = model.to_frames()
        for block in ("block1", "block2"):
            loadings = frames[f"{block}_loadings"]
            scores = frames[f"{block}_scores"]
            deps.writer.write_frame(f"pls_{block}.csv", loadings)
            deps.writer.write_frame(f"pls_{block}_scores.csv", scores)
        deps.writer.write_frame("pls_covariances.csv", frames["covariances"], index=False)

        summary = {
            "centering": model.centering.value,
            "method": model.method.value,
            "n_components": model.n_components,
            "covariances": model.covariances.tolist(),
        }
        if cfg.truth:
            report = alignment_report(model, _load_truth(cfg.truth))
            deps.writer.write_json("alignment.json", report)
            summary["alignment"] = report
        return summary

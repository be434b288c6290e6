from typing import Optional

import numpy as np
import pandas as pd
from pydantic import Field

from ..lib.command import Command, InputConfig
from ..lib.decomposition import DEFAULT_RANK_TOL, svd_modes
from ..lib.matrix import CenteringKind


class ModesConfig(InputConfig):
    centering: CenteringKind = Field(CenteringKind.OBJECT, title="Centrado")
    rank: Optional[int] = Field(None, ge=0, title="Máximo de componentes")
    rel_tol: float = Field(DEFAULT_RANK_TOL, gt=0.0, lt=1.0, title="Tolerancia relativa del rango")


def _labelled(values: np.ndarray, labels, index_name: str) -> pd.DataFrame:
    frame = pd.DataFrame(values, columns=[f"mode{k + 1}" for k in range(values.shape[1])])
    if labels is not None:
        frame.index = list(labels)
    frame.index.name = index_name
    return frame


class ModesCommand(Command):
    name = "modes"

    @classmethod
    def config_model(cls):
        return ModesConfig

    def _execute(self, cfg: ModesConfig, deps):
        X = cfg.load()
        modes = svd_modes(X, cfg.centering, max_rank=cfg.rank, rel_tol=cfg.rel_tol)
        shares = modes.energy_shares().proportions
        component = np.arange(1, modes.rank + 1)

        deps.writer.write_frame("loadings.csv", _labelled(modes.loadings, X.trait_labels, "trait"))
        deps.writer.write_frame("scores.csv", _labelled(modes.scores, X.object_labels, "object"))
        deps.writer.write_frame(
            "singular_values.csv",
            pd.DataFrame({"component": component, "singular_value": modes.singular_values}),
            index=False,
        )
        deps.writer.write_frame(
            "energy_shares.csv",
            pd.DataFrame({"component": component, "share": shares, "cumulative": np.cumsum(shares)}),
            index=False,
        )
        return {
            "centering": modes.centering.value,
            "rank": modes.rank,
            "total_energy": modes.total_energy,
            "shares": [float(v) for v in shares[:5]],
        }

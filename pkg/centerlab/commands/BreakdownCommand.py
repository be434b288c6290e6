from typing import Optional

from pydantic import Field

from ..lib.command import Command, InputConfig
from ..lib.decomposition import numerical_rank
from ..lib.diagnostics import energy_breakdown
from ..lib.matrix import CenteringKind, center

DEFAULT_COMPONENTS = 5


class BreakdownConfig(InputConfig):
    k: Optional[int] = Field(None, ge=1, title="Componentes a informar (por defecto min(5, rango))")


def resolve_k(X, k: Optional[int]) -> int:
    if k is not None:
        return k
    return max(1, min(DEFAULT_COMPONENTS, numerical_rank(center(X, CenteringKind.OBJECT))))


class BreakdownCommand(Command):
    name = "breakdown"

    @classmethod
    def config_model(cls):
        return BreakdownConfig

    def _execute(self, cfg: BreakdownConfig, deps):
        X = cfg.load()
        k = resolve_k(X, cfg.k)
        result = energy_breakdown(X, k)
        deps.writer.write_json("energy_breakdown.json", result.to_json())
        return {
            "k": k,
            "constant_direction_share": result.constant_direction_share,
            "first_component_drop": result.first_component_drop,
        }

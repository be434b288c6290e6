from pydantic import Field

from ..lib.command import Command, InputConfig
from ..lib.matrix import CenteringKind, center


class CenterConfig(InputConfig):
    centering: CenteringKind = Field(..., title="Centrado")


class CenterCommand(Command):
    name = "center"

    @classmethod
    def config_model(cls):
        return CenterConfig

    def _execute(self, cfg: CenterConfig, deps):
        Xc = center(cfg.load(), cfg.centering)
        deps.writer.write_matrix("centered.csv", Xc)
        return {
            "d": Xc.d,
            "n": Xc.n,
            "centering": cfg.centering.value,
            "frobenius_norm": Xc.frobenius_norm(),
        }

from typing import Literal, Optional

from pydantic import BaseModel, Field, model_validator

from ..lib.command import Command
from ..lib.datagen import ToySpec, TwoBlockSpec, gen_gaussian, gen_toy, gen_two_block, gen_two_trait

GAUSSIAN_SIZE = 100


class SynthConfig(BaseModel):
    kind: Literal["toy", "two-block", "gaussian", "two-trait"] = Field(..., title="Generador")
    seed: Optional[int] = Field(None, title="Semilla")
    d: Optional[int] = Field(None, ge=2, title="Rasgos (d1 en two-block)")
    d2: Optional[int] = Field(None, ge=4, title="Rasgos del bloque 2 (solo two-block)")
    n: Optional[int] = Field(None, ge=2, title="Objetos")
    noise: Optional[float] = Field(None, ge=0.0, title="Desviación del ruido (toy y two-block)")

    @model_validator(mode="after")
    def _fits_kind(self):
        if self.kind == "two-trait" and self.d not in (None, 2):
            raise ValueError("two-trait genera siempre 2 rasgos")
        if self.d2 is not None and self.kind != "two-block":
            raise ValueError("d2 solo se aplica a two-block")
        if self.noise is not None and self.kind not in ("toy", "two-block"):
            raise ValueError("noise solo se aplica a toy y two-block")
        if self.kind == "two-block" and ((self.d or 4) < 4 or (self.n or 4) < 4):
            raise ValueError("two-block necesita d ≥ 4 y n ≥ 4")
        return self

    def overrides(self, **names) -> dict:
        """Campos fijados por el usuario, renombrados a los del generador."""
        out = {}
        for ours, theirs in names.items():
            value = getattr(self, ours)
            if value is not None:
                out[theirs] = value
        return out


class SynthCommand(Command):
    name = "synth"

    @classmethod
    def config_model(cls):
        return SynthConfig

    def _execute(self, cfg: SynthConfig, deps):
        writer = deps.writer
        if cfg.kind == "toy":
            X = gen_toy(ToySpec(**cfg.overrides(d="d", n="n", noise="noise", seed="seed")))
            writer.write_matrix("toy.csv", X)
            return {"kind": cfg.kind, "shape": list(X.shape)}
        if cfg.kind == "gaussian":
            X = gen_gaussian(cfg.d or GAUSSIAN_SIZE, cfg.n or GAUSSIAN_SIZE, cfg.seed)
            writer.write_matrix("gaussian.csv", X)
            return {"kind": cfg.kind, "shape": list(X.shape)}
        if cfg.kind == "two-trait":
            X = gen_two_trait(cfg.n or 25, cfg.seed)
            writer.write_matrix("two_trait.csv", X)
            return {"kind": cfg.kind, "shape": list(X.shape)}

        spec = TwoBlockSpec(**cfg.overrides(d="d1", d2="d2", n="n", noise="noise", seed="seed"))
        blocks, truth = gen_two_block(spec)
        writer.write_matrix("block1.csv", blocks.X1)
        writer.write_matrix("block2.csv", blocks.X2)
        writer.write_json("truth.json", truth.to_json())
        return {"kind": cfg.kind, "shape1": list(blocks.X1.shape), "shape2": list(blocks.X2.shape)}

from typing import Optional

from pydantic import Field, field_validator

from ..lib.command import Command, InputConfig
from ..lib.diagnostics import DEFAULT_B, DEFAULT_THRESHOLD, energy_test


class EnergyTestConfig(InputConfig):
    B: int = Field(DEFAULT_B, ge=1, title="Direcciones nulas")
    seed: Optional[int] = Field(None, title="Semilla")
    threshold: float = Field(DEFAULT_THRESHOLD, gt=0.0, lt=1.0, title="Percentil de decisión")
    omit_null: bool = Field(False, title="Omitir las muestras nulas del JSON")
    jobs: int = Field(1, title="Procesos de joblib (-1 = todos)")

    @field_validator("jobs")
    @classmethod
    def _jobs_nonzero(cls, v: int) -> int:
        if v == 0:
            raise ValueError("jobs no puede ser 0")
        return v


class EnergyTestCommand(Command):
    name = "energy-test"

    @classmethod
    def config_model(cls):
        return EnergyTestConfig

    def _execute(self, cfg: EnergyTestConfig, deps):
        result = energy_test(cfg.load(), B=cfg.B, seed=cfg.seed, threshold=cfg.threshold, n_jobs=cfg.jobs)
        deps.writer.write_json("energy_test.json", result.to_json(include_null=not cfg.omit_null))
        # el rechazo va en el resumen, nunca en el código de salida
        return {
            "observed": result.observed,
            "p_value": result.p_value,
            "threshold_value": result.threshold_value,
            "reject": result.reject,
        }

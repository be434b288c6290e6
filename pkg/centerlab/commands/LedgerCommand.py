from ..lib.command import Command, InputConfig
from ..lib.decomposition import correlation_ledger


class LedgerConfig(InputConfig):
    pass


class LedgerCommand(Command):
    name = "ledger"

    @classmethod
    def config_model(cls):
        return LedgerConfig

    def _execute(self, cfg: LedgerConfig, deps):
        frame = correlation_ledger(cfg.load()).to_frame()
        deps.writer.write_frame("ledger.csv", frame, index=False)
        return {"rows": frame.to_dict(orient="records")}

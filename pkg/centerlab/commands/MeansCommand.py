from ..lib.command import Command, InputConfig
from ..lib.matrix import compute_means, mean_orthogonality


class MeansConfig(InputConfig):
    pass


class MeansCommand(Command):
    name = "means"

    @classmethod
    def config_model(cls):
        return MeansConfig

    def _execute(self, cfg: MeansConfig, deps):
        X = cfg.load()
        means = compute_means(X)
        for label, M in (("object", means.MO), ("trait", means.MT), ("grand", means.MG), ("double", means.MD)):
            deps.writer.write_matrix(f"mean_{label}.csv", X.with_values(M))
        inner = mean_orthogonality(X)
        deps.writer.write_json("means.json", {
            "grand_mean": means.mu_g,
            "trait_means": means.mu_d.tolist(),
            "object_means": means.mu_n.tolist(),
            "inner_object_trait": inner,
        })
        return {"grand_mean": means.mu_g, "inner_object_trait": inner}

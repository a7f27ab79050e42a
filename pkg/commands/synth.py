import logging

from overrides import override

from commands.Command import Command, CommandResult
from data_io.DatasetSource import save_bundle
from data_io.synthetic import SyntheticConfig, generate_synthetic
from errors import UsageError

logger = logging.getLogger(__name__)


def synthetic_config(config: dict[str, object], seed: int) -> SyntheticConfig:
    try:
        return SyntheticConfig(
            n1=int(config["users"]),
            n2=int(config["items"]),
            m1=int(config["user_groups"]),
            m2=int(config["item_groups"]),
            K=int(config["k"]),
            pi=float(config["pi"]),
            sigma=float(config["sigma"]),
            noise_mode=str(config["noise_mode"]),
            seed=seed,
        )
    except ValueError as error:
        raise UsageError(str(error)) from None


def bundle_header(cfg: SyntheticConfig) -> dict[str, object]:
    return {
        "K": cfg.K,
        "m1": cfg.m1,
        "m2": cfg.m2,
        "pi": repr(cfg.pi),
        "sigma": repr(cfg.sigma),
        "noise_mode": cfg.noise_mode,
        "seed": cfg.seed,
    }


class SynthCommand(Command):
    name = "synth"
    summary = "generate a synthetic group-structured 1-bit dataset"

    @override
    def run(self, config: dict[str, object]) -> CommandResult:
        cfg = synthetic_config(config, int(config["seed"]))
        out = self.output_dir(config)

        dataset = generate_synthetic(cfg)
        save_bundle(out, dataset.ratings, synthetic=dataset, header=bundle_header(cfg))
        logger.info(
            "synthetic %d x %d: %d observed, %.3f positive",
            cfg.n1,
            cfg.n2,
            len(dataset.ratings),
            dataset.ratings.positive_fraction(),
        )
        return CommandResult(
            metrics={
                "observed": len(dataset.ratings),
                "positive_fraction": dataset.ratings.positive_fraction(),
                "scale": dataset.scale,
            }
        )

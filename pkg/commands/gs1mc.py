import logging
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import pandas as pd
from overrides import override

from commands.Command import CHECKPOINT_DIR, GROUPS_DIR, TEST_FILE, Command, CommandResult
from commands.inputs import (
    load_dataset,
    replication_seed,
    resolve_groups,
    train_config,
    train_test_split,
)
from commands.synth import bundle_header, synthetic_config
from data_io.artifacts import save_assignment, save_factors, save_ratings, write_table
from data_io.DatasetSource import Dataset, GroundTruth, save_bundle
from data_io.synthetic import SyntheticDataset, generate_synthetic
from errors import UsageError
from metrics import accuracy, relative_error
from model_core.BinaryRatings import BinaryRatings
from model_core.GroupAssignment import GroupAssignment
from model_core.latent import assemble_M, binarize_predictions
from trainers.GS1MCTrainer import FitResult, fit_gs1mc, predict_missing

logger = logging.getLogger(__name__)

METRICS_FILE = "metrics.csv"
SUMMARY_FILE = "summary.csv"
LOSS_FILE = "loss_trace.csv"
GENERATED_DATA_DIR = "dataset"


@dataclass
class Replication:
    lam: float
    replication: int
    seed: int
    fit: FitResult
    assignment: GroupAssignment
    groups: str
    relative_error: float
    accuracy: float
    test: BinaryRatings | None
    synthetic: SyntheticDataset | None

    def score(self, metric: str) -> float:
        """Larger is better."""
        return -self.relative_error if metric == "relative_error" else self.accuracy

    def row(self) -> dict[str, object]:
        return {
            "lambda": self.lam,
            "replication": self.replication + 1,
            "seed": self.seed,
            "groups": self.groups,
            "iterations": self.fit.iterations_run,
            "converged": int(self.fit.converged),
            "final_loss": self.fit.final_loss,
            "relative_error": self.relative_error,
            "accuracy": self.accuracy,
        }


def evaluate_fit(
    fit: FitResult,
    assignment: GroupAssignment,
    test: BinaryRatings | None,
    truth: GroundTruth | None,
) -> tuple[float, float]:
    """(relative error against the ground truth, accuracy on the test split), NaN if absent."""
    error = math.nan
    if truth is not None:
        error = relative_error(assemble_M(fit.factors, assignment), truth.M_true)
    score = math.nan
    if test is not None and len(test):
        score = accuracy(binarize_predictions(predict_missing(fit, assignment)), test)
    return error, score


def summarize(rows: pd.DataFrame, metric: str) -> pd.DataFrame:
    """Mean, best and spread of the headline metric for every lambda."""
    grouped = rows.groupby("lambda", sort=True)[metric]
    best = grouped.min() if metric == "relative_error" else grouped.max()
    return pd.DataFrame(
        {
            "lambda": grouped.mean().index,
            "metric": metric,
            "replications": grouped.count().to_numpy(),
            "mean": grouped.mean().to_numpy(),
            "best": best.to_numpy(),
            "std": grouped.std(ddof=0).to_numpy(),
        }
    )


class GS1MCCommand(Command):
    name = "gs1mc"
    summary = "fit group-specific 1-bit matrix completion with given or implicit groups"

    def datasets(self, config: dict[str, object]):
        """
        Yields (replication, seed, dataset, synthetic draw or None). Without --data every
        replication draws its own synthetic dataset from its own seed.
        """
        seed = int(config["seed"])
        replications = int(config["replications"])
        if replications < 1:
            raise UsageError("--replications must be at least 1")

        fixed = load_dataset(config) if config.get("data") is not None else None
        for replication in range(replications):
            run_seed = replication_seed(seed, replication)
            if fixed is not None:
                yield replication, run_seed, fixed, None
                continue
            synthetic = generate_synthetic(synthetic_config(config, run_seed))
            truth = GroundTruth(synthetic.factors, synthetic.assignment, synthetic.M_true)
            generated = Dataset(synthetic.ratings, None, truth, "synthetic", "generated")
            yield replication, run_seed, generated, synthetic

    @override
    def run(self, config: dict[str, object]) -> CommandResult:
        out = self.output_dir(config)
        lambdas = tuple(config["lambda"])

        rows: list[dict[str, object]] = []
        best_by_lambda: dict[float, Replication] = {}
        metric = None
        for replication, seed, dataset, synthetic in self.datasets(config):
            train, test = train_test_split(dataset, config["train_frac"], seed)
            assignment, groups = resolve_groups(config["groups"], dataset, train)
            metric = metric or ("relative_error" if dataset.truth is not None else "accuracy")
            if metric == "accuracy" and test is None:
                raise UsageError("no test split to score: pass --train-frac")

            for lam in lambdas:
                fit = fit_gs1mc(train, assignment, train_config(config, lam, seed))
                error, score = evaluate_fit(fit, assignment, test, dataset.truth)
                result = Replication(
                    lam, replication, seed, fit, assignment, groups, error, score, test, synthetic
                )
                logger.info(
                    "lambda=%g replication=%d: relative_error=%.4f accuracy=%.4f",
                    lam,
                    replication + 1,
                    error,
                    score,
                )
                rows.append(result.row())
                incumbent = best_by_lambda.get(lam)
                if incumbent is None or result.score(metric) > incumbent.score(metric):
                    best_by_lambda[lam] = result

        table = pd.DataFrame(rows)
        summary = summarize(table, metric)
        write_table(out / METRICS_FILE, table)
        write_table(out / SUMMARY_FILE, summary)

        chosen = max(best_by_lambda.values(), key=lambda result: result.score(metric))
        self.save_best(out, chosen, config)

        inputs = [str(config["data"])] if config.get("data") is not None else []
        return CommandResult(
            inputs=inputs,
            metrics={
                "metric": metric,
                "best_lambda": chosen.lam,
                "best": chosen.relative_error if metric == "relative_error" else chosen.accuracy,
                "mean": float(summary.loc[summary["lambda"] == chosen.lam, "mean"].iloc[0]),
            },
        )

    def save_best(self, out: Path, chosen: Replication, config: dict[str, object]):
        notes = {
            "lambda": repr(chosen.lam),
            "seed": chosen.seed,
            "replication": chosen.replication + 1,
            "groups": chosen.groups,
            "iterations": chosen.fit.iterations_run,
            "converged": int(chosen.fit.converged),
        }
        save_factors(out / CHECKPOINT_DIR, chosen.fit.factors, notes)
        save_assignment(out / GROUPS_DIR, chosen.assignment)
        trace = chosen.fit.loss_trace
        write_table(
            out / LOSS_FILE,
            pd.DataFrame({"iteration": np.arange(len(trace)), "loss": np.asarray(trace)}),
        )
        if chosen.test is not None:
            save_ratings(out / TEST_FILE, chosen.test)
        if chosen.synthetic is not None:
            cfg = synthetic_config(config, chosen.seed)
            save_bundle(
                out / GENERATED_DATA_DIR,
                chosen.synthetic.ratings,
                test=chosen.test,
                synthetic=chosen.synthetic,
                header=bundle_header(cfg),
            )


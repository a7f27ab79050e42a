import logging
from pathlib import Path

import pandas as pd
from overrides import override

from commands.Command import CHECKPOINT_DIR, GROUPS_DIR, TEST_FILE, Command, CommandResult
from commands.gs1mc import GENERATED_DATA_DIR
from data_io.artifacts import load_assignment, load_factors, load_ratings, write_table
from data_io.DatasetSource import Dataset, open_source
from errors import DataError, UsageError
from metrics import accuracy, relative_error
from model_core.latent import (
    assemble_M,
    binarize_predictions,
    check_dimensions,
    predict_probabilities,
)

logger = logging.getLogger(__name__)

EVAL_FILE = "eval.csv"


class EvalCommand(Command):
    """
    Scores a saved checkpoint. The test split is the run's own test.csv when it has one,
    otherwise the dataset's; relative error needs a dataset with ground truth.
    """

    name = "eval"
    summary = "score a saved checkpoint on a held-out split or against ground truth"

    @staticmethod
    def dataset(run: Path, config: dict[str, object]) -> Dataset | None:
        if config.get("data") is not None:
            return open_source(Path(str(config["data"]))).load()
        if (run / GENERATED_DATA_DIR).is_dir():
            return open_source(run / GENERATED_DATA_DIR).load()
        return None

    @override
    def run(self, config: dict[str, object]) -> CommandResult:
        run = Path(str(self.required(config, "run")))
        out = self.output_dir(config)

        factors = load_factors(run / CHECKPOINT_DIR)
        assignment = load_assignment(run / GROUPS_DIR)
        try:
            check_dimensions(factors, assignment)
        except ValueError as error:
            raise DataError(f"{run}: {error}") from None
        dataset = self.dataset(run, config)
        if dataset is not None and dataset.shape != (factors.n1, factors.n2):
            raise DataError(
                f"dataset is {dataset.shape[0]} x {dataset.shape[1]}, "
                f"checkpoint is {factors.n1} x {factors.n2}"
            )

        test = None
        if (run / TEST_FILE).is_file():
            test = load_ratings(run / TEST_FILE, factors.n1, factors.n2)
        elif dataset is not None:
            test = dataset.test
        truth = dataset.truth if dataset is not None else None
        if test is None and truth is None:
            raise UsageError(f"nothing to evaluate {run} against: no test split, no ground truth")

        M = assemble_M(factors, assignment)  # noqa: N806
        row: dict[str, object] = {"run": str(run)}
        if test is not None and len(test):
            row["test_entries"] = len(test)
            row["accuracy"] = accuracy(binarize_predictions(predict_probabilities(M)), test)
            row["misclassification"] = 1.0 - row["accuracy"]
        if truth is not None:
            row["relative_error"] = relative_error(M, truth.M_true)
        write_table(out / EVAL_FILE, pd.DataFrame([row]))
        logger.info("evaluated %s: %s", run, row)

        inputs = [str(run)] + ([dataset.location] if dataset is not None else [])
        return CommandResult(
            inputs=inputs, metrics={key: value for key, value in row.items() if key != "run"}
        )

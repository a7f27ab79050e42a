import logging
from pathlib import Path

import numpy as np
import pandas as pd
from overrides import override

from commands.Command import CHECKPOINT_DIR, GROUPS_DIR, TEST_FILE, Command, CommandResult
from commands.inputs import load_dataset, train_config, train_test_split
from data_io.artifacts import (
    read_table,
    save_assignment,
    save_factors,
    save_labels,
    save_ratings,
    write_table,
)
from errors import DataError, UsageError
from metrics import AMI_NORMALIZER
from model_core.GroupAssignment import GroupAssignment
from trainers.CDMCTrainer import CdmcConfig, CdmcTrace, EpochRecord, fit_cdmc

logger = logging.getLogger(__name__)

TRACE_FILE = "trace.csv"
USER_LABELS_FILE = "user_labels.csv"
ITEM_LABELS_FILE = "item_labels.csv"
USER_HISTORY_FILE = "user_labels_by_epoch.csv"
ITEM_HISTORY_FILE = "item_labels_by_epoch.csv"
TRACE_COLUMNS = ["epoch", "loss", "misclassification", "user_ami", "item_ami"]


def cdmc_config(config: dict[str, object], seed: int) -> CdmcConfig:
    lambdas = tuple(config["lambda"])
    if len(lambdas) != 1:
        raise UsageError("cdmc takes a single --lambda value")
    try:
        return CdmcConfig(
            train=train_config(config, lambdas[0], seed),
            m1=int(config["user_clusters"]),
            m2=int(config["item_clusters"]),
            outer_epochs=int(config["epochs"]),
            inner_steps=int(config["cycles"]),
            ssc_alpha=float(config["ssc_alpha"]),
            ssc_mu=None if config["ssc_mu"] is None else float(config["ssc_mu"]),
            ssc_tolerance=float(config["ssc_tolerance"]),
            ssc_max_iters=int(config["ssc_max_iters"]),
            affinity_top_q=int(config["top_q"]),
            stability_ami=float(config["stability_ami"]),
            recluster=bool(config["recluster"]),
            seed=seed,
        )
    except ValueError as error:
        raise UsageError(str(error)) from None


def trace_table(trace: CdmcTrace) -> pd.DataFrame:
    return pd.DataFrame(
        [
            {
                "epoch": record.epoch,
                "loss": record.loss,
                "misclassification": (
                    np.nan if record.misclassification is None else record.misclassification
                ),
                "user_ami": record.user_ami,
                "item_ami": record.item_ami,
            }
            for record in trace.epochs
        ],
        columns=TRACE_COLUMNS,
    )


def label_history(trace: CdmcTrace, side: str) -> pd.DataFrame:
    """One row per entity, one 1-based label column per epoch."""
    columns = {
        f"epoch_{record.epoch}": getattr(record, f"{side}_labels") + 1 for record in trace.epochs
    }
    size = len(next(iter(columns.values()))) if columns else 0
    return pd.DataFrame({"index": np.arange(1, size + 1), **columns})


def load_trace(directory: str | Path) -> CdmcTrace:
    """Rebuilds a run's trace, with its per-epoch labels, from a cdmc output directory."""
    directory = Path(directory)
    table = read_table(directory / TRACE_FILE, TRACE_COLUMNS)
    histories = {
        side: read_table(directory / filename, ["index"])
        for side, filename in (("user", USER_HISTORY_FILE), ("item", ITEM_HISTORY_FILE))
    }

    records = []
    for row in table.itertuples(index=False):
        column = f"epoch_{int(row.epoch)}"
        if any(column not in history.columns for history in histories.values()):
            raise DataError(f"{directory}: labels for epoch {int(row.epoch)} are missing")
        misclassification = None if pd.isna(row.misclassification) else row.misclassification
        records.append(
            EpochRecord(
                int(row.epoch),
                histories["user"][column].to_numpy(dtype=np.int64) - 1,
                histories["item"][column].to_numpy(dtype=np.int64) - 1,
                misclassification,
                float(row.loss),
                float(row.user_ami),
                float(row.item_ami),
            )
        )
    return CdmcTrace(tuple(records), converged=False)


class CDMCCommand(Command):
    name = "cdmc"
    summary = "cluster-developing matrix completion: learn groups and factors together"

    @override
    def run(self, config: dict[str, object]) -> CommandResult:
        seed = int(config["seed"])
        cdmc = cdmc_config(config, seed)
        out = self.output_dir(config)

        dataset = load_dataset(config)
        train, test = train_test_split(dataset, config["train_frac"], seed)
        fit, users, items, trace = fit_cdmc(train, cdmc, test)

        save_factors(
            out / CHECKPOINT_DIR,
            fit.factors,
            {"lambda": repr(cdmc.train.lam), "seed": seed, "epochs": len(trace)},
        )
        final_groups = GroupAssignment(users.labels, items.labels, users.k, items.k)
        save_assignment(out / GROUPS_DIR, final_groups)
        save_labels(out / USER_LABELS_FILE, users.labels)
        save_labels(out / ITEM_LABELS_FILE, items.labels)
        write_table(out / TRACE_FILE, trace_table(trace))
        write_table(out / USER_HISTORY_FILE, label_history(trace, "user"), "labels")
        write_table(out / ITEM_HISTORY_FILE, label_history(trace, "item"), "labels")
        if test is not None:
            save_ratings(out / TEST_FILE, test)

        final = trace.epochs[-1]
        metrics: dict[str, object] = {
            "epochs": len(trace),
            "converged": int(trace.converged),
            "final_loss": final.loss,
            "user_ami_last": final.user_ami,
            "item_ami_last": final.item_ami,
            "ami_normalizer": AMI_NORMALIZER,
        }
        if final.misclassification is not None:
            metrics["misclassification"] = final.misclassification
        logger.info("cdmc finished after %d epochs", len(trace))
        return CommandResult(inputs=[str(config["data"])], metrics=metrics)

import logging

import pandas as pd
from overrides import override

from commands.cdmc import load_trace
from commands.Command import Command, CommandResult
from data_io.artifacts import write_table
from errors import DataError
from metrics import AMI_NORMALIZER
from trainers.CDMCTrainer import cross_run_ami

logger = logging.getLogger(__name__)

CROSS_RUN_FILE = "cross_run_ami.csv"


class CompareCommand(Command):
    name = "compare"
    summary = "AMI between the labels of two cdmc runs, epoch by epoch"

    @override
    def run(self, config: dict[str, object]) -> CommandResult:
        run_a = str(self.required(config, "run_a"))
        run_b = str(self.required(config, "run_b"))
        out = self.output_dir(config)

        try:
            series = cross_run_ami(load_trace(run_a), load_trace(run_b))
        except DataError:
            raise
        except ValueError as error:
            raise DataError(f"cannot compare {run_a} and {run_b}: {error}") from None

        table = pd.DataFrame(
            {
                "epoch": [point.epoch for point in series],
                "user_ami": [point.user_ami for point in series],
                "item_ami": [point.item_ami for point in series],
            }
        )
        write_table(out / CROSS_RUN_FILE, table)

        metrics: dict[str, object] = {"epochs": len(series), "ami_normalizer": AMI_NORMALIZER}
        if series:
            metrics["user_ami_first"] = series[0].user_ami
            metrics["user_ami_last"] = series[-1].user_ami
            metrics["item_ami_first"] = series[0].item_ami
            metrics["item_ami_last"] = series[-1].item_ami
            logger.info(
                "cross-run AMI over %d epochs: users %.3f -> %.3f, items %.3f -> %.3f",
                len(series),
                series[0].user_ami,
                series[-1].user_ami,
                series[0].item_ami,
                series[-1].item_ami,
            )
        return CommandResult(inputs=[run_a, run_b], metrics=metrics)

import logging
import sys
import time

from commands import COMMANDS, RunManifest
from commands.config_loader import build_parser, format_config, resolve
from errors import CdmcError, DataError, UsageError
from monitors import ManifestRecorder, ProgressMonitor
from settings import debug_mode, progress_every

logger = logging.getLogger(__name__)


def configure_logging(verbose: bool):
    logging.basicConfig(
        level=logging.DEBUG if verbose or debug_mode else logging.INFO,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
        force=True,
    )


def main(argv: list[str] | None = None) -> int:
    """
    Runs one command and returns the process exit code: 0 on success, 2 for usage errors,
    3 for data errors, 4 for numerical failures.
    """
    parser = build_parser({name: command.summary for name, command in COMMANDS.items()})
    try:
        args = vars(parser.parse_args(argv))
    except SystemExit as exit_request:
        return int(exit_request.code or 0)

    configure_logging(bool(args.get("verbose")))
    command = COMMANDS[args["command"]]

    monitor = ProgressMonitor(progress_every).attach()
    recorder = ManifestRecorder().attach()
    started = time.perf_counter()
    try:
        config = resolve(command.name, args)
        result = command.run(config)
        manifest = RunManifest(
            command=command.name,
            config=format_config(command.name, config),
            seed=int(config["seed"]),
            inputs=result.inputs,
            outputs=recorder.outputs,
            wall_clock_s=time.perf_counter() - started,
            metrics=result.metrics,
            notes=recorder.notes,
        )
        path = manifest.write(command.output_dir(config))
        logger.info("%s done in %.1fs, manifest %s", command.name, manifest.wall_clock_s, path)
    except CdmcError as error:
        print(f"cdmc {command.name}: {error}", file=sys.stderr)
        return error.exit_code
    except ValueError as error:
        print(f"cdmc {command.name}: {error}", file=sys.stderr)
        return UsageError.exit_code
    except OSError as error:
        print(f"cdmc {command.name}: {error}", file=sys.stderr)
        return DataError.exit_code
    finally:
        monitor.detach()
        recorder.detach()
    return 0


if __name__ == "__main__":
    sys.exit(main())

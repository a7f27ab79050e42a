"""
Option table, argument parser and configuration precedence.

Every option has one key. The key is the long flag name with underscores and is also the
key accepted in flat key=value config files. Values resolve as settings defaults, then
the --config file, then command-line flags. Keys starting with "meta." are skipped so a
run manifest can be fed back in as a config file.
"""

import argparse
from collections.abc import Callable
from dataclasses import dataclass
from pathlib import Path

import settings
from data_io.artifacts import read_key_values
from data_io.synthetic import NOISE_MODES
from errors import DataError, UsageError

META_PREFIX = "meta."

GENERATE = frozenset({"synth", "gs1mc"})
TRAIN = frozenset({"gs1mc", "cdmc"})
ALL_COMMANDS = frozenset({"synth", "gs1mc", "cdmc", "compare", "project", "eval"})


def parse_bool(text: str) -> bool:
    lowered = text.strip().lower()
    if lowered in ("1", "true", "yes", "on"):
        return True
    if lowered in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


def parse_floats(text: str) -> tuple[float, ...]:
    values = tuple(float(part) for part in text.split(",") if part.strip())
    if not values:
        raise ValueError(f"expected a comma-separated list of numbers, got {text!r}")
    return values


PARSERS: dict[str, Callable[[str], object]] = {
    "int": int,
    "float": float,
    "str": str,
    "floats": parse_floats,
    "bool": parse_bool,
}


@dataclass(frozen=True)
class Option:
    key: str
    kind: str
    default: object
    help: str
    commands: frozenset[str]
    choices: tuple[str, ...] | None = None

    @property
    def flag(self) -> str:
        return "--" + self.key.replace("_", "-")

    def parse(self, text: str) -> object:
        """Converts a config-file or flag string; an empty string means "unset"."""
        if text == "":
            return None
        value = PARSERS[self.kind](text)
        if self.choices is not None and value not in self.choices:
            raise ValueError(f"must be one of {', '.join(self.choices)}, got {value!r}")
        return value

    def format(self, value: object) -> str:
        if value is None:
            return ""
        if self.kind == "floats":
            return ",".join(repr(float(v)) for v in value)
        if self.kind == "float":
            return repr(float(value))
        return str(value)


OPTIONS: tuple[Option, ...] = (
    Option("seed", "int", settings.default_seed, "run seed", ALL_COMMANDS),
    Option("out", "str", settings.default_output_dir, "output directory", ALL_COMMANDS),
    # synthetic protocol
    Option("users", "int", settings.synthetic_users, "n1", GENERATE),
    Option("items", "int", settings.synthetic_items, "n2", GENERATE),
    Option("user_groups", "int", settings.synthetic_user_groups, "m1", GENERATE),
    Option("item_groups", "int", settings.synthetic_item_groups, "m2", GENERATE),
    Option("pi", "float", settings.observation_rate, "observation rate", GENERATE),
    Option("sigma", "float", settings.noise_sigma, "noise std", GENERATE),
    Option(
        "noise_mode", "str", settings.noise_mode, "binarization", GENERATE, choices=NOISE_MODES
    ),
    # model and optimizer
    Option("k", "int", settings.latent_dimension, "latent dimension K", GENERATE | TRAIN),
    Option(
        "lambda",
        "floats",
        (settings.regularization,),
        "regularization; gs1mc accepts a comma-separated grid",
        TRAIN,
    ),
    Option("step_size", "float", settings.step_size, "largest step per block", TRAIN),
    Option("max_iters", "int", settings.max_outer_iters, "outer iteration cap", TRAIN),
    Option("inner_steps", "int", settings.inner_steps_per_block, "steps per block", TRAIN),
    Option("tolerance", "float", settings.tolerance, "relative loss change to stop", TRAIN),
    Option("init_scale", "float", settings.init_scale, "init std", TRAIN),
    Option("max_halvings", "int", settings.max_halvings, "backtracking budget", TRAIN),
    # data
    Option(
        "data",
        "str",
        None,
        "dataset bundle or MovieLens directory",
        frozenset({"gs1mc", "cdmc", "project", "eval"}),
    ),
    Option(
        "train_frac",
        "float",
        None,
        "share of observed entries used for training",
        TRAIN,
    ),
    Option(
        "groups",
        "str",
        None,
        "truth | single | implicit:m | path to a groups directory",
        frozenset({"gs1mc"}),
    ),
    Option("replications", "int", settings.replications, "independent repeats", TRAIN),
    # cluster developing loop
    Option("user_clusters", "int", settings.cluster_count, "m1", frozenset({"cdmc"})),
    Option("item_clusters", "int", settings.cluster_count, "m2", frozenset({"cdmc"})),
    Option("epochs", "int", settings.outer_epochs, "re-clustering epochs", frozenset({"cdmc"})),
    Option(
        "cycles", "int", settings.cdmc_inner_steps, "cycles per epoch", frozenset({"cdmc"})
    ),
    Option("ssc_alpha", "float", settings.ssc_alpha, "mu scale", frozenset({"cdmc"})),
    Option("ssc_mu", "float", None, "explicit mu", frozenset({"cdmc"})),
    Option("ssc_tolerance", "float", settings.ssc_tolerance, "solver tol", frozenset({"cdmc"})),
    Option("ssc_max_iters", "int", settings.ssc_max_iters, "solver cap", frozenset({"cdmc"})),
    Option("top_q", "int", settings.affinity_top_q, "coefficients kept", frozenset({"cdmc"})),
    Option(
        "stability_ami",
        "float",
        settings.label_stability_ami,
        "epoch-to-epoch AMI that ends the loop",
        frozenset({"cdmc"}),
    ),
    Option("recluster", "bool", True, "re-cluster every epoch", frozenset({"cdmc"})),
    # reading finished runs
    Option(
        "run",
        "str",
        None,
        "output directory of a gs1mc or cdmc run",
        frozenset({"project", "eval"}),
    ),
    Option("run_a", "str", None, "first cdmc run", frozenset({"compare"})),
    Option("run_b", "str", None, "second cdmc run", frozenset({"compare"})),
    Option(
        "genre_clusters", "int", settings.genre_clusters, "genre k", frozenset({"project"})
    ),
    Option(
        "profile_clusters",
        "int",
        settings.profile_clusters,
        "user-profile k",
        frozenset({"project"}),
    ),
)


def options_for(command: str) -> list[Option]:
    return [option for option in OPTIONS if command in option.commands]


def _argparse_type(option: Option) -> Callable[[str], object]:
    def convert(text: str) -> object:
        try:
            return option.parse(text)
        except ValueError as error:
            raise argparse.ArgumentTypeError(str(error)) from None

    convert.__name__ = option.kind
    return convert


def build_parser(commands: dict[str, str]) -> argparse.ArgumentParser:
    """
    Parameters:
    commands (dict[str, str]): command name -> one-line help
    """
    parser = argparse.ArgumentParser(
        prog="cdmc", description="Group-specific and cluster-developing 1-bit matrix completion"
    )
    subparsers = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    for name, summary in commands.items():
        sub = subparsers.add_parser(name, help=summary, description=summary)
        sub.add_argument("--config", default=None, help="flat key=value configuration file")
        sub.add_argument("-v", "--verbose", action="store_true", help="debug logging")
        for option in options_for(name):
            if option.kind == "bool":
                sub.add_argument(
                    option.flag,
                    dest=option.key,
                    action=argparse.BooleanOptionalAction,
                    default=None,
                    help=f"{option.help} (default {option.default})",
                )
                continue
            sub.add_argument(
                option.flag,
                dest=option.key,
                type=_argparse_type(option),
                default=None,
                metavar=option.kind.upper(),
                help=f"{option.help} (default {option.format(option.default) or 'unset'})",
            )
    return parser


def read_config_file(path: str | Path, command: str) -> dict[str, object]:
    known = {option.key: option for option in options_for(command)}
    try:
        raw = read_key_values(path)
    except DataError as error:
        raise UsageError(f"config file: {error}") from None

    values: dict[str, object] = {}
    for key, text in raw.items():
        if key.startswith(META_PREFIX):
            continue
        normalized = key.replace("-", "_")
        if normalized not in known:
            raise UsageError(f"{path}: unknown key {key!r} for command {command}")
        try:
            values[normalized] = known[normalized].parse(text)
        except ValueError as error:
            raise UsageError(f"{path}: {key}: {error}") from None
    return values


def resolve(command: str, flags: dict[str, object]) -> dict[str, object]:
    """
    Defaults < config file < flags. `flags` is the parsed namespace as a dict; options a
    user did not pass are None there.
    """
    values = {option.key: option.default for option in options_for(command)}
    if flags.get("config"):
        values.update(read_config_file(flags["config"], command))
    values.update({key: flags[key] for key in values if flags.get(key) is not None})
    return values


def format_config(command: str, values: dict[str, object]) -> dict[str, str]:
    known = {option.key: option for option in options_for(command)}
    return {key: known[key].format(value) for key, value in values.items() if key in known}

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from pathlib import Path

from errors import UsageError

CHECKPOINT_DIR = "checkpoint"
GROUPS_DIR = "groups"
TEST_FILE = "test.csv"
MANIFEST_FILE = "manifest.txt"


@dataclass
class CommandResult:
    """
    Fields:
    inputs (list[str]): paths the command read
    metrics (dict[str, object]): headline numbers, copied into the manifest
    """

    inputs: list[str] = field(default_factory=list)
    metrics: dict[str, object] = field(default_factory=dict)


class Command(ABC):
    """
    One subcommand of the command line. `run` receives the resolved configuration
    (see `config_loader.resolve`) and writes its outputs below config["out"].
    """

    name: str = ""
    summary: str = ""

    @abstractmethod
    def run(self, config: dict[str, object]) -> CommandResult:
        """
        Executes the command.

        Parameters:
        config (dict[str, object]): resolved option values keyed by option key

        Returns:
        CommandResult: what was read and the numbers worth recording
        """

    @staticmethod
    def output_dir(config: dict[str, object]) -> Path:
        out = Path(str(config["out"]))
        if out.exists() and not out.is_dir():
            raise UsageError(f"output path {out} exists and is not a directory")
        out.mkdir(parents=True, exist_ok=True)
        return out

    @staticmethod
    def required(config: dict[str, object], key: str) -> object:
        value = config.get(key)
        if value is None:
            raise UsageError(f"--{key.replace('_', '-')} is required")
        return value

from .cdmc import CDMCCommand as CDMCCommand
from .Command import Command as Command
from .Command import CommandResult as CommandResult
from .compare import CompareCommand as CompareCommand
from .evaluate import EvalCommand as EvalCommand
from .gs1mc import GS1MCCommand as GS1MCCommand
from .project import ProjectCommand as ProjectCommand
from .RunManifest import RunManifest as RunManifest
from .synth import SynthCommand as SynthCommand

COMMANDS: dict[str, Command] = {
    command.name: command
    for command in (
        SynthCommand(),
        GS1MCCommand(),
        CDMCCommand(),
        CompareCommand(),
        ProjectCommand(),
        EvalCommand(),
    )
}

import platform
from dataclasses import dataclass, field
from importlib import metadata
from pathlib import Path

from commands.Command import MANIFEST_FILE
from data_io.artifacts import FORMAT_VERSION, write_key_values

TRACKED_PACKAGES = ("numpy", "scipy", "scikit-learn", "pandas")


def package_versions() -> dict[str, str]:
    versions = {"python": platform.python_version(), "matrix_format": str(FORMAT_VERSION)}
    for package in TRACKED_PACKAGES:
        try:
            versions[package] = metadata.version(package)
        except metadata.PackageNotFoundError:
            versions[package] = "unknown"
    return versions


@dataclass
class RunManifest:
    """
    Everything needed to re-derive a run's numbers.

    Written as flat key=value text. Resolved configuration keys are written bare so the file
    doubles as a --config input; everything else lives under the "meta." prefix, which the
    config loader skips.
    """

    command: str
    config: dict[str, str]
    seed: int
    inputs: list[str] = field(default_factory=list)
    outputs: list[str] = field(default_factory=list)
    wall_clock_s: float = 0.0
    metrics: dict[str, object] = field(default_factory=dict)
    notes: dict[str, object] = field(default_factory=dict)
    versions: dict[str, str] = field(default_factory=package_versions)

    def to_key_values(self) -> dict[str, object]:
        values: dict[str, object] = dict(self.config)
        values["meta.command"] = self.command
        values["meta.seed"] = self.seed
        values["meta.inputs"] = ";".join(self.inputs)
        values["meta.outputs"] = ";".join(sorted(set(self.outputs)))
        values["meta.wall_clock_s"] = f"{self.wall_clock_s:.3f}"
        for key, value in self.metrics.items():
            values[f"meta.metric.{key}"] = repr(value) if isinstance(value, float) else value
        for key, value in self.notes.items():
            values[f"meta.note.{key}"] = value
        for key, value in self.versions.items():
            values[f"meta.version.{key}"] = value
        return values

    def write(self, directory: str | Path) -> Path:
        path = Path(directory) / MANIFEST_FILE
        write_key_values(path, self.to_key_values())
        return path

"""
On-disk formats.

Matrices are stored as a 16-byte header (magic "GS1M", u32 version, u32 rows, u32 cols, all
little-endian) followed by rows * cols little-endian float64 values in row-major order.
Labels, ratings and reports are comma-separated text with a header row and 1-based indices.
Every file is written to a temporary sibling first and moved into place.
"""

import logging
import os
import struct
import tempfile
from collections.abc import Callable
from pathlib import Path

import numpy as np
import pandas as pd

from errors import DataError
from event_system import EventBusSingleton
from event_system.events.Data import ArtifactWrittenEvent
from model_core.BinaryRatings import BinaryRatings
from model_core.FactorSet import FactorSet
from model_core.GroupAssignment import GroupAssignment

logger = logging.getLogger(__name__)

MAGIC = b"GS1M"
FORMAT_VERSION = 1
HEADER = struct.Struct("<4sIII")
FACTOR_FILES = {"P": "P.bin", "Q": "Q.bin", "S_U": "S_U.bin", "T_J": "T_J.bin"}
CHECKPOINT_FILE = "checkpoint.txt"
USER_GROUPS_FILE = "user_groups.csv"
ITEM_GROUPS_FILE = "item_groups.csv"
GROUP_COUNTS_FILE = "groups.txt"


class ArtifactFormatError(DataError):
    """A file exists but is not in the expected format or version."""


def _atomic_write(path: Path, write: Callable[[Path], None], kind: str):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    handle, temporary = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    os.close(handle)
    try:
        write(Path(temporary))
        os.replace(temporary, path)
    except BaseException:
        Path(temporary).unlink(missing_ok=True)
        raise

    logger.debug("wrote %s %s", kind, path)
    EventBusSingleton.publish(ArtifactWrittenEvent(path=str(path), kind=kind))


def _require(path: Path) -> Path:
    path = Path(path)
    if not path.is_file():
        raise DataError(f"missing file: {path}")
    return path


def save_matrix(path: str | Path, matrix: np.ndarray):
    matrix = np.asarray(matrix, dtype=np.float64)
    if matrix.ndim != 2:
        raise ValueError(f"only 2-D matrices can be saved, got shape {matrix.shape}")
    payload = HEADER.pack(MAGIC, FORMAT_VERSION, *matrix.shape)
    payload += np.ascontiguousarray(matrix, dtype="<f8").tobytes()
    _atomic_write(Path(path), lambda target: target.write_bytes(payload), "matrix")


def load_matrix(path: str | Path) -> np.ndarray:
    raw = _require(Path(path)).read_bytes()
    if len(raw) < HEADER.size:
        raise ArtifactFormatError(f"{path}: truncated header")

    magic, version, rows, cols = HEADER.unpack_from(raw)
    if magic != MAGIC:
        raise ArtifactFormatError(f"{path}: bad magic {magic!r}, expected {MAGIC!r}")
    if version != FORMAT_VERSION:
        raise ArtifactFormatError(
            f"{path}: unsupported format version {version} (this build reads {FORMAT_VERSION})"
        )
    expected = HEADER.size + rows * cols * 8
    if len(raw) != expected:
        raise ArtifactFormatError(f"{path}: truncated data ({len(raw)} of {expected} bytes)")
    values = np.frombuffer(raw, dtype="<f8", offset=HEADER.size)
    return values.astype(np.float64).reshape(rows, cols)


def write_key_values(path: str | Path, values: dict[str, object]):
    """Flat key=value text, one pair per line, in insertion order."""
    text = "".join(f"{key}={value}\n" for key, value in values.items())
    _atomic_write(Path(path), lambda target: target.write_text(text, encoding="utf-8"), "keyvalue")


def read_key_values(path: str | Path) -> dict[str, str]:
    path = _require(Path(path))
    values: dict[str, str] = {}
    for number, line in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        key, separator, value = line.partition("=")
        if not separator or not key.strip():
            raise DataError(f"{path}: line {number} is not key=value")
        values[key.strip()] = value.strip()
    return values


def save_factors(directory: str | Path, factors: FactorSet, notes: dict[str, object] | None = None):
    """
    Writes one matrix file per block plus a checkpoint.txt header with the dimensions and
    any extra notes.
    """
    directory = Path(directory)
    for name, filename in FACTOR_FILES.items():
        save_matrix(directory / filename, getattr(factors, name))
    header = {
        "format_version": FORMAT_VERSION,
        "K": factors.K,
        "n1": factors.n1,
        "n2": factors.n2,
        "m1": factors.m1,
        "m2": factors.m2,
    }
    write_key_values(directory / CHECKPOINT_FILE, {**header, **(notes or {})})


def load_factors(directory: str | Path) -> FactorSet:
    directory = Path(directory)
    header = read_key_values(directory / CHECKPOINT_FILE)
    if header.get("format_version") != str(FORMAT_VERSION):
        raise ArtifactFormatError(
            f"{directory}: checkpoint version {header.get('format_version')} is not supported"
        )
    blocks = {name: load_matrix(directory / filename) for name, filename in FACTOR_FILES.items()}
    try:
        factors = FactorSet(**blocks)
    except ValueError as error:
        raise DataError(f"{directory}: inconsistent checkpoint: {error}") from None

    recorded = tuple(int(header[key]) for key in ("K", "n1", "n2", "m1", "m2"))
    if recorded != (factors.K, factors.n1, factors.n2, factors.m1, factors.m2):
        raise DataError(f"{directory}: block shapes disagree with {CHECKPOINT_FILE}")
    return factors


def write_table(path: str | Path, table: pd.DataFrame, kind: str = "report"):
    _atomic_write(
        Path(path), lambda target: table.to_csv(target, index=False, float_format="%.17g"), kind
    )


def read_table(path: str | Path, columns: list[str] | None = None) -> pd.DataFrame:
    path = _require(Path(path))
    try:
        table = pd.read_csv(path)
    except (pd.errors.EmptyDataError, pd.errors.ParserError) as error:
        raise DataError(f"{path}: unreadable table: {error}") from None
    missing = [column for column in columns or [] if column not in table.columns]
    if missing:
        raise DataError(f"{path}: missing columns {missing}")
    return table


def save_labels(path: str | Path, labels: np.ndarray):
    labels = np.asarray(labels, dtype=np.int64)
    table = pd.DataFrame({"index": np.arange(1, labels.size + 1), "label": labels + 1})
    write_table(path, table, "labels")


def load_labels(path: str | Path) -> np.ndarray:
    """0-based label vector, ordered by the file's index column."""
    table = read_table(path, ["index", "label"])
    index = table["index"].to_numpy(dtype=np.int64)
    if not np.array_equal(np.sort(index), np.arange(1, index.size + 1)):
        raise DataError(f"{path}: index column must run from 1 to {index.size}")
    labels = np.empty(index.size, dtype=np.int64)
    labels[index - 1] = table["label"].to_numpy(dtype=np.int64) - 1
    if labels.size and labels.min() < 0:
        raise DataError(f"{path}: labels must be positive")
    return labels


def save_ratings(path: str | Path, ratings: BinaryRatings):
    table = pd.DataFrame(
        {"user": ratings.users + 1, "item": ratings.items + 1, "y": ratings.values.astype(int)}
    )
    write_table(path, table, "ratings")


def load_ratings(path: str | Path, n1: int, n2: int) -> BinaryRatings:
    table = read_table(path, ["user", "item", "y"])
    try:
        return BinaryRatings(
            n1,
            n2,
            table["user"].to_numpy(dtype=np.int64) - 1,
            table["item"].to_numpy(dtype=np.int64) - 1,
            table["y"].to_numpy(dtype=np.int64),
        )
    except ValueError as error:
        raise DataError(f"{path}: {error}") from None


def save_assignment(directory: str | Path, assignment: GroupAssignment):
    directory = Path(directory)
    save_labels(directory / USER_GROUPS_FILE, assignment.user_group)
    save_labels(directory / ITEM_GROUPS_FILE, assignment.item_group)
    write_key_values(directory / GROUP_COUNTS_FILE, {"m1": assignment.m1, "m2": assignment.m2})


def load_assignment(directory: str | Path) -> GroupAssignment:
    """
    Reads user_groups.csv and item_groups.csv. Group counts come from groups.txt when present,
    otherwise from the largest label on each side.
    """
    directory = Path(directory)
    users = load_labels(directory / USER_GROUPS_FILE)
    items = load_labels(directory / ITEM_GROUPS_FILE)
    counts_file = directory / GROUP_COUNTS_FILE
    if counts_file.is_file():
        counts = read_key_values(counts_file)
        m1, m2 = int(counts["m1"]), int(counts["m2"])
    else:
        m1, m2 = int(users.max()) + 1, int(items.max()) + 1
    try:
        return GroupAssignment(users, items, m1, m2)
    except ValueError as error:
        raise DataError(f"{directory}: {error}") from None

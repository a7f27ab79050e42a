import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from overrides import override

from data_io import artifacts, movielens
from data_io.synthetic import SyntheticDataset
from errors import DataError
from model_core.BinaryRatings import BinaryRatings
from model_core.FactorSet import FactorSet
from model_core.GroupAssignment import GroupAssignment

logger = logging.getLogger(__name__)

DATASET_FILE = "dataset.txt"
RATINGS_FILE = "ratings.csv"
TEST_FILE = "test.csv"
TRUTH_DIR = "truth"
M_TRUE_FILE = "M_true.bin"


@dataclass(frozen=True, eq=False)
class GroundTruth:
    factors: FactorSet
    assignment: GroupAssignment
    M_true: np.ndarray


@dataclass(frozen=True, eq=False)
class Dataset:
    """
    Fields:
    ratings (BinaryRatings): observed entries available for training (or for splitting)
    test (BinaryRatings | None): a held-out split stored with the data, if any
    truth (GroundTruth | None): generating factors and groups of a synthetic dataset
    kind (str): "synthetic", "movielens" or "bundle"
    location (str): where the data was read from
    """

    ratings: BinaryRatings
    test: BinaryRatings | None
    truth: GroundTruth | None
    kind: str
    location: str

    @property
    def shape(self) -> tuple[int, int]:
        return self.ratings.shape


class DatasetSource(ABC):
    def __init__(self, location: str | Path):
        self.location = Path(location)

    @abstractmethod
    def load(self) -> Dataset:
        """
        Reads the dataset.

        Returns:
        Dataset: the observed ratings plus whatever extras the source carries
        """


class BundleSource(DatasetSource):
    """
    A directory written by `save_bundle`:

    dataset.txt            kind, n1, n2 and generator settings
    ratings.csv            user,item,y (1-based)
    test.csv               optional held-out entries, same layout
    truth/                 optional factor checkpoint, group files and M_true.bin
    """

    @override
    def load(self) -> Dataset:
        header = artifacts.read_key_values(self.location / DATASET_FILE)
        try:
            n1, n2 = int(header["n1"]), int(header["n2"])
        except (KeyError, ValueError):
            raise DataError(f"{self.location / DATASET_FILE}: n1 and n2 are required") from None

        ratings = artifacts.load_ratings(self.location / RATINGS_FILE, n1, n2)
        test_path = self.location / TEST_FILE
        test = artifacts.load_ratings(test_path, n1, n2) if test_path.is_file() else None

        truth = None
        truth_dir = self.location / TRUTH_DIR
        if truth_dir.is_dir():
            truth = GroundTruth(
                artifacts.load_factors(truth_dir),
                artifacts.load_assignment(truth_dir),
                artifacts.load_matrix(truth_dir / M_TRUE_FILE),
            )
            if truth.M_true.shape != (n1, n2):
                raise DataError(f"{truth_dir}: M_true shape {truth.M_true.shape} != {(n1, n2)}")

        logger.info("loaded bundle %s: %d x %d, %d observed", self.location, n1, n2, len(ratings))
        return Dataset(ratings, test, truth, header.get("kind", "bundle"), str(self.location))


class MovieLensSource(DatasetSource):
    """A MovieLens 100k directory, binarized at the global mean rating."""

    @override
    def load(self) -> Dataset:
        records, genres = movielens.load_movielens(self.location)
        n1 = max(record.user_id for record in records)
        ratings = movielens.binarize_ratings(records, n1, genres.shape[0])
        return Dataset(ratings, None, None, "movielens", str(self.location))


def open_source(location: str | Path) -> DatasetSource:
    """Picks the source type from the directory contents."""
    location = Path(location)
    if (location / DATASET_FILE).is_file():
        return BundleSource(location)
    if (location / movielens.RATINGS_FILE).is_file():
        return MovieLensSource(location)
    raise DataError(
        f"{location}: neither a dataset bundle ({DATASET_FILE}) "
        f"nor a MovieLens directory ({movielens.RATINGS_FILE})"
    )


def save_bundle(
    directory: str | Path,
    ratings: BinaryRatings,
    test: BinaryRatings | None = None,
    synthetic: SyntheticDataset | None = None,
    header: dict[str, object] | None = None,
):
    directory = Path(directory)
    artifacts.save_ratings(directory / RATINGS_FILE, ratings)
    if test is not None:
        artifacts.save_ratings(directory / TEST_FILE, test)
    if synthetic is not None:
        truth_dir = directory / TRUTH_DIR
        artifacts.save_factors(truth_dir, synthetic.factors, {"scale": repr(synthetic.scale)})
        artifacts.save_assignment(truth_dir, synthetic.assignment)
        artifacts.save_matrix(truth_dir / M_TRUE_FILE, synthetic.M_true)

    kind = "synthetic" if synthetic is not None else "bundle"
    artifacts.write_key_values(
        directory / DATASET_FILE,
        {"kind": kind, "n1": ratings.n1, "n2": ratings.n2, **(header or {})},
    )

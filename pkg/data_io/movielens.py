"""
MovieLens 100k ingestion: tab-separated ratings, pipe-separated item and user metadata.
"""

import logging
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import pandas as pd

from errors import DataError
from event_system import EventBusSingleton
from event_system.events.Data import RatingsBinarizedEvent
from model_core.BinaryRatings import BinaryRatings

logger = logging.getLogger(__name__)

RATINGS_FILE = "u.data"
ITEMS_FILE = "u.item"
USERS_FILE = "u.user"
ENCODING = "latin-1"

GENRES = (
    "unknown", "Action", "Adventure", "Animation", "Children", "Comedy", "Crime",
    "Documentary", "Drama", "Fantasy", "Film-Noir", "Horror", "Musical", "Mystery",
    "Romance", "Sci-Fi", "Thriller", "War", "Western",
)  # fmt: skip
ITEM_METADATA = ("item", "title", "release_date", "video_release_date", "url")


@dataclass(frozen=True)
class RatingRecord:
    user_id: int
    item_id: int
    rating: int
    timestamp: int

    def __post_init__(self):
        if self.user_id < 1 or self.item_id < 1:
            raise ValueError(f"ids must be positive, got user {self.user_id} item {self.item_id}")
        if not 1 <= self.rating <= 5:
            raise ValueError(f"rating must be in 1..5, got {self.rating}")


def _read_table(path: Path, separator: str, names: list[str]) -> pd.DataFrame:
    if not path.is_file():
        raise DataError(f"missing file: {path}")
    try:
        table = pd.read_csv(
            path, sep=separator, names=names, header=None, dtype=str, encoding=ENCODING
        )
    except pd.errors.EmptyDataError:
        raise DataError(f"empty file: {path}") from None
    except pd.errors.ParserError as error:
        raise DataError(f"malformed file {path}: {error}") from None
    if table.empty:
        raise DataError(f"empty file: {path}")
    return table


def _integer_columns(table: pd.DataFrame, columns: list[str], path: Path) -> pd.DataFrame:
    converted = table[columns].apply(pd.to_numeric, errors="coerce")
    bad = converted.isna().any(axis=1) | (converted % 1 != 0).any(axis=1)
    if bad.any():
        row = int(np.flatnonzero(bad.to_numpy())[0]) + 1
        raise DataError(f"{path}: malformed row {row}")
    return converted.astype(np.int64)


def load_ratings_table(directory: str | Path) -> pd.DataFrame:
    """The ratings file as a frame with integer user, item, rating and timestamp columns."""
    path = Path(directory) / RATINGS_FILE
    columns = ["user", "item", "rating", "timestamp"]
    table = _integer_columns(_read_table(path, "\t", columns), columns, path)

    out_of_range = (table["user"] < 1) | (table["item"] < 1) | ~table["rating"].between(1, 5)
    if out_of_range.any():
        row = int(np.flatnonzero(out_of_range.to_numpy())[0]) + 1
        raise DataError(f"{path}: id or rating out of range in row {row}")
    return table


def load_genres(directory: str | Path) -> np.ndarray:
    """n2 x 19 0/1 matrix; row i - 1 belongs to item id i."""
    path = Path(directory) / ITEMS_FILE
    table = _read_table(path, "|", [*ITEM_METADATA, *GENRES])
    flags = _integer_columns(table, list(GENRES), path)
    ids = _integer_columns(table, ["item"], path)["item"].to_numpy()

    if not flags.isin([0, 1]).all().all():
        raise DataError(f"{path}: genre flags must be 0 or 1")
    if not np.array_equal(np.sort(ids), np.arange(1, ids.size + 1)):
        raise DataError(f"{path}: item ids must run from 1 to {ids.size}")

    genres = np.zeros((ids.size, len(GENRES)), dtype=np.int8)
    genres[ids - 1] = flags.to_numpy()
    return genres


def load_movielens(directory: str | Path) -> tuple[list[RatingRecord], np.ndarray]:
    """
    Reads the ratings and the genre matrix and checks that every rated item has metadata.
    """
    table = load_ratings_table(directory)
    genres = load_genres(directory)
    if table["item"].max() > genres.shape[0]:
        raise DataError(
            f"ratings mention item {table['item'].max()} but {ITEMS_FILE} lists {genres.shape[0]}"
        )
    records = [
        RatingRecord(int(row.user), int(row.item), int(row.rating), int(row.timestamp))
        for row in table.itertuples(index=False)
    ]
    logger.info(
        "loaded %d ratings from %d users on %d items",
        len(records),
        table["user"].nunique(),
        table["item"].nunique(),
    )
    return records, genres


def load_user_profiles(directory: str | Path) -> pd.DataFrame:
    """
    User context features indexed by user id: standardized age, a gender indicator and one
    column per occupation.
    """
    path = Path(directory) / USERS_FILE
    table = _read_table(path, "|", ["user", "age", "gender", "occupation", "zip"])
    numeric = _integer_columns(table, ["user", "age"], path)

    age = numeric["age"].astype(np.float64)
    spread = age.std(ddof=0)
    features = pd.DataFrame(
        {
            "age": (age - age.mean()) / (spread if spread > 0 else 1.0),
            "female": (table["gender"].str.upper() == "F").astype(np.float64),
        }
    )
    occupations = pd.get_dummies(table["occupation"].str.strip(), prefix="occ", dtype=np.float64)
    features = pd.concat([features, occupations], axis=1)
    features.index = pd.Index(numeric["user"].to_numpy(), name="user")
    return features.sort_index()


def binarize_ratings(
    records: list[RatingRecord], n_users: int | None = None, n_items: int | None = None
) -> BinaryRatings:
    """
    +1 above the global mean rating, -1 below it. Ratings exactly at the mean are dropped.

    Parameters:
    records (list[RatingRecord]): nonempty list of ratings; (user, item) pairs must be unique
    n_users, n_items (int | None): matrix dimensions; default to the largest ids seen
    """
    if not records:
        raise DataError("cannot binarize an empty rating list")
    users = np.array([record.user_id for record in records], dtype=np.int64)
    items = np.array([record.item_id for record in records], dtype=np.int64)
    stars = np.array([record.rating for record in records], dtype=np.float64)

    mean = float(stars.mean())
    keep = stars != mean
    signs = np.where(stars > mean, 1, -1)
    dropped = int((~keep).sum())

    n1 = n_users if n_users is not None else int(users.max())
    n2 = n_items if n_items is not None else int(items.max())
    try:
        ratings = BinaryRatings(n1, n2, users[keep] - 1, items[keep] - 1, signs[keep])
    except ValueError as error:
        raise DataError(f"cannot build the rating matrix: {error}") from None

    logger.info("binarized at mean %.4f: kept %d, dropped %d ties", mean, len(ratings), dropped)
    EventBusSingleton.publish(
        RatingsBinarizedEvent(mean_rating=mean, kept=len(ratings), dropped=dropped)
    )
    return ratings

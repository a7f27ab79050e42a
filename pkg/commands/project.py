import logging
from pathlib import Path

import numpy as np
import pandas as pd
from overrides import override

from commands.Command import CHECKPOINT_DIR, GROUPS_DIR, Command, CommandResult
from data_io.artifacts import load_assignment, load_factors, write_table
from data_io.movielens import USERS_FILE, load_genres, load_user_profiles
from errors import DataError, UsageError
from model_core.latent import check_dimensions, item_side, user_side
from random_streams import derive_seed
from subspace_clustering.kmeans import kmeans

logger = logging.getLogger(__name__)

ITEM_PROJECTION_FILE = "item_projection.csv"
USER_PROJECTION_FILE = "user_projection.csv"


def projection_table(
    coordinates: np.ndarray, entity: str, labels: dict[str, np.ndarray]
) -> pd.DataFrame:
    """
    Columns: 1-based entity id, dim_1 .. dim_K, then one 1-based column per label set.
    """
    table = pd.DataFrame({entity: np.arange(1, coordinates.shape[0] + 1)})
    for dimension in range(coordinates.shape[1]):
        table[f"dim_{dimension + 1}"] = coordinates[:, dimension]
    for name, values in labels.items():
        table[name] = np.asarray(values) + 1
    return table


def cluster_features(features: np.ndarray, k: int, seed: int, name: str) -> np.ndarray:
    try:
        return kmeans(features, k, seed).labels
    except ValueError as error:
        raise UsageError(f"{name}: {error}") from None


class ProjectCommand(Command):
    name = "project"
    summary = "item and user latent coordinates with learned and metadata-based labels"

    @override
    def run(self, config: dict[str, object]) -> CommandResult:
        run = Path(str(self.required(config, "run")))
        data = Path(str(self.required(config, "data")))
        seed = int(config["seed"])
        out = self.output_dir(config)

        factors = load_factors(run / CHECKPOINT_DIR)
        assignment = load_assignment(run / GROUPS_DIR)
        try:
            check_dimensions(factors, assignment)
        except ValueError as error:
            raise DataError(f"{run}: {error}") from None

        genres = load_genres(data)
        if genres.shape[0] != factors.n2:
            raise DataError(
                f"{data} lists {genres.shape[0]} items, the checkpoint has {factors.n2}"
            )
        genre_labels = cluster_features(
            genres, int(config["genre_clusters"]), derive_seed(seed, "genre-kmeans"), "genres"
        )
        items = projection_table(
            item_side(factors, assignment),
            "item",
            {"cdmc_label": assignment.item_group, "genre_label": genre_labels},
        )
        write_table(out / ITEM_PROJECTION_FILE, items, "projection")

        user_labels = {"cdmc_label": assignment.user_group}
        if (data / USERS_FILE).is_file():
            profiles = load_user_profiles(data).reindex(np.arange(1, factors.n1 + 1))
            if profiles.isna().any().any():
                raise DataError(f"{data / USERS_FILE} does not cover users 1..{factors.n1}")
            user_labels["profile_label"] = cluster_features(
                profiles.to_numpy(dtype=np.float64),
                int(config["profile_clusters"]),
                derive_seed(seed, "profile-kmeans"),
                "user profiles",
            )
        else:
            logger.warning("%s not found; user projection has no profile labels", USERS_FILE)
        users = projection_table(user_side(factors, assignment), "user", user_labels)
        write_table(out / USER_PROJECTION_FILE, users, "projection")

        return CommandResult(
            inputs=[str(run), str(data)],
            metrics={"items": factors.n2, "users": factors.n1, "K": factors.K},
        )

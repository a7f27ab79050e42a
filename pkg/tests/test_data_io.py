import numpy as np
import pandas as pd
import pytest

from data_io import (
    GENRES,
    BundleSource,
    MovieLensSource,
    SyntheticConfig,
    binarize_ratings,
    generate_synthetic,
    group_by_implicit_feedback,
    load_movielens,
    load_user_profiles,
    open_source,
    save_bundle,
    split_observed,
)
from data_io.artifacts import (
    HEADER,
    MAGIC,
    ArtifactFormatError,
    load_assignment,
    load_factors,
    load_labels,
    load_matrix,
    load_ratings,
    read_key_values,
    save_assignment,
    save_factors,
    save_labels,
    save_matrix,
    save_ratings,
    write_key_values,
)
from data_io.movielens import RatingRecord
from errors import DataError
from event_system import EventBusSingleton
from event_system.events.Clustering import Side
from event_system.events.Data import RatingsBinarizedEvent
from model_core import BinaryRatings, FactorSet, GroupAssignment, assemble_M


def write_movielens(directory, ratings, n_items=4, users=True):
    lines = [f"{u}\t{i}\t{r}\t{881250949 + k}" for k, (u, i, r) in enumerate(ratings)]
    (directory / "u.data").write_text("\n".join(lines) + "\n", encoding="latin-1")
    items = []
    for item in range(1, n_items + 1):
        flags = ["0"] * len(GENRES)
        flags[item % len(GENRES)] = "1"
        metadata = [str(item), f"Movie {item} (1995)", "01-Jan-1995", "", "http://x"]
        items.append("|".join(metadata + flags))
    (directory / "u.item").write_text("\n".join(items) + "\n", encoding="latin-1")
    if users:
        rows = [
            "1|24|M|technician|85711",
            "2|53|F|other|94043",
            "3|23|M|writer|32067",
        ]
        (directory / "u.user").write_text("\n".join(rows) + "\n", encoding="latin-1")


SAMPLE = [(1, 1, 5), (1, 2, 3), (2, 1, 1), (2, 3, 4), (3, 4, 2), (3, 2, 4)]


def test_synthetic_defaults_follow_the_protocol():
    dataset = generate_synthetic(SyntheticConfig())

    assert dataset.ratings.shape == (200, 800)
    users, items = dataset.assignment.group_sizes()
    np.testing.assert_array_equal(users, np.full(10, 20))
    np.testing.assert_array_equal(items, np.full(10, 80))
    assert float(np.max(np.abs(dataset.M_true))) == 1.0
    assert abs(len(dataset.ratings) - round(0.25 * 200 * 800)) <= 1


def test_synthetic_truth_factors_reassemble_the_latent_matrix():
    dataset = generate_synthetic(SyntheticConfig(n1=20, n2=40, m1=2, m2=4, K=3, seed=2))

    np.testing.assert_allclose(
        assemble_M(dataset.factors, dataset.assignment), dataset.M_true, rtol=1e-10, atol=1e-12
    )


@pytest.mark.parametrize("mode", ["threshold", "bernoulli"])
def test_synthetic_generation_is_reproducible(mode):
    cfg = SyntheticConfig(n1=10, n2=20, m1=2, m2=2, pi=0.3, noise_mode=mode, seed=5)
    first, second = generate_synthetic(cfg), generate_synthetic(cfg)

    np.testing.assert_array_equal(first.ratings.linear_index(), second.ratings.linear_index())
    np.testing.assert_array_equal(first.ratings.values, second.ratings.values)
    assert first.factors.equals(second.factors)


def test_noise_free_threshold_mode_follows_the_sign_of_m():
    dataset = generate_synthetic(SyntheticConfig(n1=10, n2=20, m1=2, m2=2, sigma=0.0, pi=1.0))
    expected = np.where(dataset.M_true >= 0.0, 1, -1)

    np.testing.assert_array_equal(dataset.ratings.to_dense(), expected)


@pytest.mark.parametrize(
    "changes", [{"pi": 0.0}, {"pi": 1.5}, {"m1": 3}, {"noise_mode": "gaussian"}, {"sigma": -1.0}]
)
def test_synthetic_config_rejects_bad_values(changes):
    with pytest.raises(ValueError):
        SyntheticConfig(**changes)


def test_binarize_splits_at_the_mean():
    records = [RatingRecord(1, 1, 1, 0), RatingRecord(1, 2, 5, 0)]
    ratings = binarize_ratings(records)

    np.testing.assert_array_equal(ratings.values, [-1, 1])


def test_binarize_drops_ratings_equal_to_the_mean():
    events = []
    EventBusSingleton.subscribe(RatingsBinarizedEvent, events.append)
    records = [RatingRecord(1, i, 3, 0) for i in range(1, 5)]

    ratings = binarize_ratings(records)

    assert len(ratings) == 0
    assert events[0].dropped == 4 and events[0].mean_rating == 3.0


def test_binarize_rejects_empty_input():
    with pytest.raises(DataError):
        binarize_ratings([])


def test_rating_record_validation():
    with pytest.raises(ValueError):
        RatingRecord(0, 1, 3, 0)
    with pytest.raises(ValueError):
        RatingRecord(1, 1, 6, 0)


def test_load_movielens(tmp_path):
    write_movielens(tmp_path, SAMPLE)

    records, genres = load_movielens(tmp_path)

    assert len(records) == len(SAMPLE)
    assert records[0] == RatingRecord(1, 1, 5, 881250949)
    assert genres.shape == (4, 19)
    assert set(np.unique(genres)) <= {0, 1}
    assert genres[0, 1] == 1


def test_load_movielens_reports_the_bad_row(tmp_path):
    write_movielens(tmp_path, SAMPLE)
    lines = (tmp_path / "u.data").read_text().splitlines()
    lines[2] = "2\tx\t1\t0"
    (tmp_path / "u.data").write_text("\n".join(lines) + "\n")

    with pytest.raises(DataError, match="row 3"):
        load_movielens(tmp_path)


def test_load_movielens_rejects_empty_or_missing_files(tmp_path):
    write_movielens(tmp_path, SAMPLE)
    (tmp_path / "u.data").write_text("")
    with pytest.raises(DataError, match="u.data"):
        load_movielens(tmp_path)
    (tmp_path / "u.item").unlink()
    with pytest.raises(DataError):
        load_movielens(tmp_path)


def test_load_movielens_rejects_unknown_items(tmp_path):
    write_movielens(tmp_path, SAMPLE + [(1, 9, 4)])
    with pytest.raises(DataError):
        load_movielens(tmp_path)


def test_user_profiles_are_numeric(tmp_path):
    write_movielens(tmp_path, SAMPLE)
    profiles = load_user_profiles(tmp_path)

    assert list(profiles.index) == [1, 2, 3]
    assert profiles["female"].tolist() == [0.0, 1.0, 0.0]
    assert profiles["age"].mean() == pytest.approx(0.0)
    assert {"occ_technician", "occ_other", "occ_writer"} <= set(profiles.columns)


def test_movielens_source_binarizes(tmp_path):
    write_movielens(tmp_path, SAMPLE)
    dataset = open_source(tmp_path).load()

    assert isinstance(open_source(tmp_path), MovieLensSource)
    assert dataset.shape == (3, 4)
    # mean rating 19/6: ratings 4 and 5 are positive
    assert dataset.ratings.positive_fraction() == pytest.approx(3 / 6)


def test_split_is_a_disjoint_cover():
    ratings = generate_synthetic(SyntheticConfig(n1=20, n2=50, m1=2, m2=5, seed=1)).ratings

    train, test = split_observed(ratings, 0.95, seed=3)

    assert abs(len(train) - round(0.95 * len(ratings))) <= 1
    assert train.omega().isdisjoint(test.omega())
    assert train.omega() | test.omega() == ratings.omega()
    again, _ = split_observed(ratings, 0.95, seed=3)
    np.testing.assert_array_equal(train.linear_index(), again.linear_index())


@pytest.mark.parametrize("fraction", [0.0, 1.0, -0.5])
def test_split_rejects_degenerate_fractions(fraction):
    with pytest.raises(ValueError):
        split_observed(BinaryRatings(2, 2, [0], [0], [1]), fraction, seed=0)


def test_implicit_feedback_groups_by_rating_count():
    # users 1..4 rated 5, 1, 9 and 3 items
    dense = np.zeros((4, 9), dtype=int)
    for user, count in enumerate([5, 1, 9, 3]):
        dense[user, :count] = 1
    ratings = BinaryRatings.from_dense(dense)

    groups = group_by_implicit_feedback(ratings, 2, Side.USER)

    np.testing.assert_array_equal(groups, [1, 0, 1, 0])
    np.testing.assert_array_equal(group_by_implicit_feedback(ratings, 1, Side.USER), 0)
    with pytest.raises(ValueError):
        group_by_implicit_feedback(ratings, 0, Side.USER)


def test_implicit_feedback_groups_are_balanced_and_monotone():
    ratings = generate_synthetic(SyntheticConfig(n1=20, n2=50, m1=2, m2=5, seed=4)).ratings
    _, item_counts = ratings.counts()

    groups = group_by_implicit_feedback(ratings, 7, Side.ITEM)

    sizes = np.bincount(groups, minlength=7)
    assert sizes.max() - sizes.min() <= 1
    for a in range(50):
        for b in range(50):
            if item_counts[a] > item_counts[b]:
                assert groups[a] >= groups[b]


def test_matrix_files_round_trip_bitwise(tmp_path):
    matrix = np.random.default_rng(0).normal(size=(3, 5))
    save_matrix(tmp_path / "m.bin", matrix)

    loaded = load_matrix(tmp_path / "m.bin")

    assert loaded.tobytes() == matrix.tobytes()
    raw = (tmp_path / "m.bin").read_bytes()
    assert raw[:4] == MAGIC and len(raw) == HEADER.size + 15 * 8


def test_matrix_file_errors(tmp_path):
    save_matrix(tmp_path / "m.bin", np.ones((2, 2)))
    raw = (tmp_path / "m.bin").read_bytes()

    (tmp_path / "magic.bin").write_bytes(b"XXXX" + raw[4:])
    with pytest.raises(ArtifactFormatError, match="magic"):
        load_matrix(tmp_path / "magic.bin")

    (tmp_path / "version.bin").write_bytes(HEADER.pack(MAGIC, 99, 2, 2) + raw[HEADER.size :])
    with pytest.raises(ArtifactFormatError, match="version"):
        load_matrix(tmp_path / "version.bin")

    (tmp_path / "short.bin").write_bytes(raw[:-3])
    with pytest.raises(ArtifactFormatError, match="truncated"):
        load_matrix(tmp_path / "short.bin")


def test_factor_checkpoint_round_trip(tmp_path):
    factors = FactorSet.random(4, 6, 2, 3, 2, 1.0, np.random.default_rng(1))
    save_factors(tmp_path / "ckpt", factors, {"lambda": 37.0})

    assert load_factors(tmp_path / "ckpt").equals(factors)
    assert read_key_values(tmp_path / "ckpt" / "checkpoint.txt")["lambda"] == "37.0"


def test_label_and_assignment_files_round_trip(tmp_path):
    labels = np.array([2, 0, 1, 1, 0])
    save_labels(tmp_path / "labels.csv", labels)

    np.testing.assert_array_equal(load_labels(tmp_path / "labels.csv"), labels)
    assert pd.read_csv(tmp_path / "labels.csv")["label"].tolist() == [3, 1, 2, 2, 1]

    # group 3 is empty on the item side and must survive the round trip
    assignment = GroupAssignment(np.array([0, 1, 1]), np.array([0, 0, 1, 2]), 2, 4)
    save_assignment(tmp_path / "groups", assignment)
    assert load_assignment(tmp_path / "groups").equals(assignment)


def test_ratings_file_round_trip(tmp_path):
    ratings = BinaryRatings(3, 4, [0, 2, 1], [3, 0, 1], [1, -1, -1])
    save_ratings(tmp_path / "r.csv", ratings)

    loaded = load_ratings(tmp_path / "r.csv", 3, 4)

    np.testing.assert_array_equal(loaded.to_dense(), ratings.to_dense())
    with pytest.raises(DataError):
        load_ratings(tmp_path / "r.csv", 2, 4)


def test_key_value_files(tmp_path):
    write_key_values(tmp_path / "kv.txt", {"a": 1, "b": "x=y"})
    (tmp_path / "kv.txt").write_text((tmp_path / "kv.txt").read_text() + "# note\n\n")

    assert read_key_values(tmp_path / "kv.txt") == {"a": "1", "b": "x=y"}
    (tmp_path / "bad.txt").write_text("novalue\n")
    with pytest.raises(DataError, match="line 1"):
        read_key_values(tmp_path / "bad.txt")


def test_bundle_round_trip(tmp_path):
    dataset = generate_synthetic(SyntheticConfig(n1=10, n2=20, m1=2, m2=2, seed=8))
    train, test = split_observed(dataset.ratings, 0.8, seed=1)
    save_bundle(tmp_path, train, test=test, synthetic=dataset)

    loaded = BundleSource(tmp_path).load()

    assert loaded.kind == "synthetic"
    np.testing.assert_array_equal(loaded.ratings.to_dense(), train.to_dense())
    np.testing.assert_array_equal(loaded.test.to_dense(), test.to_dense())
    assert loaded.truth.factors.equals(dataset.factors)
    assert loaded.truth.assignment.equals(dataset.assignment)
    assert loaded.truth.M_true.tobytes() == dataset.M_true.tobytes()


def test_open_source_rejects_unknown_directories(tmp_path):
    with pytest.raises(DataError):
        open_source(tmp_path)

import numpy as np
import pytest

from errors import NumericalError
from metrics import adjusted_mutual_information
from subspace_clustering import (
    AffinityGraph,
    ClusterLabels,
    build_affinity,
    default_mu,
    kmeans,
    normalized_laplacian,
    solve_self_expression,
    spectral_cluster,
)
from subspace_clustering.affinity import keep_top_entries
from subspace_clustering.kmeans import kmeans_inertia


def planted_subspaces(seed: int, ambient=10, dim=2, per_subspace=12, count=2):
    rng = np.random.default_rng(seed)
    columns, truth = [], []
    for label in range(count):
        basis, _ = np.linalg.qr(rng.normal(size=(ambient, dim)))
        columns.append(basis @ rng.normal(size=(dim, per_subspace)))
        truth += [label] * per_subspace
    return np.hstack(columns), np.array(truth)


def cliques(sizes) -> AffinityGraph:
    total = sum(sizes)
    W = np.zeros((total, total))  # noqa: N806
    start = 0
    for size in sizes:
        W[start : start + size, start : start + size] = 1.0
        start += size
    np.fill_diagonal(W, 0.0)
    return AffinityGraph(W)


def test_two_columns_have_closed_form_coefficients():
    x = np.array([1.0, 2.0, 2.0])
    X = np.column_stack([x, 2.0 * x])  # noqa: N806
    mu = 1.0
    norm = float(x @ x)

    expression = solve_self_expression(X, mu, solver_tol=1e-13, max_iters=20000)

    assert expression.C[1, 0] == pytest.approx(0.5 - 1.0 / (4.0 * mu * norm), abs=1e-8)
    assert expression.C[0, 1] == pytest.approx(2.0 - 1.0 / (mu * norm), abs=1e-8)
    np.testing.assert_array_equal(np.diag(expression.C), 0.0)
    assert expression.flagged.size == 0


def test_orthogonal_columns_give_zero_coefficients():
    expression = solve_self_expression(np.eye(4))

    np.testing.assert_array_equal(expression.C, 0.0)
    assert expression.mu == pytest.approx(20.0)
    assert expression.converged.all()


def test_default_mu_uses_the_weakest_best_match():
    X = np.array([[1.0, 1.0, 0.0], [0.0, 1.0, 1.0]])  # noqa: N806
    assert default_mu(X, alpha=20.0) == pytest.approx(20.0)
    assert default_mu(2.0 * X, alpha=20.0) == pytest.approx(5.0)


def test_iteration_cap_flags_columns_without_failing():
    X = np.random.default_rng(0).normal(size=(5, 8))  # noqa: N806
    expression = solve_self_expression(X, max_iters=1)

    assert expression.flagged.size > 0
    np.testing.assert_array_equal(np.diag(expression.C), 0.0)


def test_self_expression_input_checks():
    with pytest.raises(ValueError):
        solve_self_expression(np.ones((3, 1)))
    with pytest.raises(ValueError):
        solve_self_expression(np.ones((3, 3)), mu=0.0)
    with pytest.raises(NumericalError):
        solve_self_expression(np.array([[1.0, np.inf], [0.0, 1.0]]))


def test_all_zero_data_converges_trivially():
    expression = solve_self_expression(np.zeros((3, 4)), mu=1.0)
    np.testing.assert_array_equal(expression.C, 0.0)
    assert expression.converged.all()


@pytest.mark.parametrize("seed", [0, 1])
def test_planted_subspaces_are_recovered(seed):
    X, truth = planted_subspaces(seed)  # noqa: N806

    expression = solve_self_expression(X, solver_tol=1e-9, max_iters=20000)
    labels = spectral_cluster(build_affinity(expression), 2, seed=seed)

    assert adjusted_mutual_information(labels.labels, truth) == 1.0


def test_affinity_is_symmetric_with_zero_diagonal():
    C = np.array([[0.0, -2.0, 0.5], [1.0, 0.0, 0.0], [0.0, 3.0, 0.0]])  # noqa: N806
    graph = build_affinity(C)

    np.testing.assert_array_equal(graph.W, graph.W.T)
    np.testing.assert_array_equal(np.diag(graph.W), 0.0)
    assert graph.W[0, 1] == 3.0
    assert graph.W[1, 2] == 3.0


def test_keep_top_entries_keeps_q_per_column():
    magnitudes = np.array([[0.0, 5.0, 1.0], [2.0, 0.0, 4.0], [3.0, 1.0, 0.0]])
    kept = keep_top_entries(magnitudes, 1)

    np.testing.assert_array_equal(kept, [[0.0, 5.0, 0.0], [0.0, 0.0, 4.0], [3.0, 0.0, 0.0]])
    np.testing.assert_array_equal(keep_top_entries(magnitudes, 0), magnitudes)


def test_affinity_graph_rejects_asymmetric_weights():
    with pytest.raises(ValueError):
        AffinityGraph(np.array([[0.0, 1.0], [0.0, 0.0]]))
    with pytest.raises(ValueError):
        AffinityGraph(np.array([[0.0, -1.0], [-1.0, 0.0]]))


def test_disconnected_cliques_are_separated():
    graph = cliques([4, 5, 3])
    labels = spectral_cluster(graph, 3, seed=0)

    truth = np.repeat([0, 1, 2], [4, 5, 3])
    assert adjusted_mutual_information(labels.labels, truth) == 1.0
    assert labels.empty_clusters().size == 0


def test_laplacian_of_cliques_has_one_zero_eigenvalue_per_component():
    eigenvalues = np.linalg.eigvalsh(normalized_laplacian(cliques([3, 4]).W))

    assert np.sum(np.abs(eigenvalues) < 1e-10) == 2
    assert np.all(eigenvalues > -1e-10)
    assert np.all(eigenvalues < 2.0 + 1e-10)


@pytest.mark.parametrize("seed", range(5))
def test_laplacian_spectrum_lies_in_zero_two(seed):
    rng = np.random.default_rng(seed)
    W = rng.random((9, 9)) * (rng.random((9, 9)) < 0.5)  # noqa: N806
    W = W + W.T  # noqa: N806
    np.fill_diagonal(W, 0.0)

    eigenvalues = np.linalg.eigvalsh(normalized_laplacian(W))

    assert np.all(eigenvalues > -1e-10)
    assert np.all(eigenvalues < 2.0 + 1e-10)


def test_bipartite_graph_reaches_the_upper_eigenvalue():
    W = np.zeros((5, 5))  # noqa: N806
    W[:2, 2:] = 1.0
    W[2:, :2] = 1.0

    eigenvalues = np.linalg.eigvalsh(normalized_laplacian(W))

    assert eigenvalues.max() == pytest.approx(2.0, abs=1e-10)


@pytest.mark.parametrize("seed", range(3))
def test_spectral_clustering_follows_vertex_permutations(seed):
    rng = np.random.default_rng(seed)
    noise = 0.02 * rng.random((12, 12))
    W = cliques([4, 5, 3]).W + noise + noise.T  # noqa: N806
    np.fill_diagonal(W, 0.0)
    perm = rng.permutation(12)

    labels = spectral_cluster(AffinityGraph(W), 3, seed=0)
    permuted = spectral_cluster(AffinityGraph(W[np.ix_(perm, perm)]), 3, seed=0)

    assert adjusted_mutual_information(permuted.labels, labels.labels[perm]) == 1.0


def test_single_cluster_short_circuits():
    labels = spectral_cluster(cliques([2, 2]), 1, seed=0)
    np.testing.assert_array_equal(labels.labels, 0)


def test_cluster_count_must_fit_the_graph():
    with pytest.raises(ValueError):
        spectral_cluster(cliques([2]), 3, seed=0)
    with pytest.raises(ValueError):
        kmeans(np.zeros((2, 2)), 0, seed=0)


def test_kmeans_uses_every_cluster_and_is_seeded():
    points = np.random.default_rng(3).normal(size=(40, 2))

    first = kmeans(points, 5, seed=11)
    second = kmeans(points, 5, seed=11)

    np.testing.assert_array_equal(first.labels, second.labels)
    assert first.empty_clusters().size == 0


def test_kmeans_inertia_does_not_increase_with_more_iterations():
    rng = np.random.default_rng(5)
    centers = np.array([[0.0, 0.0], [4.0, 0.0], [0.0, 4.0], [4.0, 4.0]])
    points = np.vstack([center + rng.normal(size=(15, 2)) for center in centers])

    inertias = [
        kmeans_inertia(points, kmeans(points, 4, seed=2, max_iters=iters)) for iters in range(1, 6)
    ]

    assert all(later <= earlier + 1e-9 for earlier, later in zip(inertias, inertias[1:]))


def test_kmeans_with_one_cluster_per_point():
    points = np.random.default_rng(4).normal(size=(7, 3))

    labels = kmeans(points, 7, seed=0)

    assert np.unique(labels.labels).size == 7


def test_kmeans_puts_duplicate_points_together():
    rng = np.random.default_rng(6)
    base = np.vstack([center + rng.normal(size=(6, 2)) for center in ([0.0, 0.0], [5.0, 5.0])])
    points = np.vstack([base, base])

    labels = kmeans(points, 3, seed=1)

    np.testing.assert_array_equal(labels.labels[:12], labels.labels[12:])


@pytest.mark.parametrize("seed", range(3))
def test_kmeans_finds_the_best_two_way_split(seed):
    rng = np.random.default_rng(seed)
    points = np.vstack([rng.normal(size=(4, 2)), rng.normal(size=(5, 2)) + [6.0, 0.0]])

    best = np.inf
    for mask in range(1, 2 ** (len(points) - 1)):
        split = np.array([(mask >> bit) & 1 for bit in range(len(points))])
        best = min(best, kmeans_inertia(points, ClusterLabels(split, 2)))
    labels = kmeans(points, 2, seed=seed)

    assert kmeans_inertia(points, labels) == pytest.approx(best, rel=1e-12)
    truth = np.repeat([0, 1], [4, 5])
    assert adjusted_mutual_information(labels.labels, truth) == 1.0

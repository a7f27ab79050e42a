import numpy as np
from sklearn.cluster import KMeans

from settings import kmeans_max_iters
from subspace_clustering.ClusterLabels import ClusterLabels


def kmeans(
    points: np.ndarray, k: int, seed: int, max_iters: int = kmeans_max_iters
) -> ClusterLabels:
    """
    Lloyd's k-means from a single k-means++ seeding.

    scikit-learn's Lloyd solver relocates emptied clusters to the points farthest from
    their centers, so every returned label set uses all k clusters whenever the data has at
    least k distinct points.

    Parameters:
    points (np.ndarray): N x d
    k (int): number of clusters, 1 <= k <= N
    seed (int): seeds the k-means++ draw
    max_iters (int): Lloyd iteration cap
    """
    points = np.asarray(points, dtype=np.float64)
    if points.ndim == 1:
        points = points[:, None]
    if k < 1:
        raise ValueError(f"k must be at least 1, got {k}")
    if k > points.shape[0]:
        raise ValueError(f"k={k} exceeds the number of points {points.shape[0]}")

    model = KMeans(
        n_clusters=k,
        init="k-means++",
        n_init=1,
        max_iter=max_iters,
        tol=0.0,
        algorithm="lloyd",
        random_state=seed,
    )
    return ClusterLabels(model.fit_predict(points), k)


def kmeans_inertia(points: np.ndarray, labels: ClusterLabels) -> float:
    """Sum of squared distances from each point to its cluster mean."""
    points = np.asarray(points, dtype=np.float64)
    if points.ndim == 1:
        points = points[:, None]
    total = 0.0
    for cluster in range(labels.k):
        members = points[labels.labels == cluster]
        if members.size:
            total += float(np.sum((members - members.mean(axis=0)) ** 2))
    return total

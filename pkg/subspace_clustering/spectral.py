import numpy as np
import scipy.linalg
from sklearn.preprocessing import normalize

from settings import kmeans_max_iters
from subspace_clustering.affinity import AffinityGraph
from subspace_clustering.ClusterLabels import ClusterLabels
from subspace_clustering.kmeans import kmeans


def normalized_laplacian(W: np.ndarray) -> np.ndarray:  # noqa: N803
    """
    L = I - D^{-1/2} W D^{-1/2}; isolated vertices get a D^{-1/2} entry of 0.
    """
    degree = W.sum(axis=1)
    inv_sqrt = np.zeros_like(degree)
    connected = degree > 0.0
    inv_sqrt[connected] = 1.0 / np.sqrt(degree[connected])
    laplacian = -(inv_sqrt[:, None] * W * inv_sqrt[None, :])
    laplacian[np.diag_indices_from(laplacian)] += 1.0
    # symmetric up to rounding; force exact symmetry for eigh
    return 0.5 * (laplacian + laplacian.T)


def spectral_embedding(graph: AffinityGraph, k: int) -> np.ndarray:
    """Row-normalized eigenvectors of the k smallest Laplacian eigenvalues, N x k."""
    laplacian = normalized_laplacian(graph.W)
    _, vectors = scipy.linalg.eigh(laplacian, subset_by_index=[0, k - 1])
    return normalize(vectors, norm="l2", axis=1)


def spectral_cluster(
    graph: AffinityGraph, k: int, seed: int, max_iters: int = kmeans_max_iters
) -> ClusterLabels:
    """
    Normalized spectral clustering: bottom-k eigenvectors of the symmetric normalized
    Laplacian, rows scaled to unit length, then k-means.
    """
    if k < 1:
        raise ValueError(f"k must be at least 1, got {k}")
    if k > graph.size:
        raise ValueError(f"k={k} exceeds the number of vertices {graph.size}")
    if k == 1:
        return ClusterLabels(np.zeros(graph.size, dtype=np.int64), 1)
    return kmeans(spectral_embedding(graph, k), k, seed, max_iters)

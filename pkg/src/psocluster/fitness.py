"""Nearest-centroid assignment and clustering objectives.

``quantization_error`` is the PSO fitness: the per-cluster mean
point-to-centroid distance, averaged over all K clusters. Clusters with
no members add nothing to the sum but still count in the divisor.
"""

import numpy as np

from .core import as_points, check_centroids


def _pair(X, centroids):
    X = as_points(X)
    centroids = check_centroids(centroids, X.shape[1])
    return X, centroids


def distance_matrix(X, centroids) -> np.ndarray:
    """Euclidean distances between every point and every centroid.

    Parameters
    ----------
    X : array-like of shape (n_samples, n_features)
    centroids : array-like of shape (n_clusters, n_features)

    Returns
    -------
    ndarray of shape (n_samples, n_clusters)
    """
    X, centroids = _pair(X, centroids)
    diff = X[:, np.newaxis, :] - centroids[np.newaxis, :, :]
    return np.sqrt(np.einsum("nkd,nkd->nk", diff, diff))


def assign_points(X, centroids) -> np.ndarray:
    """Index of the nearest centroid for each point; ties go to the lowest index."""
    # np.argmin returns the first minimum, which is the tie-break we want
    return np.argmin(distance_matrix(X, centroids), axis=1).astype(np.intp)


def _check_labels(labels, n_samples, n_clusters):
    labels = np.asarray(labels)
    if labels.shape != (n_samples,):
        raise ValueError(f"labels must have shape ({n_samples},), got {labels.shape}")
    if not np.issubdtype(labels.dtype, np.integer):
        raise ValueError("labels must be integers")
    if labels.size and (labels.min() < 0 or labels.max() >= n_clusters):
        raise ValueError(f"labels must lie in [0, {n_clusters})")
    return labels


def quantization_error(X, centroids, labels) -> float:
    """Quantization error J_e of a clustering.

    Parameters
    ----------
    X : array-like of shape (n_samples, n_features)
    centroids : array-like of shape (n_clusters, n_features)
    labels : array-like of shape (n_samples,)
        Cluster index of each point, usually from :func:`assign_points`.

    Returns
    -------
    float
        ``sum_j mean_{p in C_j} ||x_p - m_j|| / n_clusters`` where empty
        clusters contribute zero.
    """
    X, centroids = _pair(X, centroids)
    n_clusters = centroids.shape[0]
    labels = _check_labels(labels, X.shape[0], n_clusters)
    dist = np.sqrt(np.sum((X - centroids[labels]) ** 2, axis=1))
    counts = np.bincount(labels, minlength=n_clusters)
    sums = np.bincount(labels, weights=dist, minlength=n_clusters)
    occupied = counts > 0
    return float(np.sum(sums[occupied] / counts[occupied]) / n_clusters)


def sse(X, centroids, labels) -> float:
    """Sum of squared distances from each point to its assigned centroid."""
    X, centroids = _pair(X, centroids)
    labels = _check_labels(labels, X.shape[0], centroids.shape[0])
    return float(np.sum((X - centroids[labels]) ** 2))


def evaluate(X, centroids):
    """Assign points to ``centroids`` and return ``(labels, J_e)``."""
    labels = assign_points(X, centroids)
    return labels, quantization_error(X, centroids, labels)

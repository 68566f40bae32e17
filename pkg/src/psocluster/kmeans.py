"""Lloyd's K-Means, used as a baseline and as the hybrid PSO seed."""

from __future__ import annotations

import time

import numpy as np

from .core import (
    DataSet,
    IterationRecord,
    ParticleState,
    RunConfig,
    RunReport,
    Swarm,
    as_points,
    check_centroids,
    fingerprint,
    validate_config,
)
from .fitness import assign_points, quantization_error, sse
from .rng import KMEANS_STREAM, RngStream


def _points(data) -> np.ndarray:
    return data.points if isinstance(data, DataSet) else as_points(data)


def kmeans_init(data, k: int, rng: RngStream) -> np.ndarray:
    """Forgy initialisation: ``k`` distinct data points chosen uniformly at random."""
    X = _points(data)
    if k < 1 or k > X.shape[0]:
        raise ValueError(f"k must be in [1, {X.shape[0]}], got {k}")
    return X[rng.sample(X.shape[0], k)].copy()


def kmeans_step(data, centroids, rng: RngStream):
    """One Lloyd iteration.

    Returns ``(new_centroids, labels, sse)`` where ``labels`` is the assignment
    to the *input* centroids and ``sse`` is measured against the moved
    centroids. A centroid whose cluster is empty is moved to a random data
    point instead.
    """
    X = _points(data)
    centroids = check_centroids(centroids, X.shape[1])
    k = centroids.shape[0]
    labels = assign_points(X, centroids)
    counts = np.bincount(labels, minlength=k)
    new = centroids.copy()
    for j in range(k):
        if counts[j]:
            new[j] = X[labels == j].mean(axis=0)
        else:
            new[j] = X[rng.randbelow(X.shape[0])]
    return new, labels, sse(X, new, labels)


def kmeans_run(data, k: int, rng: RngStream, max_iters: int = 100, tol: float = 0.0):
    """Iterate :func:`kmeans_step` from a Forgy start until converged.

    Converged means, for a step with no empty cluster, either the assignment
    matched the previous step's or the SSE moved by at most ``tol``.

    Returns
    -------
    centroids : ndarray of shape (k, n_features)
    labels : ndarray of shape (n_samples,)
        Assignment to the returned centroids.
    report : RunReport
        One record per step with SSE and J_e; ``report.converged`` tells
        whether the loop stopped before ``max_iters`` ran out.
    """
    X = _points(data)
    if max_iters < 1:
        raise ValueError("max_iters must be positive")
    if tol < 0:
        raise ValueError("tol must be non-negative")
    start = time.perf_counter()
    centroids = kmeans_init(X, k, rng)
    records = []
    prev_labels = None
    prev_sse = None
    converged = False
    for t in range(max_iters):
        new, labels, cur_sse = kmeans_step(X, centroids, rng)
        reseeded = bool(np.any(np.bincount(labels, minlength=k) == 0))
        if prev_sse is None:
            prev_sse = sse(X, centroids, labels)
        j_e = quantization_error(X, new, labels)
        records.append(
            IterationRecord(
                iteration=t,
                global_best_fitness=j_e,
                particle_fitness=[j_e],
                global_best_position=new.copy(),
                sse=cur_sse,
            )
        )
        stable = prev_labels is not None and np.array_equal(labels, prev_labels)
        flat = abs(prev_sse - cur_sse) <= tol
        centroids, prev_labels, prev_sse = new, labels, cur_sse
        if not reseeded and (stable or flat):
            converged = True
            break
    labels = assign_points(X, centroids)
    report = RunReport(
        algorithm="kmeans",
        seed=rng.seed,
        config=RunConfig(centroids=k, dimensions=X.shape[1], algorithm="kmeans",
                         rng_seed=rng.seed, kmeans_max_iters=max_iters, kmeans_tol=tol),
        iterations=records,
        final_centroids=centroids.copy(),
        final_labels=labels,
        final_fitness=quantization_error(X, centroids, labels),
        converged=converged,
        data_fingerprint=fingerprint(X),
        wall_time=time.perf_counter() - start,
    )
    return centroids, labels, report


def kmeans_report(data, cfg: RunConfig, callback=None) -> RunReport:
    """Run K-Means with the settings in ``cfg`` and return the run report.

    ``callback``, if given, is replayed once per recorded step with a
    one-particle swarm holding that step's centroids.
    """
    X = _points(data)
    validate_config(cfg, X)
    centroids, labels, report = kmeans_run(
        X, cfg.centroids, RngStream(cfg.rng_seed, KMEANS_STREAM),
        max_iters=cfg.kmeans_max_iters, tol=cfg.kmeans_tol,
    )
    report.config = cfg
    if callback is not None:
        for rec in report.iterations:
            pos = rec.global_best_position
            p = ParticleState(position=pos, velocity=np.zeros_like(pos), best_position=pos)
            callback(rec.iteration, Swarm(particles=[p], global_best_position=pos),
                     assign_points(X, pos))
    return report

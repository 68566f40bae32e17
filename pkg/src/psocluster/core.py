"""Shared domain types for PSO clustering.

Centroid sets are plain ``(K, d)`` float arrays and assignments are
``(N,)`` integer label arrays, following the usual scikit-learn
conventions (``cluster_centers_``, ``labels_``). The dataclasses below
carry the state that does not fit in a single array.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, field, fields
from typing import Optional

import numpy as np

ALGORITHMS = ("pso", "kmeans", "hybrid")
R_SAMPLING_MODES = ("component", "scalar")


class ConfigError(ValueError):
    """Invalid run configuration. ``field`` names the offending setting."""

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


def as_points(X, name="X") -> np.ndarray:
    """Return ``X`` as a finite 2-D float64 array with at least one row and column."""
    arr = np.asarray(X, dtype=np.float64)
    if arr.ndim != 2:
        raise ValueError(f"{name} must be 2-dimensional, got shape {arr.shape}")
    if arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ValueError(f"{name} must have at least one row and one column, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains NaN or infinite values")
    return arr


@dataclass(frozen=True, eq=False)
class DataSet:
    """N points in d-dimensional space, optionally with column names."""

    points: np.ndarray
    feature_names: Optional[tuple] = None

    def __post_init__(self):
        pts = as_points(self.points, "points")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)
        if self.feature_names is not None:
            names = tuple(str(n) for n in self.feature_names)
            if len(names) != pts.shape[1]:
                raise ValueError(
                    f"got {len(names)} feature names for {pts.shape[1]} columns"
                )
            object.__setattr__(self, "feature_names", names)

    @property
    def n_samples(self) -> int:
        return self.points.shape[0]

    @property
    def n_features(self) -> int:
        return self.points.shape[1]

    def __eq__(self, other):
        if not isinstance(other, DataSet):
            return NotImplemented
        return (
            self.feature_names == other.feature_names
            and self.points.shape == other.points.shape
            and bool(np.array_equal(self.points, other.points))
        )

    __hash__ = None


@dataclass(frozen=True, eq=False)
class ParticleState:
    """One candidate solution: K centroids, their velocity and the best position seen.

    ``best_fitness`` is ``inf`` until the particle has been evaluated once.
    ``fitness`` holds the most recent evaluation of ``position`` (``inf`` if none).
    """

    position: np.ndarray
    velocity: np.ndarray
    best_position: np.ndarray
    best_fitness: float = math.inf
    fitness: float = math.inf

    def __post_init__(self):
        shape = np.shape(self.position)
        if len(shape) != 2:
            raise ValueError(f"position must be a (K, d) array, got shape {shape}")
        for name in ("velocity", "best_position"):
            if np.shape(getattr(self, name)) != shape:
                raise ValueError(
                    f"{name} shape {np.shape(getattr(self, name))} != position shape {shape}"
                )

    @property
    def shape(self) -> tuple:
        return np.shape(self.position)


@dataclass(frozen=True, eq=False)
class Swarm:
    """The particle population plus the swarm-wide best (gbest) memory."""

    particles: tuple
    global_best_position: np.ndarray
    global_best_fitness: float = math.inf

    def __post_init__(self):
        parts = tuple(self.particles)
        if not parts:
            raise ValueError("a swarm needs at least one particle")
        shape = parts[0].shape
        for i, p in enumerate(parts):
            if p.shape != shape:
                raise ValueError(f"particle {i} has shape {p.shape}, expected {shape}")
        if np.shape(self.global_best_position) != shape:
            raise ValueError("global_best_position shape does not match the particles")
        object.__setattr__(self, "particles", parts)

    @property
    def n_particles(self) -> int:
        return len(self.particles)


@dataclass
class RunConfig:
    """All tunables of a clustering run. Defaults follow the reference setup."""

    centroids: int = 2
    dimensions: int = 2
    particles: int = 2
    iterations: int = 50
    w: float = 0.72
    c1: float = 1.49
    c2: float = 1.49
    algorithm: str = "pso"
    rng_seed: int = 0
    velocity_epsilon: Optional[float] = None
    manual_init: Optional[np.ndarray] = None
    r_sampling: str = "component"
    frames: Optional[str] = None
    kmeans_max_iters: int = 100
    kmeans_tol: float = 0.0

    def to_dict(self) -> dict:
        out = {}
        for f in fields(self):
            value = getattr(self, f.name)
            if isinstance(value, np.ndarray):
                value = value.tolist()
            out[f.name] = value
        return out


def _is_int(value) -> bool:
    return isinstance(value, (int, np.integer)) and not isinstance(value, bool)


def validate_config(cfg: RunConfig, data) -> RunConfig:
    """Check ``cfg`` against itself and against ``data``; return it unchanged.

    ``data`` may be a :class:`DataSet` or a 2-D array. Raises :class:`ConfigError`
    naming the first offending field.
    """
    points = data.points if isinstance(data, DataSet) else as_points(data)
    for name in ("centroids", "dimensions", "particles", "iterations", "kmeans_max_iters"):
        value = getattr(cfg, name)
        if not _is_int(value) or value < 1:
            raise ConfigError(name, f"must be a positive integer, got {value!r}")
    for name in ("w", "c1", "c2"):
        value = getattr(cfg, name)
        if not isinstance(value, (int, float, np.floating)) or not math.isfinite(value):
            raise ConfigError(name, f"must be a finite real, got {value!r}")
    if cfg.algorithm not in ALGORITHMS:
        raise ConfigError("algorithm", f"must be one of {ALGORITHMS}, got {cfg.algorithm!r}")
    if cfg.r_sampling not in R_SAMPLING_MODES:
        raise ConfigError(
            "r_sampling", f"must be one of {R_SAMPLING_MODES}, got {cfg.r_sampling!r}"
        )
    if not _is_int(cfg.rng_seed) or not 0 <= cfg.rng_seed < 2**64:
        raise ConfigError("rng_seed", f"must be an unsigned 64-bit integer, got {cfg.rng_seed!r}")
    if cfg.velocity_epsilon is not None and not (
        math.isfinite(cfg.velocity_epsilon) and cfg.velocity_epsilon >= 0
    ):
        raise ConfigError("velocity_epsilon", "must be a non-negative finite real")
    if not math.isfinite(cfg.kmeans_tol) or cfg.kmeans_tol < 0:
        raise ConfigError("kmeans_tol", "must be a non-negative finite real")
    if points.shape[1] != cfg.dimensions:
        raise ConfigError(
            "dimensions",
            f"dimensions mismatch: config says {cfg.dimensions}, data has {points.shape[1]}",
        )
    if cfg.algorithm in ("kmeans", "hybrid") and cfg.centroids > points.shape[0]:
        raise ConfigError(
            "centroids", f"k-means needs centroids <= samples ({cfg.centroids} > {points.shape[0]})"
        )
    if cfg.manual_init is not None:
        init = np.asarray(cfg.manual_init, dtype=np.float64)
        if init.shape != (cfg.centroids, cfg.dimensions):
            raise ConfigError(
                "manual_init",
                f"manual_init shape {init.shape} != ({cfg.centroids}, {cfg.dimensions})",
            )
        if not np.all(np.isfinite(init)):
            raise ConfigError("manual_init", "manual_init contains non-finite values")
    return cfg


@dataclass
class IterationRecord:
    """Telemetry for one iteration.

    For PSO runs ``particle_fitness`` is the fitness of every particle's
    evaluated position; for K-Means runs it holds the single J_e of the
    current centroids and ``sse`` is set.
    """

    iteration: int
    global_best_fitness: float
    particle_fitness: list
    global_best_position: np.ndarray
    sse: Optional[float] = None


@dataclass
class RunReport:
    algorithm: str
    seed: int
    config: RunConfig
    iterations: list = field(default_factory=list)
    final_centroids: Optional[np.ndarray] = None
    final_labels: Optional[np.ndarray] = None
    final_fitness: float = math.nan
    kmeans_seed: Optional[np.ndarray] = None
    converged: Optional[bool] = None
    data_fingerprint: str = ""
    wall_time: float = 0.0

    @property
    def fitness_history(self) -> list:
        return [rec.global_best_fitness for rec in self.iterations]

    @property
    def n_iter(self) -> int:
        return len(self.iterations)


def fingerprint(points: np.ndarray) -> str:
    """Stable hash of a data matrix (shape and float64 bytes)."""
    arr = np.ascontiguousarray(points, dtype="<f8")
    h = hashlib.sha256()
    h.update(repr(arr.shape).encode())
    h.update(arr.tobytes())
    return h.hexdigest()[:16]


def check_centroids(centroids, n_features: Optional[int] = None, name="centroids") -> np.ndarray:
    arr = as_points(centroids, name)
    if n_features is not None and arr.shape[1] != n_features:
        raise ValueError(
            f"dimension mismatch: {name} have {arr.shape[1]} columns, data has {n_features}"
        )
    return arr

"""Particle swarm optimisation for data clustering, with a K-Means baseline."""

from .core import (
    ConfigError,
    DataSet,
    IterationRecord,
    ParticleState,
    RunConfig,
    RunReport,
    Swarm,
    validate_config,
)
from .datasets import builtin_iris, load_csv, subset_dims, write_csv
from .engine import hybrid_run, pso_run, run
from .estimators import LloydKMeans, PSOClustering
from .fitness import assign_points, distance_matrix, quantization_error, sse
from .kmeans import kmeans_run
from .report import compare_runs, read_report, write_report
from .rng import RngStream

__version__ = "0.1.0"

__all__ = [
    "ConfigError",
    "DataSet",
    "IterationRecord",
    "LloydKMeans",
    "PSOClustering",
    "ParticleState",
    "RngStream",
    "RunConfig",
    "RunReport",
    "Swarm",
    "assign_points",
    "builtin_iris",
    "compare_runs",
    "distance_matrix",
    "hybrid_run",
    "kmeans_run",
    "load_csv",
    "pso_run",
    "quantization_error",
    "read_report",
    "run",
    "sse",
    "subset_dims",
    "validate_config",
    "write_csv",
    "write_report",
]

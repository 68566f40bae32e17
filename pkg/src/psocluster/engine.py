"""gbest particle swarm optimisation over centroid sets.

Each particle encodes a full ``(K, d)`` set of centroids. One iteration
evaluates every particle (assign points, compute J_e), refreshes the
personal and global bests, then moves every particle:

    v <- w * v + c1 * r1 * (y_i - x) + c2 * r2 * (y_hat - x)
    x <- x + v

Particles are always processed in ascending index order and all random
draws come from a single :class:`~psocluster.rng.RngStream`, so a run is a
pure function of (data, config).
"""

from __future__ import annotations

import logging
import time
from dataclasses import replace
from typing import Callable, Optional

import numpy as np

from .core import (
    DataSet,
    IterationRecord,
    ParticleState,
    RunConfig,
    RunReport,
    Swarm,
    as_points,
    fingerprint,
    validate_config,
)
from .fitness import assign_points, evaluate, quantization_error
from .rng import KMEANS_STREAM, PSO_STREAM, RngStream

logger = logging.getLogger(__name__)

# called after every iteration with (iteration, swarm, global-best labels)
IterationCallback = Callable[[int, Swarm, np.ndarray], None]


class DivergenceError(FloatingPointError):
    """A velocity update produced a non-finite value."""


def _points(data) -> np.ndarray:
    return data.points if isinstance(data, DataSet) else as_points(data)


def init_swarm(
    cfg: RunConfig,
    data,
    rng: RngStream,
    seed_particle: Optional[np.ndarray] = None,
) -> Swarm:
    """Create ``cfg.particles`` particles with centroids drawn inside the data's bounding box.

    Every particle consumes one ``(K, d)`` block of uniform draws, in particle
    order, whether or not its position is later overridden. ``cfg.manual_init``
    replaces particle 0's position; ``seed_particle`` (hybrid mode) does too and
    wins over ``manual_init``. Velocities start at zero and bests are unset.
    """
    X = _points(data)
    k, d = cfg.centroids, X.shape[1]
    lo, hi = X.min(axis=0), X.max(axis=0)
    positions = [lo + (hi - lo) * rng.uniform((k, d)) for _ in range(cfg.particles)]
    if cfg.manual_init is not None:
        init = np.asarray(cfg.manual_init, dtype=np.float64)
        if init.shape != (k, d):
            raise ValueError(f"manual_init shape {init.shape} != ({k}, {d})")
        positions[0] = init.copy()
    if seed_particle is not None:
        seed = np.asarray(seed_particle, dtype=np.float64)
        if seed.shape != (k, d):
            raise ValueError(f"seed_particle shape {seed.shape} != ({k}, {d})")
        positions[0] = seed.copy()
    particles = [
        ParticleState(position=x, velocity=np.zeros((k, d)), best_position=x.copy())
        for x in positions
    ]
    return Swarm(particles=particles, global_best_position=positions[0].copy())


def velocity_update(
    p: ParticleState, gbest: np.ndarray, cfg: RunConfig, rng: RngStream
) -> np.ndarray:
    """New velocity for one particle.

    With ``cfg.r_sampling == "component"`` r1 and r2 are independent ``(K, d)``
    uniform blocks (r1 drawn first); with ``"scalar"`` each is a single draw
    shared by every component.
    """
    shape = p.shape
    if cfg.r_sampling == "component":
        r1 = rng.uniform(shape)
        r2 = rng.uniform(shape)
    elif cfg.r_sampling == "scalar":
        r1 = rng.uniform()
        r2 = rng.uniform()
    else:
        raise ValueError(f"unknown r_sampling {cfg.r_sampling!r}")
    with np.errstate(over="ignore", invalid="ignore"):
        inertia = cfg.w * p.velocity
        cognitive = cfg.c1 * r1 * (p.best_position - p.position)
        social = cfg.c2 * r2 * (gbest - p.position)
        v = inertia + cognitive + social
    if not np.all(np.isfinite(v)):
        raise DivergenceError("velocity became non-finite; check w, c1 and c2")
    return v


def position_update(p: ParticleState, v_new: np.ndarray) -> np.ndarray:
    if np.shape(v_new) != p.shape:
        raise ValueError(f"velocity shape {np.shape(v_new)} != position shape {p.shape}")
    return p.position + v_new


def update_personal_best(p: ParticleState, new_fitness: float) -> ParticleState:
    """Record ``new_fitness`` for the current position; keep the old best unless strictly beaten."""
    if new_fitness < p.best_fitness:
        return replace(
            p, best_position=p.position.copy(), best_fitness=new_fitness, fitness=new_fitness
        )
    return replace(p, fitness=new_fitness)


def update_global_best(s: Swarm) -> Swarm:
    """Set gbest to the best personal best; the lowest particle index wins ties."""
    bests = [p.best_fitness for p in s.particles]
    idx = int(np.argmin(bests))
    return replace(
        s,
        global_best_position=s.particles[idx].best_position.copy(),
        global_best_fitness=bests[idx],
    )


def pso_step(s: Swarm, data, cfg: RunConfig, rng: RngStream, iteration: int = 0):
    """Run one full iteration and return ``(new_swarm, IterationRecord)``.

    Order: evaluate every particle, update personal bests, update gbest,
    then update velocity and position of every particle.
    """
    X = _points(data)
    particles = []
    fitnesses = []
    for p in s.particles:
        _, f = evaluate(X, p.position)
        fitnesses.append(f)
        particles.append(update_personal_best(p, f))
    s = update_global_best(replace(s, particles=particles))
    record = IterationRecord(
        iteration=iteration,
        global_best_fitness=s.global_best_fitness,
        particle_fitness=fitnesses,
        global_best_position=s.global_best_position.copy(),
    )
    moved = []
    for p in s.particles:
        v = velocity_update(p, s.global_best_position, cfg, rng)
        moved.append(replace(p, position=position_update(p, v), velocity=v))
    return replace(s, particles=moved), record


def max_speed(s: Swarm) -> float:
    return max(float(np.max(np.abs(p.velocity))) for p in s.particles)


def _swarm_loop(
    X: np.ndarray,
    cfg: RunConfig,
    swarm: Swarm,
    rng: RngStream,
    callback: Optional[IterationCallback],
) -> tuple:
    records = []
    for t in range(cfg.iterations):
        swarm, record = pso_step(swarm, X, cfg, rng, iteration=t)
        records.append(record)
        if callback is not None:
            callback(t, swarm, assign_points(X, swarm.global_best_position))
        if cfg.velocity_epsilon is not None and max_speed(swarm) < cfg.velocity_epsilon:
            logger.info("velocities below %g after iteration %d; stopping", cfg.velocity_epsilon, t)
            break
    return swarm, records


def _finish(report: RunReport, X: np.ndarray, centroids: np.ndarray) -> RunReport:
    report.final_centroids = np.array(centroids, dtype=np.float64)
    report.final_labels = assign_points(X, centroids)
    report.final_fitness = quantization_error(X, centroids, report.final_labels)
    return report


def pso_run(
    data,
    cfg: RunConfig,
    callback: Optional[IterationCallback] = None,
    seed_particle: Optional[np.ndarray] = None,
) -> RunReport:
    """Run gbest PSO clustering for ``cfg.iterations`` iterations.

    Stops early once the largest absolute velocity component drops below
    ``cfg.velocity_epsilon`` (when set). The final centroids are the swarm's
    global best.
    """
    X = _points(data)
    validate_config(cfg, X)
    start = time.perf_counter()
    rng = RngStream(cfg.rng_seed, PSO_STREAM)
    swarm = init_swarm(cfg, X, rng, seed_particle=seed_particle)
    swarm, records = _swarm_loop(X, cfg, swarm, rng, callback)
    report = RunReport(
        algorithm=cfg.algorithm,
        seed=cfg.rng_seed,
        config=cfg,
        iterations=records,
        data_fingerprint=fingerprint(X),
    )
    _finish(report, X, swarm.global_best_position)
    report.wall_time = time.perf_counter() - start
    return report


def hybrid_run(data, cfg: RunConfig, callback: Optional[IterationCallback] = None) -> RunReport:
    """K-Means to convergence, then PSO with particle 0 seeded by its centroids."""
    from .kmeans import kmeans_run

    X = _points(data)
    validate_config(cfg, X)
    start = time.perf_counter()
    seed_centroids, _, _ = kmeans_run(
        X,
        cfg.centroids,
        RngStream(cfg.rng_seed, KMEANS_STREAM),
        max_iters=cfg.kmeans_max_iters,
        tol=cfg.kmeans_tol,
    )
    report = pso_run(X, cfg, callback=callback, seed_particle=seed_centroids)
    report.kmeans_seed = seed_centroids
    report.wall_time = time.perf_counter() - start
    return report


def run(data, cfg: RunConfig, callback: Optional[IterationCallback] = None) -> RunReport:
    """Dispatch on ``cfg.algorithm``."""
    if cfg.algorithm == "pso":
        return pso_run(data, cfg, callback)
    if cfg.algorithm == "hybrid":
        return hybrid_run(data, cfg, callback)
    if cfg.algorithm == "kmeans":
        from .kmeans import kmeans_report

        return kmeans_report(data, cfg, callback)
    raise ValueError(f"unknown algorithm {cfg.algorithm!r}")


__all__ = [
    "DivergenceError",
    "init_swarm",
    "velocity_update",
    "position_update",
    "update_personal_best",
    "update_global_best",
    "pso_step",
    "pso_run",
    "hybrid_run",
    "run",
    "max_speed",
]

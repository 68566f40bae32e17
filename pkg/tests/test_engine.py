import math
from dataclasses import replace

import numpy as np
import pytest

import oracles
from psocluster.core import ParticleState, RunConfig, Swarm
from psocluster.engine import (
    DivergenceError,
    hybrid_run,
    init_swarm,
    position_update,
    pso_run,
    pso_step,
    update_global_best,
    update_personal_best,
    velocity_update,
)
from psocluster.fitness import assign_points, quantization_error
from psocluster.kmeans import kmeans_run
from psocluster.rng import KMEANS_STREAM, RngStream


def particle(x, v=None, y=None, best=math.inf):
    x = np.asarray(x, dtype=float)
    return ParticleState(
        position=x,
        velocity=np.zeros_like(x) if v is None else np.asarray(v, dtype=float),
        best_position=x.copy() if y is None else np.asarray(y, dtype=float),
        best_fitness=best,
    )


# -- initialisation ---------------------------------------------------------

def test_init_swarm_inside_bounding_box(iris_petal):
    X = iris_petal.points
    s = init_swarm(RunConfig(), iris_petal, RngStream(0))
    assert s.n_particles == 2
    lo, hi = X.min(axis=0), X.max(axis=0)
    for p in s.particles:
        assert p.position.shape == (2, 2)
        assert np.all(p.position >= lo) and np.all(p.position <= hi)
        assert np.all(p.velocity == 0)
        assert p.best_fitness == math.inf
    assert s.global_best_fitness == math.inf


def test_init_swarm_seed_particle_replaces_particle_zero(iris_petal):
    seed = np.array([[1.0, 0.2], [5.0, 1.8]])
    manual = np.array([[2.0, 2.0], [3.0, 3.0]])
    plain = init_swarm(RunConfig(particles=3), iris_petal, RngStream(4))
    s = init_swarm(RunConfig(particles=3, manual_init=manual), iris_petal, RngStream(4),
                   seed_particle=seed)
    assert np.array_equal(s.particles[0].position, seed)
    for a, b in zip(s.particles[1:], plain.particles[1:]):
        assert np.array_equal(a.position, b.position)


def test_init_swarm_manual_init(iris_petal):
    manual = np.array([[2.0, 2.0], [3.0, 3.0]])
    s = init_swarm(RunConfig(manual_init=manual), iris_petal, RngStream(4))
    assert np.array_equal(s.particles[0].position, manual)


def test_init_swarm_seed_shape_checked(iris_petal):
    with pytest.raises(ValueError, match="seed_particle shape"):
        init_swarm(RunConfig(), iris_petal, RngStream(0), seed_particle=np.zeros((3, 2)))


def test_init_swarm_replay(iris_petal):
    a = init_swarm(RunConfig(particles=4), iris_petal, RngStream(99))
    b = init_swarm(RunConfig(particles=4), iris_petal, RngStream(99))
    for p, q in zip(a.particles, b.particles):
        assert p.position.tobytes() == q.position.tobytes()


# -- velocity / position ----------------------------------------------------

def test_velocity_zero_coefficients(constant_rng):
    p = particle([[1.0, 2.0]], v=[[3.0, -1.0]], y=[[0.0, 0.0]])
    v = velocity_update(p, np.array([[5.0, 5.0]]), RunConfig(w=0, c1=0, c2=0), constant_rng(0.7))
    assert np.all(v == 0)


def test_velocity_inertia_only_when_at_bests(constant_rng):
    x = np.array([[1.0, 2.0], [3.0, 4.0]])
    p = particle(x, v=[[0.5, -0.5], [1.0, 2.0]], y=x)
    v = velocity_update(p, x.copy(), RunConfig(), constant_rng(0.3))
    np.testing.assert_array_equal(v, 0.72 * p.velocity)


def test_velocity_hand_evaluation(constant_rng):
    p = particle([[0.0]], v=[[1.0]], y=[[1.0]])
    v = velocity_update(p, np.array([[2.0]]), RunConfig(), constant_rng(0.5))
    assert v[0, 0] == pytest.approx(2.955, abs=1e-12)


def test_velocity_matches_oracle_with_drawn_r(rng):
    x, v, y, g = (rng.normal(size=(3, 2)) for _ in range(4))
    p = particle(x, v=v, y=y)
    cfg = RunConfig(w=0.6, c1=1.2, c2=1.7)
    stream = RngStream(21)
    probe = stream.copy()
    r1, r2 = probe.uniform((3, 2)), probe.uniform((3, 2))
    got = velocity_update(p, g, cfg, stream)
    expected = oracles.velocity(v.tolist(), x.tolist(), y.tolist(), g.tolist(),
                                0.6, 1.2, 1.7, r1.tolist(), r2.tolist())
    np.testing.assert_allclose(got, expected, rtol=1e-14, atol=1e-14)


def test_velocity_scalar_mode_uses_two_draws(rng):
    x, v, y, g = (rng.normal(size=(2, 2)) for _ in range(4))
    p = particle(x, v=v, y=y)
    stream = RngStream(8)
    probe = stream.copy()
    r1, r2 = probe.uniform(), probe.uniform()
    got = velocity_update(p, g, RunConfig(r_sampling="scalar"), stream)
    expected = 0.72 * v + 1.49 * r1 * (y - x) + 1.49 * r2 * (g - x)
    np.testing.assert_allclose(got, expected, rtol=1e-14)
    assert stream.draws == 2


def test_velocity_divergence_raises(constant_rng):
    p = particle([[0.0]], v=[[1e308]], y=[[0.0]])
    with pytest.raises(DivergenceError):
        velocity_update(p, np.array([[0.0]]), RunConfig(w=10.0), constant_rng(0.5))


def test_position_update():
    p = particle([[0.0, 0.0]])
    assert np.array_equal(position_update(p, np.zeros((1, 2))), p.position)
    assert position_update(p, np.array([[2.955, 0.0]])).tolist() == [[2.955, 0.0]]


def test_position_update_elementwise(rng):
    x, v = rng.normal(size=(4, 3)), rng.normal(size=(4, 3))
    got = position_update(particle(x), v)
    expected = [[x[i][j] + v[i][j] for j in range(3)] for i in range(4)]
    assert got.tolist() == expected


def test_position_update_shape_checked():
    with pytest.raises(ValueError):
        position_update(particle([[0.0, 0.0]]), np.zeros((2, 2)))


# -- bests --------------------------------------------------------------------

def test_personal_best_first_evaluation():
    p = update_personal_best(particle([[1.0]]), 2.0)
    assert p.best_fitness == 2.0


def test_personal_best_tie_keeps_old_position():
    p = particle([[5.0]], y=[[1.0]], best=1.0)
    q = update_personal_best(p, 1.0)
    assert q.best_fitness == 1.0
    assert q.best_position.tolist() == [[1.0]]
    assert q.fitness == 1.0


def test_personal_best_strict_improvement():
    p = particle([[5.0]], y=[[1.0]], best=1.0)
    q = update_personal_best(p, 0.5)
    assert q.best_fitness == 0.5
    assert q.best_position.tolist() == [[5.0]]


def _swarm(bests):
    parts = [particle([[float(i)]], best=b) for i, b in enumerate(bests)]
    return Swarm(particles=parts, global_best_position=np.zeros((1, 1)))


def test_global_best_minimum():
    s = update_global_best(_swarm([3.0, 2.0]))
    assert s.global_best_fitness == 2.0
    assert s.global_best_position.tolist() == [[1.0]]


def test_global_best_tie_lowest_index():
    s = update_global_best(_swarm([2.0, 2.0]))
    assert s.global_best_position.tolist() == [[0.0]]


def test_global_best_matches_exhaustive_min(rng):
    for _ in range(20):
        bests = rng.uniform(0, 10, size=int(rng.integers(1, 9))).tolist()
        s = update_global_best(_swarm(bests))
        idx = min(range(len(bests)), key=lambda i: (bests[i], i))
        assert s.global_best_fitness == bests[idx]
        assert s.global_best_position.tolist() == [[float(idx)]]


# -- steps and runs -----------------------------------------------------------

def test_step_fixed_point():
    X = np.array([[0.0], [1.0], [10.0], [11.0]])
    opt = np.array([[0.5], [10.5]])
    f = quantization_error(X, opt, assign_points(X, opt))
    parts = [particle(opt, y=opt, best=f) for _ in range(3)]
    s = Swarm(particles=parts, global_best_position=opt.copy(), global_best_fitness=f)
    cfg = RunConfig(centroids=2, dimensions=1, particles=3)
    new, rec = pso_step(s, X, cfg, RngStream(0))
    for p in new.particles:
        assert np.array_equal(p.position, opt)
    assert rec.global_best_fitness == f
    assert rec.particle_fitness == [f, f, f]


def test_step_monotone_over_random_steps(rng):
    X = rng.normal(size=(60, 2))
    cfg = RunConfig(particles=4, centroids=3)
    stream = RngStream(5)
    s = init_swarm(cfg, X, stream)
    prev = math.inf
    for t in range(100):
        s, rec = pso_step(s, X, cfg, stream, t)
        assert rec.global_best_fitness <= prev
        prev = rec.global_best_fitness
        assert all(rec.global_best_fitness <= p.best_fitness for p in s.particles)
        assert all(p.best_fitness <= p.fitness for p in s.particles)


def test_step_replay(iris_petal):
    cfg = RunConfig(particles=3)
    stream = RngStream(17)
    s = init_swarm(cfg, iris_petal, stream)
    a, ra = pso_step(s, iris_petal, cfg, stream.copy())
    b, rb = pso_step(s, iris_petal, cfg, stream.copy())
    assert ra.particle_fitness == rb.particle_fitness
    for p, q in zip(a.particles, b.particles):
        assert p.position.tobytes() == q.position.tobytes()
        assert p.velocity.tobytes() == q.velocity.tobytes()


def test_pso_run_reference_config(iris_petal):
    rep = pso_run(iris_petal, RunConfig(rng_seed=3))
    assert 1 <= rep.n_iter <= 50
    h = rep.fitness_history
    assert all(b <= a for a, b in zip(h, h[1:]))
    assert np.array_equal(rep.final_centroids, rep.iterations[-1].global_best_position)
    assert rep.final_fitness == h[-1]
    assert rep.final_labels.shape == (150,)


def test_pso_run_single_iteration(iris_petal):
    assert pso_run(iris_petal, RunConfig(iterations=1)).n_iter == 1


def test_pso_run_early_stop(iris_petal):
    assert pso_run(iris_petal, RunConfig(velocity_epsilon=1e9)).n_iter == 1


def test_pso_run_tiny_epsilon_runs_full(iris_petal):
    assert pso_run(iris_petal, RunConfig(velocity_epsilon=0.0)).n_iter == 50


def test_zero_coefficient_freeze(iris_petal):
    cfg = RunConfig(w=0.0, c1=0.0, c2=0.0, particles=3)
    start = init_swarm(cfg, iris_petal, RngStream(cfg.rng_seed))
    seen = []
    pso_run(iris_petal, cfg, callback=lambda t, s, lab: seen.append(s))
    for s in seen:
        for p, q in zip(s.particles, start.particles):
            assert p.position.tobytes() == q.position.tobytes()


def test_pso_run_deterministic(iris_petal):
    a = pso_run(iris_petal, RunConfig(rng_seed=42, particles=4))
    b = pso_run(iris_petal, RunConfig(rng_seed=42, particles=4))
    assert a.fitness_history == b.fitness_history
    assert a.final_centroids.tobytes() == b.final_centroids.tobytes()


def test_pso_run_rejects_bad_config(iris_petal):
    with pytest.raises(ValueError):
        pso_run(iris_petal, RunConfig(dimensions=3))


def test_hybrid_first_record_not_worse_than_seed(iris_petal):
    rep = hybrid_run(iris_petal, RunConfig(algorithm="hybrid", rng_seed=2))
    seed = rep.kmeans_seed
    seed_fit = quantization_error(iris_petal.points, seed, assign_points(iris_petal.points, seed))
    assert rep.iterations[0].global_best_fitness <= seed_fit
    assert rep.iterations[0].particle_fitness[0] == seed_fit


def test_hybrid_seed_is_standalone_kmeans(iris_petal):
    rep = hybrid_run(iris_petal, RunConfig(algorithm="hybrid", rng_seed=9))
    centers, _, _ = kmeans_run(iris_petal, 2, RngStream(9, KMEANS_STREAM))
    assert np.array_equal(rep.kmeans_seed, centers)


def test_hybrid_single_particle_is_kmeans(iris_petal):
    cfg = RunConfig(algorithm="hybrid", particles=1, rng_seed=1)
    rep = hybrid_run(iris_petal, cfg)
    swarm = init_swarm(cfg, iris_petal, RngStream(1), seed_particle=rep.kmeans_seed)
    assert np.array_equal(swarm.particles[0].position, rep.kmeans_seed)
    assert np.array_equal(rep.iterations[0].global_best_position, rep.kmeans_seed)


def test_hybrid_deterministic(iris_petal):
    cfg = RunConfig(algorithm="hybrid", rng_seed=5)
    a, b = hybrid_run(iris_petal, cfg), hybrid_run(iris_petal, replace(cfg))
    assert a.fitness_history == b.fitness_history
    assert a.kmeans_seed.tobytes() == b.kmeans_seed.tobytes()

"""scikit-learn compatible clustering estimators.

:class:`PSOClustering` runs gbest PSO (optionally seeded by K-Means) and
:class:`LloydKMeans` runs the plain K-Means baseline. Both follow the usual
``fit`` / ``predict`` / ``transform`` protocol and expose their hyper-parameters
through ``get_params`` / ``set_params``, so they can sit in pipelines and
grid searches.
"""

from numbers import Integral, Real

import numpy as np
from sklearn.base import BaseEstimator, ClusterMixin, TransformerMixin
from sklearn.utils._param_validation import Interval, StrOptions
from sklearn.utils.validation import check_array, check_is_fitted, validate_data

from .core import RunConfig
from .engine import hybrid_run, pso_run
from .fitness import assign_points, distance_matrix, quantization_error
from .kmeans import kmeans_run
from .rng import KMEANS_STREAM, RngStream


def _resolve_seed(random_state) -> int:
    if random_state is None:
        return int(np.random.SeedSequence().entropy % 2**64)
    if isinstance(random_state, (Integral, np.integer)):
        return int(random_state)
    raise ValueError(f"random_state must be an int or None, got {random_state!r}")


class _CentroidClusterMixin(ClusterMixin, TransformerMixin):
    """Shared predict/transform/score for estimators that end with ``cluster_centers_``."""

    def predict(self, X):
        """Index of the nearest learned centroid for each sample."""
        check_is_fitted(self)
        X = validate_data(self, X, reset=False)
        return assign_points(X, self.cluster_centers_)

    def transform(self, X):
        """Euclidean distance from each sample to each learned centroid."""
        check_is_fitted(self)
        X = validate_data(self, X, reset=False)
        return distance_matrix(X, self.cluster_centers_)

    def score(self, X, y=None):
        """Negative quantization error of ``X`` under the learned centroids."""
        labels = self.predict(X)
        X = check_array(X)
        return -quantization_error(X, self.cluster_centers_, labels)


class PSOClustering(_CentroidClusterMixin, BaseEstimator):
    """Data clustering by gbest particle swarm optimisation.

    Each particle is a full set of ``n_clusters`` centroids and the swarm
    minimises the quantization error (mean point-to-centroid distance per
    cluster, averaged over clusters).

    Parameters
    ----------
    n_clusters : int, default=2
    n_particles : int, default=2
    max_iter : int, default=50
        Number of swarm iterations.
    inertia : float, default=0.72
        Weight on the previous velocity.
    c1 : float, default=1.49
        Cognitive coefficient (pull towards the particle's own best).
    c2 : float, default=1.49
        Social coefficient (pull towards the swarm best).
    r_sampling : {"component", "scalar"}, default="component"
        Draw the random factors per centroid coordinate, or once per
        particle and iteration.
    velocity_epsilon : float or None, default=None
        Stop early once every velocity component is smaller than this.
    init : ndarray of shape (n_clusters, n_features) or None
        Starting centroids for particle 0.
    hybrid : bool, default=False
        Seed particle 0 with a converged K-Means solution.
    kmeans_max_iter : int, default=100
    kmeans_tol : float, default=0.0
    random_state : int or None, default=None

    Attributes
    ----------
    cluster_centers_ : ndarray of shape (n_clusters, n_features)
        Global best centroids.
    labels_ : ndarray of shape (n_samples,)
    fitness_ : float
        Quantization error of ``cluster_centers_`` on the training data.
    fitness_history_ : list of float
        Global-best quantization error after each iteration.
    n_iter_ : int
    seed_ : int
        The seed actually used (drawn from OS entropy if ``random_state`` is None).
    kmeans_centers_ : ndarray or None
        The K-Means seed when ``hybrid=True``.
    report_ : RunReport
    """

    _parameter_constraints: dict = {
        "n_clusters": [Interval(Integral, 1, None, closed="left")],
        "n_particles": [Interval(Integral, 1, None, closed="left")],
        "max_iter": [Interval(Integral, 1, None, closed="left")],
        "inertia": [Interval(Real, None, None, closed="neither")],
        "c1": [Interval(Real, None, None, closed="neither")],
        "c2": [Interval(Real, None, None, closed="neither")],
        "r_sampling": [StrOptions({"component", "scalar"})],
        "velocity_epsilon": [Interval(Real, 0, None, closed="left"), None],
        "init": ["array-like", None],
        "hybrid": ["boolean"],
        "kmeans_max_iter": [Interval(Integral, 1, None, closed="left")],
        "kmeans_tol": [Interval(Real, 0, None, closed="left")],
        "random_state": [Interval(Integral, 0, 2**64 - 1, closed="both"), None],
    }

    def __init__(
        self,
        n_clusters=2,
        n_particles=2,
        max_iter=50,
        inertia=0.72,
        c1=1.49,
        c2=1.49,
        r_sampling="component",
        velocity_epsilon=None,
        init=None,
        hybrid=False,
        kmeans_max_iter=100,
        kmeans_tol=0.0,
        random_state=None,
    ):
        self.n_clusters = n_clusters
        self.n_particles = n_particles
        self.max_iter = max_iter
        self.inertia = inertia
        self.c1 = c1
        self.c2 = c2
        self.r_sampling = r_sampling
        self.velocity_epsilon = velocity_epsilon
        self.init = init
        self.hybrid = hybrid
        self.kmeans_max_iter = kmeans_max_iter
        self.kmeans_tol = kmeans_tol
        self.random_state = random_state

    def _config(self, n_features: int) -> RunConfig:
        return RunConfig(
            centroids=self.n_clusters,
            dimensions=n_features,
            particles=self.n_particles,
            iterations=self.max_iter,
            w=float(self.inertia),
            c1=float(self.c1),
            c2=float(self.c2),
            algorithm="hybrid" if self.hybrid else "pso",
            rng_seed=_resolve_seed(self.random_state),
            velocity_epsilon=self.velocity_epsilon,
            manual_init=None if self.init is None else np.asarray(self.init, dtype=np.float64),
            r_sampling=self.r_sampling,
            kmeans_max_iters=self.kmeans_max_iter,
            kmeans_tol=float(self.kmeans_tol),
        )

    def fit(self, X, y=None, callback=None):
        """Run the swarm on ``X``.

        ``callback(iteration, swarm, labels)`` is invoked after every
        iteration, e.g. a :class:`~psocluster.frames.FrameWriter`.
        """
        self._validate_params()
        X = validate_data(self, X, dtype=np.float64)
        cfg = self._config(X.shape[1])
        runner = hybrid_run if self.hybrid else pso_run
        report = runner(X, cfg, callback=callback)
        self.report_ = report
        self.seed_ = cfg.rng_seed
        self.cluster_centers_ = report.final_centroids
        self.labels_ = report.final_labels
        self.fitness_ = report.final_fitness
        self.fitness_history_ = report.fitness_history
        self.n_iter_ = report.n_iter
        self.kmeans_centers_ = report.kmeans_seed
        return self


class LloydKMeans(_CentroidClusterMixin, BaseEstimator):
    """K-Means with Forgy initialisation and random re-seeding of empty clusters.

    Parameters
    ----------
    n_clusters : int, default=2
    max_iter : int, default=100
    tol : float, default=0.0
        Also stop once the SSE changes by at most this much between steps.
    random_state : int or None, default=None

    Attributes
    ----------
    cluster_centers_, labels_, n_iter_, seed_, report_
    inertia_ : float
        Sum of squared distances to the closest centroid.
    fitness_ : float
        Quantization error of the final clustering.
    converged_ : bool
    """

    _parameter_constraints: dict = {
        "n_clusters": [Interval(Integral, 1, None, closed="left")],
        "max_iter": [Interval(Integral, 1, None, closed="left")],
        "tol": [Interval(Real, 0, None, closed="left")],
        "random_state": [Interval(Integral, 0, 2**64 - 1, closed="both"), None],
    }

    def __init__(self, n_clusters=2, max_iter=100, tol=0.0, random_state=None):
        self.n_clusters = n_clusters
        self.max_iter = max_iter
        self.tol = tol
        self.random_state = random_state

    def fit(self, X, y=None):
        self._validate_params()
        X = validate_data(self, X, dtype=np.float64)
        if self.n_clusters > X.shape[0]:
            raise ValueError(
                f"n_samples={X.shape[0]} should be >= n_clusters={self.n_clusters}"
            )
        self.seed_ = _resolve_seed(self.random_state)
        rng = RngStream(self.seed_, KMEANS_STREAM)
        centers, labels, report = kmeans_run(X, self.n_clusters, rng, self.max_iter, self.tol)
        self.report_ = report
        self.cluster_centers_ = centers
        self.labels_ = labels
        self.inertia_ = float(np.sum((X - centers[labels]) ** 2))
        self.fitness_ = report.final_fitness
        self.n_iter_ = report.n_iter
        self.converged_ = bool(report.converged)
        return self

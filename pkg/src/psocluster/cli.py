"""Command-line entry points.

``psocluster`` runs one clustering job on a CSV file or the bundled Iris
data and writes a JSON report and, optionally, SVG frames.
``psocluster-compare`` tabulates several reports side by side.
"""

from __future__ import annotations

import argparse
import logging
import sys

import numpy as np

from .core import ConfigError, RunConfig, validate_config
from .datasets import CSVFormatError, builtin_iris, load_csv, subset_dims
from .engine import DivergenceError, run
from .frames import FrameWriter
from .report import compare_runs, dumps_report, read_report, write_report

logger = logging.getLogger("psocluster")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="psocluster",
        description="Cluster a numeric CSV with gbest PSO, K-Means, or K-Means-seeded PSO.",
    )
    src = p.add_argument_group("data")
    src.add_argument("--data", metavar="CSV", help="comma-separated numeric input")
    src.add_argument("--header", action="store_true", help="the CSV's first row holds column names")
    src.add_argument("--iris", action="store_true", help="use the bundled Fisher Iris data")
    src.add_argument("--subset-offset", type=int, default=0, metavar="N",
                     help="first (0-based) column to keep (default: 0)")
    src.add_argument("--dimensions", type=int, default=2, metavar="D",
                     help="number of columns to keep from the offset (default: 2)")

    alg = p.add_argument_group("algorithm")
    alg.add_argument("--algorithm", choices=("pso", "kmeans", "hybrid"), default="pso")
    alg.add_argument("--centroids", type=int, default=2, metavar="K")
    alg.add_argument("--particles", type=int, default=2, metavar="P")
    alg.add_argument("--iterations", type=int, default=50, metavar="T")
    alg.add_argument("--w", type=float, default=0.72, help="inertia weight (default: 0.72)")
    alg.add_argument("--c1", type=float, default=1.49, help="cognitive coefficient (default: 1.49)")
    alg.add_argument("--c2", type=float, default=1.49, help="social coefficient (default: 1.49)")
    alg.add_argument("--seed", type=int, default=0, help="unsigned 64-bit RNG seed (default: 0)")
    alg.add_argument("--velocity-epsilon", type=float, default=None, metavar="EPS",
                     help="stop once every velocity component is below EPS")
    alg.add_argument("--r-sampling", choices=("component", "scalar"), default="component",
                     help="draw r1/r2 per coordinate or once per particle and iteration")
    alg.add_argument("--manual-init", metavar="CSV",
                     help="K x d starting centroids for particle 0 (no header)")
    alg.add_argument("--kmeans-max-iters", type=int, default=100, metavar="N")
    alg.add_argument("--kmeans-tol", type=float, default=0.0, metavar="TOL")

    out = p.add_argument_group("output")
    out.add_argument("--report", metavar="PATH",
                     help="write the JSON run report here (default: stdout)")
    out.add_argument("--frames", metavar="DIR", help="write one SVG frame per iteration (2-D only)")
    out.add_argument("--timing", action="store_true",
                     help="include wall-clock time in the report (makes it non-reproducible)")
    out.add_argument("-v", "--verbose", action="store_true")
    return p


def parse_args(argv=None):
    """Parse ``argv`` into ``(RunConfig, namespace)``.

    Exits with status 2 on unknown flags, a missing data source, or both
    ``--data`` and ``--iris``.
    """
    parser = build_parser()
    ns = parser.parse_args(argv)
    if ns.data and ns.iris:
        parser.error("--data and --iris are mutually exclusive")
    if not ns.data and not ns.iris:
        parser.error("a data source is required: --data CSV or --iris")
    cfg = RunConfig(
        centroids=ns.centroids,
        dimensions=ns.dimensions,
        particles=ns.particles,
        iterations=ns.iterations,
        w=ns.w,
        c1=ns.c1,
        c2=ns.c2,
        algorithm=ns.algorithm,
        rng_seed=ns.seed,
        velocity_epsilon=ns.velocity_epsilon,
        r_sampling=ns.r_sampling,
        frames=ns.frames,
        kmeans_max_iters=ns.kmeans_max_iters,
        kmeans_tol=ns.kmeans_tol,
    )
    return cfg, ns


def _load(ns):
    data = builtin_iris() if ns.iris else load_csv(ns.data, has_header=ns.header)
    return subset_dims(data, ns.subset_offset, ns.dimensions)


def main(argv=None) -> int:
    cfg, ns = parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if ns.verbose else logging.WARNING,
        format="%(levelname)s: %(message)s",
    )
    try:
        data = _load(ns)
        if ns.manual_init:
            cfg.manual_init = np.array(load_csv(ns.manual_init).points)
        validate_config(cfg, data)
        writer = FrameWriter(data, ns.frames) if ns.frames else None
        report = run(data, cfg, callback=writer)
        if ns.report:
            write_report(report, ns.report, include_timing=ns.timing)
        else:
            sys.stdout.write(dumps_report(report, include_timing=ns.timing))
    except (ConfigError, CSVFormatError, DivergenceError, ValueError, OSError) as exc:
        print(f"psocluster: error: {exc}", file=sys.stderr)
        return 1
    logger.info(
        "%s finished: %d iterations, J_e=%.6g, %.3fs",
        report.algorithm, report.n_iter, report.final_fitness, report.wall_time,
    )
    if writer is not None and writer.enabled:
        logger.info("wrote %d frames to %s", len(writer.paths), ns.frames)
    return 0


def compare_main(argv=None) -> int:
    p = argparse.ArgumentParser(
        prog="psocluster-compare",
        description="Tabulate final J_e and convergence speed of several run reports.",
    )
    p.add_argument("reports", nargs="+", metavar="REPORT")
    ns = p.parse_args(argv)
    try:
        table = compare_runs(read_report(path) for path in ns.reports)
    except (ValueError, OSError, KeyError) as exc:
        print(f"psocluster-compare: error: {exc}", file=sys.stderr)
        return 1
    sys.stdout.write(table)
    return 0


if __name__ == "__main__":
    sys.exit(main())

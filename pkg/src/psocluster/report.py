"""Run report serialisation and side-by-side comparison.

Reports are JSON documents with a fixed key order and every float written
with 17 significant digits, so two runs with the same inputs produce
byte-identical files and reading a file back recovers the exact values.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .core import IterationRecord, RunConfig, RunReport

FORMAT = "psocluster-report/1"


def _num(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    x = float(x)
    if math.isnan(x):
        return "NaN"
    if math.isinf(x):
        return "Infinity" if x > 0 else "-Infinity"
    text = format(x, ".17g")
    # keep floats distinguishable from ints after a JSON round trip
    return text if any(c in text for c in ".e") else text + ".0"


def _dump(obj, indent=0) -> str:
    pad = "  " * indent
    if obj is None:
        return "null"
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, np.ndarray):
        obj = obj.tolist()
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [
            f'{pad}  {json.dumps(k)}: {_dump(v, indent + 1)}' for k, v in obj.items()
        ]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if any(isinstance(v, dict) for v in obj):
            items = [pad + "  " + _dump(v, indent + 1) for v in obj]
            return "[\n" + ",\n".join(items) + "\n" + pad + "]"
        return "[" + ", ".join(_dump(v, indent) for v in obj) + "]"
    return _num(obj)


def report_to_dict(report: RunReport, include_timing: bool = True) -> dict:
    out = {
        "format": FORMAT,
        "algorithm": report.algorithm,
        "seed": int(report.seed),
        "data_fingerprint": report.data_fingerprint,
        "config": report.config.to_dict(),
        "n_iter": report.n_iter,
        "converged": report.converged,
        "final_fitness": report.final_fitness,
        "final_centroids": report.final_centroids,
        "final_labels": report.final_labels,
    }
    if report.kmeans_seed is not None:
        out["kmeans_seed"] = report.kmeans_seed
    out["iterations"] = [
        {
            "iteration": rec.iteration,
            "global_best_fitness": rec.global_best_fitness,
            "particle_fitness": list(rec.particle_fitness),
            "global_best_position": rec.global_best_position,
            "sse": rec.sse,
        }
        for rec in report.iterations
    ]
    if include_timing:
        out["timing"] = {"wall_time": report.wall_time}
    return out


def dumps_report(report: RunReport, include_timing: bool = True) -> str:
    return _dump(report_to_dict(report, include_timing)) + "\n"


def write_report(report: RunReport, path, include_timing: bool = True) -> None:
    """Write ``report`` to ``path``.

    With ``include_timing=False`` the wall-clock section is left out, which
    makes the file a deterministic function of the run inputs.
    """
    Path(path).write_text(dumps_report(report, include_timing))


def _array(value, dtype=np.float64):
    return None if value is None else np.asarray(value, dtype=dtype)


def report_from_dict(doc: dict) -> RunReport:
    if doc.get("format") != FORMAT:
        raise ValueError(f"not a run report (format={doc.get('format')!r})")
    cfg_doc = dict(doc["config"])
    if cfg_doc.get("manual_init") is not None:
        cfg_doc["manual_init"] = np.asarray(cfg_doc["manual_init"], dtype=np.float64)
    records = [
        IterationRecord(
            iteration=r["iteration"],
            global_best_fitness=r["global_best_fitness"],
            particle_fitness=list(r["particle_fitness"]),
            global_best_position=np.asarray(r["global_best_position"], dtype=np.float64),
            sse=r["sse"],
        )
        for r in doc["iterations"]
    ]
    return RunReport(
        algorithm=doc["algorithm"],
        seed=doc["seed"],
        config=RunConfig(**cfg_doc),
        iterations=records,
        final_centroids=_array(doc["final_centroids"]),
        final_labels=_array(doc["final_labels"], np.intp),
        final_fitness=doc["final_fitness"],
        kmeans_seed=_array(doc.get("kmeans_seed")),
        converged=doc["converged"],
        data_fingerprint=doc["data_fingerprint"],
        wall_time=doc.get("timing", {}).get("wall_time", 0.0),
    )


def read_report(path) -> RunReport:
    return report_from_dict(json.loads(Path(path).read_text()))


def iterations_to_best(report: RunReport) -> int:
    """Iterations needed to reach the final objective value.

    For swarm runs this is the first iteration whose global best equals the
    final one; K-Means runs report their step count.
    """
    history = report.fitness_history
    if not history:
        return 0
    if report.algorithm == "kmeans":
        return len(history)
    best = history[-1]
    return next(i for i, f in enumerate(history) if f == best) + 1


COLUMNS = ("algorithm", "seed", "final_je", "iters_to_best", "iterations")


def compare_runs(reports) -> str:
    """Plain-text table of several runs over the same data and K, best J_e first."""
    reports = list(reports)
    if len(reports) < 2:
        raise ValueError("need at least two reports to compare")
    prints = {r.data_fingerprint for r in reports}
    if len(prints) != 1:
        raise ValueError(f"reports cover different datasets: {sorted(prints)}")
    ks = {r.config.centroids for r in reports}
    if len(ks) != 1:
        raise ValueError(f"reports use different numbers of centroids: {sorted(ks)}")
    rows = sorted(
        (
            (r.algorithm, int(r.seed), float(r.final_fitness), iterations_to_best(r), r.n_iter)
            for r in reports
        ),
        key=lambda row: (row[2], row[0], row[1]),
    )
    cells = [COLUMNS] + [
        (alg, str(seed), format(je, ".17g"), str(itb), str(n)) for alg, seed, je, itb, n in rows
    ]
    widths = [max(len(c[i]) for c in cells) for i in range(len(COLUMNS))]
    lines = ["  ".join(c[i].ljust(widths[i]) for i in range(len(COLUMNS))).rstrip() for c in cells]
    return "\n".join(lines) + "\n"


def parse_comparison(text: str) -> list:
    """Inverse of :func:`compare_runs`: a list of row dicts."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or tuple(lines[0].split()) != COLUMNS:
        raise ValueError("missing comparison header")
    out = []
    for ln in lines[1:]:
        alg, seed, je, itb, n = ln.split()
        out.append(
            {"algorithm": alg, "seed": int(seed), "final_je": float(je),
             "iters_to_best": int(itb), "iterations": int(n)}
        )
    return out

"""Experiment configuration, sampling protocol and result persistence.

A batch experiment samples a training fraction of the edges uniformly at
random, estimates the features on it, fits/applies one of the batch
rules, and scores the held-out edges; an active experiment lets a
selection strategy pick the training set instead. Every (fraction, rep)
cell draws its RNG from a spawn key of the master seed so adding
fractions or reps never reshuffles the others. Results are written
atomically as JSON (or CSV) with the resolved configuration embedded.
"""
from __future__ import annotations

import dataclasses
import json
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import __version__
from .active import run_active, select_alcone, select_alclog
from .classifiers import (edge_points, fit_kstar, fit_perceptron,
                          predict_one_feature, predict_two_feature,
                          reciprocal_override, Prediction)
from .features import estimate_features
from .graph import SignedDigraph, largest_wcc, load_edgelist
from .metrics import RunMetrics, aggregate, confusion, mcc

BATCH_ALGOS = ("blc-t", "blc-u", "blc-tu", "perceptron")
ACTIVE_ALGOS = ("alcone-t", "alcone-u", "alcone-tu",
                "alclog-t", "alclog-u", "alclog-tu")


@dataclass
class ExperimentConfig:
    """Everything needed to reproduce a run; echoed into the results."""
    graph: str
    algorithm: str
    fractions: tuple = ()
    reps: int = 12
    seed: int = 0
    tie_label: int = 1
    reciprocal: bool = False
    wcc: bool | None = None      # None: full graph for batch, WCC for active
    out: str | None = None
    threads: int = 0             # 0 means available parallelism
    dataset: str | None = None

    def validate(self) -> None:
        if self.algorithm not in BATCH_ALGOS + ACTIVE_ALGOS:
            raise ValueError(f"algorithm: unknown value {self.algorithm!r}")
        if self.algorithm in BATCH_ALGOS and not self.fractions:
            raise ValueError("fractions: batch algorithms need at least one")
        for f in self.fractions:
            if not 0.0 < f < 1.0:
                raise ValueError(f"fractions: must lie in (0, 1), got {f}")
        if self.reps < 1:
            raise ValueError(f"reps: must be >= 1, got {self.reps}")
        if self.tie_label not in (-1, 1):
            raise ValueError(f"tie_label: must be -1 or 1, got {self.tie_label}")
        if self.threads < 0:
            raise ValueError(f"threads: must be >= 0, got {self.threads}")

    def to_json(self) -> str:
        return json.dumps(dataclasses.asdict(self), sort_keys=True, indent=2)

    @classmethod
    def from_json(cls, text: str) -> "ExperimentConfig":
        data = json.loads(text)
        data["fractions"] = tuple(data.get("fractions", ()))
        return cls(**data)


def sample_train_mask(g: SignedDigraph, fraction: float, rng) -> np.ndarray:
    """Mark exactly round(fraction * |E|) distinct edges as training via a
    seeded uniform shuffle."""
    if not 0.0 < fraction < 1.0:
        raise ValueError(f"training fraction must be in (0, 1), got {fraction}")
    rng = np.random.default_rng(rng)
    e = g.edge_count
    k = int(round(fraction * e))
    if k == 0 or k == e:
        raise ValueError(
            f"fraction {fraction} leaves an empty train or test set on {e} edges")
    mask = np.zeros(e, dtype=bool)
    mask[rng.permutation(e)[:k]] = True
    return mask


def rep_seed(master_seed: int, fraction_index: int, rep_index: int) -> int:
    """Stable per-cell seed; independent of the rest of the grid."""
    ss = np.random.SeedSequence(master_seed,
                                spawn_key=(fraction_index, rep_index))
    return int(ss.generate_state(1, np.uint64)[0])


def _batch_rep(g: SignedDigraph, algorithm: str, fraction: float, seed: int,
               tie_label: int, reciprocal: bool) -> RunMetrics:
    rng = np.random.default_rng(seed)
    mask = sample_train_mask(g, fraction, rng)
    train_ids = np.nonzero(mask)[0].astype(np.int64)
    test_ids = np.nonzero(~mask)[0].astype(np.int64)

    t0 = time.perf_counter()
    feat = estimate_features(g, mask)
    if algorithm == "blc-t":
        pred = predict_one_feature(feat, g, test_ids, "trollness", tie_label)
    elif algorithm == "blc-u":
        pred = predict_one_feature(feat, g, test_ids, "unpleasantness", tie_label)
    elif algorithm == "blc-tu":
        sep = fit_kstar(feat, g, train_ids, tie_label)
        pred = predict_two_feature(feat, sep, g, test_ids)
    else:  # perceptron
        model = fit_perceptron(edge_points(feat, g, train_ids),
                               g.labels[train_ids],
                               seed=int(rng.integers(2 ** 62)))
        signs = model.predict(edge_points(feat, g, test_ids), tie_label)
        pred = Prediction(edge_ids=test_ids, signs=signs,
                          reciprocal_applied=np.zeros(test_ids.shape[0], bool))
    if reciprocal:
        pred = reciprocal_override(g, mask, pred)
    wall_ms = (time.perf_counter() - t0) * 1e3

    c = confusion(pred.signs, g.labels[test_ids])
    return RunMetrics(accuracy=c.accuracy, mcc=mcc(c),
                      fraction=float(mask.mean()), wall_ms=wall_ms, seed=seed)


def _active_rep(g: SignedDigraph, algorithm: str, seed: int,
                tie_label: int) -> RunMetrics:
    strategy, which = algorithm.split("-")
    select = select_alcone if strategy == "alcone" else select_alclog
    rule = "two-feature" if which == "tu" else f"one-feature-{which}"
    t0 = time.perf_counter()
    plan = select(g, which, seed)
    _, run = run_active(g, plan, rule, tie_label)
    run.wall_ms = (time.perf_counter() - t0) * 1e3
    run.seed = seed
    return run


def _record(cfg: ExperimentConfig, runs: list[RunMetrics]) -> dict:
    agg = aggregate(runs)
    params = dataclasses.asdict(cfg)
    params["fractions"] = list(params["fractions"])  # JSON-stable type
    params["version"] = __version__
    return {
        "dataset": cfg.dataset or Path(cfg.graph).stem,
        "algorithm": cfg.algorithm,
        "params": params,
        "n": agg.n,
        "reps": [
            {"seed": r.seed, "fraction": r.fraction, "accuracy": r.accuracy,
             "mcc": r.mcc, "wall_ms": r.wall_ms}
            for r in runs
        ],
        "mean": agg.mean,
        "std": agg.std,
    }


def write_atomic(text: str, path: Path) -> None:
    tmp = path.with_suffix(path.suffix + ".part")
    tmp.write_text(text, encoding="utf-8")
    tmp.replace(path)


def _write_csv(records: list[dict], path: Path) -> None:
    import csv
    tmp = path.with_suffix(path.suffix + ".part")
    with open(tmp, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["dataset", "algorithm", "fraction", "rep", "seed",
                    "accuracy", "mcc", "wall_ms"])
        for rec in records:
            for i, r in enumerate(rec["reps"]):
                w.writerow([rec["dataset"], rec["algorithm"], r["fraction"],
                            i, r["seed"], r["accuracy"], r["mcc"], r["wall_ms"]])
    tmp.replace(path)


def prepare_graph(cfg: ExperimentConfig) -> SignedDigraph:
    g = load_edgelist(cfg.graph)
    use_wcc = cfg.wcc if cfg.wcc is not None else cfg.algorithm in ACTIVE_ALGOS
    if use_wcc:
        g = largest_wcc(g).graph
    return g


def run_experiment(cfg: ExperimentConfig) -> list[dict]:
    """Execute the full (fractions x reps) grid and return one result
    record per fraction (a single record for active runs). Writes cfg.out
    when set."""
    cfg.validate()
    g = prepare_graph(cfg)
    workers = cfg.threads or os.cpu_count() or 1
    records = []
    if cfg.algorithm in BATCH_ALGOS:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            for fi, fraction in enumerate(cfg.fractions):
                futs = [pool.submit(_batch_rep, g, cfg.algorithm, fraction,
                                    rep_seed(cfg.seed, fi, ri),
                                    cfg.tie_label, cfg.reciprocal)
                        for ri in range(cfg.reps)]
                records.append(_record(cfg, [f.result() for f in futs]))
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futs = [pool.submit(_active_rep, g, cfg.algorithm,
                                rep_seed(cfg.seed, 0, ri), cfg.tie_label)
                    for ri in range(cfg.reps)]
            records.append(_record(cfg, [f.result() for f in futs]))

    if cfg.out:
        out = Path(cfg.out)
        if out.suffix == ".csv":
            _write_csv(records, out)
        else:
            payload = records[0] if len(records) == 1 else records
            write_atomic(json.dumps(payload, sort_keys=True, indent=2) + "\n", out)
    return records

"""Classification metrics and repetition aggregates."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class Confusion:
    """Binary confusion counts with +1 as the positive class."""
    tp: int
    tn: int
    fp: int
    fn: int

    @property
    def total(self) -> int:
        return self.tp + self.tn + self.fp + self.fn

    @property
    def accuracy(self) -> float:
        # empty evaluation set counts as vacuously correct
        return (self.tp + self.tn) / self.total if self.total else 1.0


def confusion(pred_signs, true_signs) -> Confusion:
    pred = np.asarray(pred_signs)
    true = np.asarray(true_signs)
    if pred.shape != true.shape:
        raise ValueError(
            f"prediction covers {pred.shape} edges but truth covers {true.shape}")
    pos_pred = pred > 0
    pos_true = true > 0
    return Confusion(
        tp=int(np.count_nonzero(pos_pred & pos_true)),
        tn=int(np.count_nonzero(~pos_pred & ~pos_true)),
        fp=int(np.count_nonzero(pos_pred & ~pos_true)),
        fn=int(np.count_nonzero(~pos_pred & pos_true)))


def mcc(c: Confusion) -> float:
    """Matthews correlation coefficient; 0 when any marginal is empty."""
    denom = ((c.tp + c.fp) * (c.tp + c.fn) * (c.tn + c.fp) * (c.tn + c.fn))
    if denom == 0:
        return 0.0
    return (c.tp * c.tn - c.fp * c.fn) / math.sqrt(denom)


@dataclass
class RunMetrics:
    """Outcome of a single repetition."""
    accuracy: float
    mcc: float
    fraction: float        # train (or queried) edges over |E|
    wall_ms: float = 0.0
    seed: int | None = None


_AGG_FIELDS = ("accuracy", "mcc", "fraction", "wall_ms")


@dataclass(frozen=True)
class AggregateMetrics:
    n: int
    mean: dict = field(default_factory=dict)
    std: dict = field(default_factory=dict)

    @property
    def single_run(self) -> bool:
        return self.n == 1


def aggregate(runs: list[RunMetrics]) -> AggregateMetrics:
    """Mean and sample standard deviation (n-1 denominator) per metric.

    A single run gets std 0 and is flagged via .single_run.
    """
    if not runs:
        raise ValueError("cannot aggregate an empty run list")
    mean, std = {}, {}
    for name in _AGG_FIELDS:
        vals = np.asarray([getattr(r, name) for r in runs], dtype=float)
        mean[name] = float(vals.mean())
        std[name] = float(vals.std(ddof=1)) if len(runs) > 1 else 0.0
    return AggregateMetrics(n=len(runs), mean=mean, std=std)

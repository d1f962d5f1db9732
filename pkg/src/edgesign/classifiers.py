"""Batch prediction rules for edge signs.

Three rules share one decision geometry: a troll writes mostly negative
edges, an unpleasant node receives mostly negative edges.

* one-feature: threshold the relevant estimate at 1/2 (provably the
  training-optimal threshold for a single feature);
* two-feature: threshold the score t_hat(src) + u_hat(dst) at a learned
  intercept k*, predicting -1 when the score exceeds it;
* perceptron: averaged perceptron over the same two features, as a
  learned-separator baseline.

The reciprocal heuristic finally copies the observed label of the
opposite-direction edge when that edge is in the training set.
"""
from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from . import _accel
from .features import FeatureEstimates
from .graph import SignedDigraph

TROLLNESS = "trollness"
UNPLEASANTNESS = "unpleasantness"


def _canon_feature(which: str) -> str:
    w = which.lower()
    if w in ("t", TROLLNESS):
        return TROLLNESS
    if w in ("u", UNPLEASANTNESS):
        return UNPLEASANTNESS
    raise ValueError(f"unknown feature {which!r} (want trollness or unpleasantness)")


@dataclass
class Prediction:
    """Predicted signs for a set of edges."""
    edge_ids: np.ndarray            # int64
    signs: np.ndarray               # int8 in {-1, +1}
    reciprocal_applied: np.ndarray  # bool, True where the override replaced the sign


@dataclass(frozen=True)
class Separator:
    """Intercept of the slope -1 separator in (t_hat, u_hat) space.

    Orientation is fixed: predict -1 iff t_hat + u_hat > k_star, +1 iff
    below, tie_label on exact equality.
    """
    k_star: float
    tie_label: int
    train_mistakes: int


def _edge_feature(feat: FeatureEstimates, g: SignedDigraph,
                  edge_ids: np.ndarray, which: str) -> np.ndarray:
    if _canon_feature(which) == TROLLNESS:
        return feat.t_hat[g.src[edge_ids]]
    return feat.u_hat[g.dst[edge_ids]]


def predict_one_feature(feat: FeatureEstimates, g: SignedDigraph,
                        edge_ids: np.ndarray, which: str = TROLLNESS,
                        tie_label: int = 1) -> Prediction:
    """Single-feature rule: +1 when the estimate is below 1/2, -1 above,
    tie_label at exactly 1/2."""
    edge_ids = np.asarray(edge_ids, dtype=np.int64)
    v = _edge_feature(feat, g, edge_ids, which)
    signs = np.where(v < 0.5, 1, -1).astype(np.int8)
    signs[v == 0.5] = tie_label
    return Prediction(edge_ids=edge_ids, signs=signs,
                      reciprocal_applied=np.zeros(edge_ids.shape[0], dtype=bool))


def edge_scores(feat: FeatureEstimates, g: SignedDigraph,
                edge_ids: np.ndarray) -> np.ndarray:
    """Two-feature score t_hat(src) + u_hat(dst) per edge."""
    return feat.t_hat[g.src[edge_ids]] + feat.u_hat[g.dst[edge_ids]]


def fit_kstar_scores(scores: np.ndarray, labels: np.ndarray,
                     tie_label: int = 1) -> Separator:
    """Pick the mistake-minimizing intercept from scores and +-1 labels.

    Candidates are midpoints of consecutive distinct sorted scores plus
    sentinels just outside the range; ties prefer the candidate closest
    to 1, then the smaller one. O(m log m).
    """
    scores = np.asarray(scores, dtype=np.float64)
    labels = np.asarray(labels)
    if scores.shape[0] == 0:
        raise ValueError("cannot fit a separator on an empty training set")
    order = np.argsort(scores, kind="stable")
    cands, mists = _accel.boundary_mistakes(
        scores[order], (labels[order] < 0).astype(np.bool_))
    best = mists.min()
    pool = cands[mists == best]
    pick = pool[np.lexsort((pool, np.abs(pool - 1.0)))[0]]
    return Separator(k_star=float(pick), tie_label=tie_label,
                     train_mistakes=int(best))


def fit_kstar(feat: FeatureEstimates, g: SignedDigraph,
              train_edge_ids: np.ndarray, tie_label: int = 1) -> Separator:
    train_edge_ids = np.asarray(train_edge_ids, dtype=np.int64)
    return fit_kstar_scores(edge_scores(feat, g, train_edge_ids),
                            g.labels[train_edge_ids], tie_label)


def predict_two_feature(feat: FeatureEstimates, sep: Separator,
                        g: SignedDigraph, edge_ids: np.ndarray) -> Prediction:
    edge_ids = np.asarray(edge_ids, dtype=np.int64)
    s = edge_scores(feat, g, edge_ids)
    signs = np.where(s > sep.k_star, -1, 1).astype(np.int8)
    signs[s == sep.k_star] = sep.tie_label
    return Prediction(edge_ids=edge_ids, signs=signs,
                      reciprocal_applied=np.zeros(edge_ids.shape[0], dtype=bool))


@dataclass(frozen=True)
class PerceptronModel:
    w_t: float
    w_u: float
    bias: float

    def decision(self, points: np.ndarray) -> np.ndarray:
        return points[:, 0] * self.w_t + points[:, 1] * self.w_u + self.bias

    def predict(self, points: np.ndarray, tie_label: int = 1) -> np.ndarray:
        d = self.decision(points)
        signs = np.where(d > 0, 1, -1).astype(np.int8)
        signs[d == 0] = tie_label
        return signs


def edge_points(feat: FeatureEstimates, g: SignedDigraph,
                edge_ids: np.ndarray) -> np.ndarray:
    """(m, 2) feature matrix [t_hat(src), u_hat(dst)] per edge."""
    edge_ids = np.asarray(edge_ids, dtype=np.int64)
    return np.column_stack((feat.t_hat[g.src[edge_ids]],
                            feat.u_hat[g.dst[edge_ids]]))


def fit_perceptron(points: np.ndarray, labels: np.ndarray, epochs: int = 5,
                   seed=0, lr: float = 1.0) -> PerceptronModel:
    """Averaged perceptron on (m, 2) inputs with per-epoch reshuffling."""
    points = np.ascontiguousarray(points, dtype=np.float64)
    labels = np.asarray(labels)
    m = points.shape[0]
    if m == 0:
        raise ValueError("cannot fit a perceptron on an empty training set")
    rng = np.random.default_rng(seed)
    order = np.stack([rng.permutation(m) for _ in range(epochs)]).astype(np.int64)
    w_t, w_u, bias = _accel.perceptron_train(
        np.ascontiguousarray(points[:, 0]), np.ascontiguousarray(points[:, 1]),
        labels.astype(np.float64), order, float(lr))
    return PerceptronModel(w_t=w_t, w_u=w_u, bias=bias)


def reciprocal_override(g: SignedDigraph, mask: np.ndarray,
                        pred: Prediction) -> Prediction:
    """Copy the observed sign of j->i onto the prediction for i->j whenever
    j->i is a training edge. Predictions without an observed reciprocal
    are untouched."""
    mask = np.asarray(mask, dtype=bool)
    rev = g.reverse_edge_ids(pred.edge_ids)
    use = (rev >= 0) & mask[np.maximum(rev, 0)]
    signs = pred.signs.copy()
    signs[use] = g.labels[rev[use]]
    return replace(pred, signs=signs,
                   reciprocal_applied=pred.reciprocal_applied | use)


def optimal_threshold_bruteforce(feat: FeatureEstimates, g: SignedDigraph,
                                 train_edge_ids: np.ndarray,
                                 which: str = TROLLNESS,
                                 tie_label: int = 1) -> tuple[float, int]:
    """Exhaustive single-feature threshold search, used as a test oracle.

    Evaluates the training mistakes of the rule "+1 iff estimate < T,
    tie_label at equality" at every midpoint between consecutive distinct
    estimate values (plus sentinels) by direct counting, and returns the
    minimizing (threshold, mistakes). O(m^2).
    """
    train_edge_ids = np.asarray(train_edge_ids, dtype=np.int64)
    if train_edge_ids.shape[0] == 0:
        raise ValueError("empty training set")
    v = _edge_feature(feat, g, train_edge_ids, which)
    y = g.labels[train_edge_ids]
    distinct = np.unique(v)
    cands = [distinct[0] - 1e-9]
    for a, b in zip(distinct[:-1], distinct[1:]):
        mid = (a + b) / 2.0
        if a < mid < b:
            cands.append(mid)
    cands.append(distinct[-1] + 1e-9)

    best_t, best_m = None, None
    for t in cands:
        pred = np.where(v < t, 1, -1)
        pred[v == t] = tie_label
        m = int(np.count_nonzero(pred != y))
        if best_m is None or m < best_m:
            best_t, best_m = float(t), m
    return best_t, best_m


def count_mistakes_at_threshold(feat: FeatureEstimates, g: SignedDigraph,
                                train_edge_ids: np.ndarray, threshold: float,
                                which: str = TROLLNESS,
                                tie_label: int = 1) -> int:
    """Training mistakes of the single-feature rule at a given threshold."""
    train_edge_ids = np.asarray(train_edge_ids, dtype=np.int64)
    v = _edge_feature(feat, g, train_edge_ids, which)
    pred = np.where(v < threshold, 1, -1)
    pred[v == threshold] = tie_label
    return int(np.count_nonzero(pred != g.labels[train_edge_ids]))

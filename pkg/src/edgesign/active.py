"""Non-adaptive query selection over incident edges.

Both strategies choose which edge labels to reveal from the topology
alone; labels are only read afterwards, by the prediction step. Per node
with outgoing (resp. ingoing) edges the single-sample strategy queries
one uniform incident edge, the log-budget strategy draws
4*ceil(ln(d+1)) samples uniformly with replacement (natural log).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .classifiers import (Prediction, fit_kstar, predict_one_feature,
                          predict_two_feature)
from .features import estimate_features
from .graph import SignedDigraph
from .metrics import RunMetrics, confusion, mcc

WHICH_CHOICES = ("t", "u", "tu")
RULES = ("one-feature-t", "one-feature-u", "two-feature")


@dataclass(frozen=True)
class QueryPlan:
    """Outcome of a selection phase.

    distinct_edge_ids is the deduplicated set of queried edges;
    out_samples/in_samples record how many draws (with replacement) each
    node contributed per direction.
    """
    which: str
    distinct_edge_ids: np.ndarray   # int64, sorted
    out_samples: np.ndarray         # int64 (V,)
    in_samples: np.ndarray          # int64 (V,)
    node_count: int
    edge_count: int

    @property
    def distinct_count(self) -> int:
        return self.distinct_edge_ids.shape[0]


def _check_which(which: str) -> str:
    if which not in WHICH_CHOICES:
        raise ValueError(f"which must be one of {WHICH_CHOICES}, got {which!r}")
    return which


def _uniform_incident(rng, ptr: np.ndarray, edge_index: np.ndarray,
                      counts: np.ndarray) -> np.ndarray:
    """counts[i] uniform draws (with replacement) from node i's bucket."""
    nodes = np.nonzero(counts)[0]
    reps = np.repeat(nodes, counts[nodes])
    if reps.shape[0] == 0:
        return np.empty(0, dtype=np.int64)
    deg = (ptr[reps + 1] - ptr[reps])
    offs = (rng.random(reps.shape[0]) * deg).astype(np.int64)
    return edge_index[ptr[reps] + offs]


def select_alcone(g: SignedDigraph, which: str = "t", rng_seed=0) -> QueryPlan:
    """One uniform query per node and direction of interest."""
    _check_which(which)
    rng = np.random.default_rng(rng_seed)
    out_samples = np.zeros(g.node_count, dtype=np.int64)
    in_samples = np.zeros(g.node_count, dtype=np.int64)
    picked = []
    if which in ("t", "tu"):
        out_samples[g.out_degree > 0] = 1
        picked.append(_uniform_incident(rng, g.out_ptr, g.out_edges, out_samples))
    if which in ("u", "tu"):
        in_samples[g.in_degree > 0] = 1
        picked.append(_uniform_incident(rng, g.in_ptr, g.in_edges, in_samples))
    distinct = (np.unique(np.concatenate(picked)) if picked
                else np.empty(0, dtype=np.int64))
    return QueryPlan(which=which, distinct_edge_ids=distinct,
                     out_samples=out_samples, in_samples=in_samples,
                     node_count=g.node_count, edge_count=g.edge_count)


def log_sample_counts(degrees: np.ndarray) -> np.ndarray:
    """4*ceil(ln(d+1)) per node, 0 where the degree is 0."""
    counts = np.zeros(degrees.shape[0], dtype=np.int64)
    nz = degrees > 0
    counts[nz] = 4 * np.ceil(np.log(degrees[nz] + 1.0)).astype(np.int64)
    return counts


def select_alclog(g: SignedDigraph, which: str = "t", rng_seed=0) -> QueryPlan:
    """Logarithmic budget: per node, 4*ceil(ln(d+1)) uniform draws with
    replacement from its incident edges."""
    _check_which(which)
    rng = np.random.default_rng(rng_seed)
    out_samples = np.zeros(g.node_count, dtype=np.int64)
    in_samples = np.zeros(g.node_count, dtype=np.int64)
    picked = []
    if which in ("t", "tu"):
        out_samples = log_sample_counts(g.out_degree)
        picked.append(_uniform_incident(rng, g.out_ptr, g.out_edges, out_samples))
    if which in ("u", "tu"):
        in_samples = log_sample_counts(g.in_degree)
        picked.append(_uniform_incident(rng, g.in_ptr, g.in_edges, in_samples))
    distinct = (np.unique(np.concatenate(picked)) if picked
                else np.empty(0, dtype=np.int64))
    return QueryPlan(which=which, distinct_edge_ids=distinct,
                     out_samples=out_samples, in_samples=in_samples,
                     node_count=g.node_count, edge_count=g.edge_count)


def train_mask_from_plan(g: SignedDigraph, plan: QueryPlan) -> np.ndarray:
    if plan.node_count != g.node_count or plan.edge_count != g.edge_count:
        raise ValueError("query plan was built for a different graph")
    mask = np.zeros(g.edge_count, dtype=bool)
    mask[plan.distinct_edge_ids] = True
    return mask


def run_active(g: SignedDigraph, plan: QueryPlan, rule: str,
               tie_label: int = 1) -> tuple[Prediction, RunMetrics]:
    """Reveal the planned labels, then predict every non-queried edge.

    The queried set becomes the training mask for the feature estimates;
    the two-feature rule additionally fits its intercept on it.
    """
    if rule not in RULES:
        raise ValueError(f"rule must be one of {RULES}, got {rule!r}")
    mask = train_mask_from_plan(g, plan)
    test_ids = np.nonzero(~mask)[0].astype(np.int64)
    feat = estimate_features(g, mask)
    if rule == "one-feature-t":
        pred = predict_one_feature(feat, g, test_ids, "trollness", tie_label)
    elif rule == "one-feature-u":
        pred = predict_one_feature(feat, g, test_ids, "unpleasantness", tie_label)
    elif plan.distinct_count == 0:
        if test_ids.shape[0]:
            raise ValueError("two-feature rule needs at least one queried edge")
        pred = Prediction(edge_ids=test_ids, signs=np.zeros(0, np.int8),
                          reciprocal_applied=np.zeros(0, dtype=bool))
    else:
        sep = fit_kstar(feat, g, plan.distinct_edge_ids, tie_label)
        pred = predict_two_feature(feat, sep, g, test_ids)
    c = confusion(pred.signs, g.labels[test_ids])
    fraction = plan.distinct_count / g.edge_count if g.edge_count else 0.0
    return pred, RunMetrics(accuracy=c.accuracy, mcc=mcc(c), fraction=fraction)

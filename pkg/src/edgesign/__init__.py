"""Edge sign classification in directed signed social networks.

Signs of unlabeled edges are predicted from two locally computable node
features: how often a node sends negative edges (trollness) and how
often it receives them (unpleasantness). The package covers batch and
active (non-adaptive) training-set regimes, labeling-irregularity
statistics, and Monte Carlo verification of the expected-mistake bounds
that motivate the active strategies.
"""
__version__ = "0.1.0"

from ._accel import BACKEND
from .active import QueryPlan, run_active, select_alcone, select_alclog
from .bounds import (BoundReport, LabelingModel, er_digraph,
                     estimate_lower_bound, generate_labels, verify_alclog,
                     verify_alcone)
from .classifiers import (PerceptronModel, Prediction, Separator,
                          edge_points, edge_scores, fit_kstar,
                          fit_kstar_scores, fit_perceptron,
                          optimal_threshold_bruteforce, predict_one_feature,
                          predict_two_feature, reciprocal_override)
from .experiments import ExperimentConfig, run_experiment, sample_train_mask
from .features import (ComplexityStats, FeatureEstimates, PfcSurrogate,
                       complexity, estimate_features, full_mask,
                       pfc_surrogate)
from .graph import (SignedDigraph, WccView, build_graph, build_graph_arrays,
                    largest_wcc, load_edgelist, save_edgelist)
from .metrics import (AggregateMetrics, Confusion, RunMetrics, aggregate,
                      confusion, mcc)

__all__ = [
    "BACKEND", "__version__",
    "SignedDigraph", "WccView", "build_graph", "build_graph_arrays",
    "largest_wcc", "load_edgelist", "save_edgelist",
    "FeatureEstimates", "ComplexityStats", "PfcSurrogate",
    "estimate_features", "complexity", "pfc_surrogate", "full_mask",
    "Prediction", "Separator", "PerceptronModel",
    "predict_one_feature", "fit_kstar", "fit_kstar_scores",
    "predict_two_feature", "fit_perceptron", "reciprocal_override",
    "optimal_threshold_bruteforce", "edge_points", "edge_scores",
    "QueryPlan", "select_alcone", "select_alclog", "run_active",
    "Confusion", "RunMetrics", "AggregateMetrics",
    "confusion", "mcc", "aggregate",
    "LabelingModel", "BoundReport", "generate_labels",
    "verify_alcone", "verify_alclog", "estimate_lower_bound", "er_digraph",
    "ExperimentConfig", "sample_train_mask", "run_experiment",
]

import numpy as np
import pytest

import edgesign as es
from edgesign.classifiers import count_mistakes_at_threshold

from conftest import random_graph, random_mask
from oracles import kstar_bruteforce, score_mistakes


def _graph_with_that(t_value, denom=10):
    """Graph whose node 0 has trollness t_value over `denom` out-edges."""
    neg = round(t_value * denom)
    edges = [(0, i + 1, -1 if i < neg else 1) for i in range(denom)]
    return es.build_graph(edges)


def test_one_feature_high_trollness_predicts_negative():
    g = _graph_with_that(0.9)
    feat = es.estimate_features(g, es.full_mask(g))
    pred = es.predict_one_feature(feat, g, np.arange(g.edge_count), "trollness")
    assert (pred.signs == -1).all()


def test_one_feature_tie_uses_tie_label():
    g = _graph_with_that(0.5)
    feat = es.estimate_features(g, es.full_mask(g))
    for tie in (1, -1):
        pred = es.predict_one_feature(feat, g, np.arange(g.edge_count),
                                      "trollness", tie_label=tie)
        assert (pred.signs == tie).all()


def test_one_feature_unpleasantness_uses_destination():
    g = es.build_graph([(0, 2, -1), (1, 2, -1), (3, 2, 1), (2, 4, 1)])
    feat = es.estimate_features(g, es.full_mask(g))
    pred = es.predict_one_feature(feat, g, np.array([3]), "unpleasantness")
    # u_hat(4) = 1/2 has no observations -> falls to the tie label (+1)
    assert pred.signs[0] == 1
    pred = es.predict_one_feature(feat, g, np.array([0]), "unpleasantness")
    assert pred.signs[0] == -1  # u_hat(2) = 2/3


def test_unknown_feature_rejected():
    g = _graph_with_that(0.5)
    feat = es.estimate_features(g, es.full_mask(g))
    with pytest.raises(ValueError):
        es.predict_one_feature(feat, g, np.arange(1), "pleasantness")


# --- optimal threshold (single feature) --------------------------------------

def test_bruteforce_all_positive_below_half():
    g = es.build_graph([(0, 1, 1), (0, 2, 1), (0, 3, 1), (1, 2, 1)])
    feat = es.estimate_features(g, es.full_mask(g))
    train = np.arange(g.edge_count)
    thr, mistakes = es.optimal_threshold_bruteforce(feat, g, train, "trollness")
    assert mistakes == 0
    assert count_mistakes_at_threshold(feat, g, train, 0.5, "trollness") == 0


def test_half_threshold_is_optimal_random_instances(rng):
    # small-scale version of the acceptance sweep
    for _ in range(40):
        g = random_graph(rng, max_nodes=12, max_edges=60)
        mask = random_mask(rng, g)
        train = np.nonzero(mask)[0]
        feat = es.estimate_features(g, mask)
        for which in ("trollness", "unpleasantness"):
            _, best = es.optimal_threshold_bruteforce(feat, g, train, which)
            at_half = count_mistakes_at_threshold(feat, g, train, 0.5, which)
            assert at_half == best


def test_bruteforce_empty_training_set():
    g = _graph_with_that(0.5)
    feat = es.estimate_features(g, es.full_mask(g))
    with pytest.raises(ValueError):
        es.optimal_threshold_bruteforce(feat, g, np.array([], dtype=np.int64))


# --- two-feature separator ----------------------------------------------------

def test_kstar_derived_example():
    sep = es.fit_kstar_scores(np.array([0.2, 0.4, 0.9, 1.4]),
                              np.array([1, 1, -1, -1]))
    assert sep.k_star == pytest.approx(0.65)
    assert sep.train_mistakes == 0
    k, m = kstar_bruteforce([0.2, 0.4, 0.9, 1.4], [1, 1, -1, -1])
    assert m == 0
    assert k == pytest.approx(sep.k_star)


def test_kstar_single_class_sits_above_scores():
    scores = np.array([0.1, 0.3, 0.55])
    sep = es.fit_kstar_scores(scores, np.array([1, 1, 1]))
    assert sep.k_star > scores.max()
    assert sep.train_mistakes == 0


def test_kstar_single_negative_edge():
    sep = es.fit_kstar_scores(np.array([0.8]), np.array([-1]))
    assert sep.k_star < 0.8
    assert sep.k_star == pytest.approx(0.8, abs=1e-6)
    assert sep.train_mistakes == 0


def test_kstar_tie_prefers_closest_to_one_then_smaller():
    # both sentinels make exactly one mistake; distances to 1 are equal
    sep = es.fit_kstar_scores(np.array([1.0, 1.0]), np.array([1, -1]))
    assert sep.train_mistakes == 1
    assert sep.k_star < 1.0


def test_kstar_matches_bruteforce(rng):
    for _ in range(60):
        m = int(rng.integers(1, 40))
        scores = np.round(rng.random(m) * 2, 3)
        labels = rng.choice([-1, 1], m)
        sep = es.fit_kstar_scores(scores, labels)
        k, best = kstar_bruteforce(scores, labels)
        assert sep.train_mistakes == best
        assert sep.k_star == pytest.approx(k, abs=0.0)


def test_kstar_never_worse_than_unit_intercept(rng):
    for _ in range(40):
        m = int(rng.integers(1, 50))
        scores = rng.random(m) * 2
        labels = rng.choice([-1, 1], m)
        sep = es.fit_kstar_scores(scores, labels)
        assert sep.train_mistakes <= score_mistakes(scores, labels, 1.0)


def test_kstar_empty_training_rejected():
    with pytest.raises(ValueError):
        es.fit_kstar_scores(np.array([]), np.array([]))


def test_two_feature_rule():
    g = es.build_graph([(0, 1, -1)])
    feat = es.estimate_features(g, es.full_mask(g))
    # t_hat(0)=1 (its only out-edge is negative), u_hat(1)=1
    sep = es.Separator(k_star=1.0, tie_label=1, train_mistakes=0)
    pred = es.predict_two_feature(feat, sep, g, np.array([0]))
    assert pred.signs[0] == -1


def test_two_feature_tie_label():
    g = es.build_graph([(0, 1, -1), (0, 2, 1), (3, 1, 1), (3, 4, -1)])
    feat = es.estimate_features(g, es.full_mask(g))
    s = es.edge_scores(feat, g, np.array([0]))[0]
    sep = es.Separator(k_star=float(s), tie_label=-1, train_mistakes=0)
    pred = es.predict_two_feature(feat, sep, g, np.array([0]))
    assert pred.signs[0] == -1


def test_prediction_invariant_to_edge_order(rng):
    g = random_graph(rng, max_nodes=15, max_edges=80)
    mask = random_mask(rng, g)
    feat = es.estimate_features(g, mask)
    test_ids = np.nonzero(~mask)[0]
    if test_ids.shape[0] == 0:
        pytest.skip("mask covered the whole graph")
    perm = rng.permutation(test_ids.shape[0])
    a = es.predict_one_feature(feat, g, test_ids, "trollness")
    b = es.predict_one_feature(feat, g, test_ids[perm], "trollness")
    np.testing.assert_array_equal(a.signs[perm], b.signs)


# --- perceptron ---------------------------------------------------------------

def test_perceptron_separable_toy():
    pts = np.array([[0.1, 0.1], [0.9, 0.9]])
    labels = np.array([1, -1])
    model = es.fit_perceptron(pts, labels, seed=3)
    np.testing.assert_array_equal(model.predict(pts), labels)


def test_perceptron_constant_labels():
    pts = np.array([[0.2, 0.4], [0.6, 0.1], [0.5, 0.5]])
    for lab in (1, -1):
        labels = np.full(3, lab)
        model = es.fit_perceptron(pts, labels, seed=0)
        np.testing.assert_array_equal(model.predict(pts), labels)


def test_perceptron_deterministic_under_seed():
    rng = np.random.default_rng(5)
    pts = rng.random((40, 2))
    labels = rng.choice([-1, 1], 40)
    a = es.fit_perceptron(pts, labels, seed=11)
    b = es.fit_perceptron(pts, labels, seed=11)
    assert (a.w_t, a.w_u, a.bias) == (b.w_t, b.w_u, b.bias)


def test_perceptron_empty_rejected():
    with pytest.raises(ValueError):
        es.fit_perceptron(np.empty((0, 2)), np.array([]))


# --- reciprocal override --------------------------------------------------------

def test_reciprocal_override_replaces_sign():
    g = es.build_graph([(0, 1, 1), (1, 0, -1)])
    mask = np.array([False, True])   # j->i observed
    pred = es.Prediction(edge_ids=np.array([0]), signs=np.array([1], np.int8),
                         reciprocal_applied=np.array([False]))
    out = es.reciprocal_override(g, mask, pred)
    assert out.signs[0] == -1
    assert out.reciprocal_applied[0]


def test_reciprocal_override_requires_trained_reverse():
    g = es.build_graph([(0, 1, 1), (1, 0, -1)])
    mask = np.array([False, False])  # reverse exists but is not observed
    pred = es.Prediction(edge_ids=np.array([0]), signs=np.array([1], np.int8),
                         reciprocal_applied=np.array([False]))
    out = es.reciprocal_override(g, mask, pred)
    assert out.signs[0] == 1
    assert not out.reciprocal_applied[0]


def test_reciprocal_override_missing_reverse_untouched(rng):
    for _ in range(10):
        g = random_graph(rng, max_nodes=10, max_edges=40)
        mask = random_mask(rng, g)
        test_ids = np.nonzero(~mask)[0]
        feat = es.estimate_features(g, mask)
        pred = es.predict_one_feature(feat, g, test_ids, "trollness")
        out = es.reciprocal_override(g, mask, pred)
        rev = g.reverse_edge_ids(test_ids)
        has_trained_rev = (rev >= 0) & mask[np.maximum(rev, 0)]
        np.testing.assert_array_equal(out.reciprocal_applied, has_trained_rev)
        np.testing.assert_array_equal(out.signs[~has_trained_rev],
                                      pred.signs[~has_trained_rev])

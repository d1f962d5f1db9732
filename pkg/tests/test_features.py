import numpy as np
import pytest

import edgesign as es

from conftest import random_graph, random_mask


def test_estimate_matches_definition():
    # node 0 observed out labels {-,-,+}
    g = es.build_graph([(0, 1, -1), (0, 2, -1), (0, 3, 1), (0, 4, 1)])
    mask = np.array([True, True, True, False])
    feat = es.estimate_features(g, mask)
    assert feat.t_hat[0] == pytest.approx(2 / 3)
    assert feat.obs_out[0] == 3
    assert feat.obs_out_neg[0] == 2


def test_unobserved_node_gets_one_half():
    g = es.build_graph([(0, 1, -1)])
    feat = es.estimate_features(g, np.array([False]))
    assert feat.t_hat[0] == 0.5
    assert feat.u_hat[1] == 0.5


def test_all_negative_full_mask():
    g = es.build_graph([(0, 1, -1), (1, 2, -1), (2, 0, -1)])
    feat = es.estimate_features(g, es.full_mask(g))
    np.testing.assert_array_equal(feat.t_hat, np.ones(3))
    np.testing.assert_array_equal(feat.u_hat, np.ones(3))


def test_mask_length_mismatch():
    g = es.build_graph([(0, 1, 1)])
    with pytest.raises(ValueError):
        es.estimate_features(g, np.array([True, False]))


def test_full_mask_recovers_truth(rng):
    for _ in range(15):
        g = random_graph(rng)
        feat = es.estimate_features(g, es.full_mask(g))
        for i in range(g.node_count):
            op, on, ip, inn = g.degrees(i)
            if op + on:
                assert feat.t_hat[i] == on / (op + on)
            if ip + inn:
                assert feat.u_hat[i] == inn / (ip + inn)


def test_estimates_are_local(rng):
    # estimates for node i only depend on the mask over i's incident edges
    for _ in range(10):
        g = random_graph(rng, max_nodes=12, max_edges=50)
        mask = random_mask(rng, g)
        feat = es.estimate_features(g, mask)
        i = int(rng.integers(0, g.node_count))
        incident = np.zeros(g.edge_count, dtype=bool)
        incident[g.out_edge_ids(i)] = True
        incident[g.in_edge_ids(i)] = True
        local = es.estimate_features(g, mask & incident)
        assert local.t_hat[i] == feat.t_hat[i]
        assert local.u_hat[i] == feat.u_hat[i]


def test_estimates_bounded_by_degrees(rng):
    for _ in range(10):
        g = random_graph(rng)
        mask = random_mask(rng, g, min_train=0)
        feat = es.estimate_features(g, mask)
        for i in range(g.node_count):
            op, on, ip, inn = g.degrees(i)
            assert feat.obs_out[i] <= op + on
            assert feat.obs_in[i] <= ip + inn


# --- irregularity ------------------------------------------------------------

def test_complexity_example():
    g = es.build_graph([(0, 1, 1), (0, 2, 1), (0, 3, 1), (0, 4, -1)])
    stats = es.complexity(g)
    assert stats.psi_out[0] == 1
    assert stats.y_min_out[0] == -1
    assert stats.psi_out_total == 1


def test_least_used_label_tie_is_positive():
    g = es.build_graph([(0, 1, 1), (0, 2, -1)])
    stats = es.complexity(g)
    assert stats.psi_out[0] == 1
    assert stats.y_min_out[0] == 1


def test_complexity_bounds_and_totals(rng):
    for _ in range(15):
        g = random_graph(rng)
        stats = es.complexity(g)
        for i in range(g.node_count):
            op, on, ip, inn = g.degrees(i)
            assert 0 <= stats.psi_out[i] <= (op + on) // 2
            assert 0 <= stats.psi_in[i] <= (ip + inn) // 2
        assert stats.psi_out_total == stats.psi_out.sum()
        assert stats.psi_in_total == stats.psi_in.sum()
        if stats.psi_out_total > 0:
            assert stats.psi_bar0_out >= 1.0
        else:
            assert stats.psi_bar0_out is None


def test_psi_zero_iff_uniform_out_labels(rng):
    for _ in range(10):
        g = random_graph(rng, max_nodes=10, max_edges=30)
        stats = es.complexity(g)
        uniform = all(
            len(set(g.labels[g.out_edge_ids(i)].tolist())) <= 1
            for i in range(g.node_count))
        assert (stats.psi_out_total == 0) == uniform


def test_single_flip_changes_psi_by_at_most_one(rng):
    for _ in range(5):
        g = random_graph(rng, max_nodes=8, max_edges=25)
        base = es.complexity(g).psi_out_total
        for e in range(g.edge_count):
            labels = g.labels.copy()
            labels[e] = -labels[e]
            flipped = es.complexity(g.with_labels(labels)).psi_out_total
            assert flipped - base in (-1, 0, 1)


# --- consistency surrogate ---------------------------------------------------

def test_pfc_all_negative_node():
    g = es.build_graph([(0, 1, -1), (0, 2, -1)])
    pfc = es.pfc_surrogate(g)
    assert pfc.values[0] == 0.5


def test_pfc_balanced_node_is_zero():
    g = es.build_graph([(0, 1, -1), (0, 2, 1)])
    pfc = es.pfc_surrogate(g)
    assert pfc.values[0] == 0.0


def test_pfc_range_and_eligibility(rng):
    g = random_graph(rng)
    pfc = es.pfc_surrogate(g)
    n_eligible = sum(1 for i in range(g.node_count) if len(g.out_edge_ids(i)))
    assert pfc.values.shape[0] == n_eligible
    assert ((pfc.values >= 0) & (pfc.values <= 0.5)).all()
    q1, q2, q3 = pfc.quartiles
    assert q1 <= q2 <= q3

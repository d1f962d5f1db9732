import numpy as np
import pytest

import edgesign as es
from edgesign.active import log_sample_counts, train_mask_from_plan

from conftest import random_graph


def test_alcone_star_queries_one_center_edge():
    g = es.build_graph([(0, i, 1) for i in range(1, 6)])
    plan = es.select_alcone(g, "t", rng_seed=7)
    assert plan.distinct_count == 1
    assert plan.out_samples[0] == 1
    assert (plan.out_samples[1:] == 0).all()  # leaves have no out-edges


def test_alcone_empty_graph():
    g = es.build_graph([])
    plan = es.select_alcone(g, "t", rng_seed=0)
    assert plan.distinct_count == 0


def test_alclog_sample_counts():
    assert log_sample_counts(np.array([7]))[0] == 12   # 4*ceil(ln 8) = 12
    assert log_sample_counts(np.array([1]))[0] == 4    # 4*ceil(ln 2) = 4
    assert log_sample_counts(np.array([0]))[0] == 0


def test_alclog_star_distinct_bounded_by_degree():
    g = es.build_graph([(0, i, 1) for i in range(1, 8)])  # d_out(0) = 7
    plan = es.select_alclog(g, "t", rng_seed=3)
    assert plan.out_samples[0] == 12
    assert plan.distinct_count <= 7


def test_alclog_degree_one_distinct_is_one():
    g = es.build_graph([(0, 1, 1)])
    plan = es.select_alclog(g, "t", rng_seed=1)
    assert plan.out_samples[0] == 4
    assert plan.distinct_count == 1


def test_selection_is_nonadaptive(rng):
    # the plan must not depend on labels, only on topology and seed
    for select in (es.select_alcone, es.select_alclog):
        g = random_graph(rng, max_nodes=20, max_edges=80)
        flipped = g.with_labels(-g.labels)
        for which in ("t", "u", "tu"):
            a = select(g, which, rng_seed=42)
            b = select(flipped, which, rng_seed=42)
            np.testing.assert_array_equal(a.distinct_edge_ids, b.distinct_edge_ids)
            np.testing.assert_array_equal(a.out_samples, b.out_samples)
            np.testing.assert_array_equal(a.in_samples, b.in_samples)


def test_selection_deterministic_under_seed(rng):
    g = random_graph(rng)
    a = es.select_alclog(g, "tu", rng_seed=9)
    b = es.select_alclog(g, "tu", rng_seed=9)
    np.testing.assert_array_equal(a.distinct_edge_ids, b.distinct_edge_ids)


def test_alcone_distinct_equals_eligible_nodes(rng):
    for _ in range(10):
        g = random_graph(rng)
        plan = es.select_alcone(g, "t", rng_seed=int(rng.integers(1 << 30)))
        eligible = int(np.count_nonzero(g.out_degree > 0))
        # out-buckets are disjoint, so one draw per eligible node is distinct
        assert plan.distinct_count == eligible


def test_alclog_distinct_within_budget(rng):
    for _ in range(10):
        g = random_graph(rng)
        plan = es.select_alclog(g, "t", rng_seed=int(rng.integers(1 << 30)))
        budget = log_sample_counts(g.out_degree).sum()
        assert plan.out_samples.sum() == budget
        assert plan.distinct_count <= budget


def test_tu_plan_unions_both_directions():
    g = es.build_graph([(0, 1, 1)])
    plan = es.select_alcone(g, "tu", rng_seed=0)
    # the single edge is picked both as 0's out-sample and 1's in-sample
    assert plan.distinct_count == 1
    assert plan.out_samples[0] == 1
    assert plan.in_samples[1] == 1


def test_matching_graph_fully_queried_zero_mistakes():
    # every node has degree <= 1: the single-sample pass reveals everything
    g = es.build_graph([(0, 1, -1), (2, 3, 1), (4, 5, -1)])
    plan = es.select_alcone(g, "t", rng_seed=5)
    assert plan.distinct_count == g.edge_count
    pred, run = es.run_active(g, plan, "one-feature-t")
    assert pred.edge_ids.shape[0] == 0
    assert run.accuracy == 1.0


def test_run_active_rejects_foreign_plan(rng):
    g = random_graph(rng)
    other = es.build_graph([(0, 1, 1), (1, 2, 1)])
    plan = es.select_alcone(other, "t", rng_seed=0)
    if other.node_count == g.node_count and other.edge_count == g.edge_count:
        pytest.skip("random graph collided with the fixture")
    with pytest.raises(ValueError):
        es.run_active(g, plan, "one-feature-t")


def test_run_active_rejects_unknown_rule(triangle):
    plan = es.select_alcone(triangle, "t", rng_seed=0)
    with pytest.raises(ValueError):
        es.run_active(triangle, plan, "three-feature")


def test_run_active_uniform_labels_zero_mistakes(rng):
    # Psi_out = 0 labelings are predicted perfectly from one sample per node
    g = random_graph(rng, max_nodes=15, max_edges=60)
    trolls = rng.choice(g.node_count, size=3, replace=False)
    labels = es.generate_labels(g, es.LabelingModel.consistent(trolls))
    g = g.with_labels(labels)
    for s in range(5):
        plan = es.select_alcone(g, "t", rng_seed=s)
        pred, run = es.run_active(g, plan, "one-feature-t")
        assert (pred.signs == g.labels[pred.edge_ids]).all()
        assert run.accuracy == 1.0


def test_run_active_two_feature_path(rng):
    g = random_graph(rng, max_nodes=20, max_edges=100)
    plan = es.select_alclog(g, "tu", rng_seed=12)
    pred, run = es.run_active(g, plan, "two-feature")
    mask = train_mask_from_plan(g, plan)
    assert pred.edge_ids.shape[0] == np.count_nonzero(~mask)
    assert run.fraction == plan.distinct_count / g.edge_count
    assert 0.0 <= run.accuracy <= 1.0

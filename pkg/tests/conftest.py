import numpy as np
import pytest

import edgesign as es


def random_graph(rng, max_nodes=30, max_edges=200, neg_frac=None):
    """Random multigraph edge list (dups/self-loops allowed) run through
    the builder; labels are Bernoulli-negative."""
    n = int(rng.integers(2, max_nodes + 1))
    m = int(rng.integers(1, max_edges + 1))
    src = rng.integers(0, n, m)
    dst = rng.integers(0, n, m)
    if neg_frac is None:
        neg_frac = float(rng.uniform(0.05, 0.6))
    signs = np.where(rng.random(m) < neg_frac, -1, 1)
    return es.build_graph_arrays(src, dst, signs)


def random_mask(rng, g, min_train=1):
    e = g.edge_count
    k = int(rng.integers(min_train, e + 1))
    mask = np.zeros(e, dtype=bool)
    mask[rng.permutation(e)[:k]] = True
    return mask


@pytest.fixture
def rng():
    return np.random.default_rng(20240613)


@pytest.fixture
def triangle():
    return es.build_graph([(0, 1, 1), (1, 2, -1), (2, 0, 1)])

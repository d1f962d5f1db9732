"""Pure-numpy implementations of the hot kernels.

These are the fallback path used when numba is unavailable or when
EDGESIGN_BACKEND=numpy. Each function must stay bit-for-bit equivalent
to its @njit twin in numba_kernels.py; tests/test_backends.py enforces
that on random inputs.
"""
import numpy as np

# Sentinel offset for threshold candidates just outside the score range.
SENTINEL_EPS = 1e-9


def observed_counts(src, dst, labels, mask, n):
    """Per-node counts over the masked edge subset.

    Returns (out_neg, out_tot, in_neg, in_tot), each an int64 array of
    length n. out_tot[i] is the number of masked edges leaving i,
    out_neg[i] how many of those carry label -1; symmetric for ingoing.
    """
    neg = labels < 0
    msrc = src[mask]
    mdst = dst[mask]
    mneg = neg[mask]
    out_tot = np.bincount(msrc, minlength=n).astype(np.int64)
    out_neg = np.bincount(msrc[mneg], minlength=n).astype(np.int64)
    in_tot = np.bincount(mdst, minlength=n).astype(np.int64)
    in_neg = np.bincount(mdst[mneg], minlength=n).astype(np.int64)
    return out_neg, out_tot, in_neg, in_tot


def component_labels(src, dst, n):
    """Weakly-connected component id per node.

    Labels are canonical: every node gets the smallest node id in its
    component. Uses iterative min-label propagation with pointer
    jumping; each sweep is O(|E| + |V|) and the sweep count is
    logarithmic in the component diameter.
    """
    comp = np.arange(n, dtype=np.int64)
    if n == 0 or src.shape[0] == 0:
        return comp
    while True:
        prev = comp.copy()
        np.minimum.at(comp, src, comp[dst])
        np.minimum.at(comp, dst, comp[src])
        # comp[i] <= i always holds, so chasing labels only lowers them
        nxt = comp[comp]
        while not np.array_equal(nxt, comp):
            comp = nxt
            nxt = comp[comp]
        if np.array_equal(comp, prev):
            return comp


def boundary_mistakes(scores, neg):
    """Training mistakes for every threshold candidate of a 1-D separator.

    scores must be sorted ascending; neg[i] is True when the i-th edge is
    labeled -1. The decision rule is: predict -1 when score > k, +1 when
    score < k. Candidates are the midpoints of consecutive distinct
    scores plus two sentinels just outside the range, so no candidate
    ever coincides with a data point (degenerate float midpoints are
    dropped). Returns (candidates, mistakes) in ascending order.
    """
    m = scores.shape[0]
    neg_cum = np.cumsum(neg.astype(np.int64))
    total_neg = int(neg_cum[-1])
    total_pos = m - total_neg
    pos_cum = np.arange(1, m + 1, dtype=np.int64) - neg_cum

    gaps = np.nonzero(scores[:-1] != scores[1:])[0]
    mid = (scores[gaps] + scores[gaps + 1]) * 0.5
    ok = (mid > scores[gaps]) & (mid < scores[gaps + 1])
    gaps = gaps[ok]
    mid = mid[ok]
    # candidate sits after sorted index g: edges 0..g predicted +1, rest -1
    mk = neg_cum[gaps] + (total_pos - pos_cum[gaps])

    cands = np.concatenate((
        [scores[0] - SENTINEL_EPS], mid, [scores[-1] + SENTINEL_EPS]))
    mists = np.concatenate(([total_pos], mk, [total_neg])).astype(np.int64)
    return cands, mists


def perceptron_train(x0, x1, y, order, lr):
    """Averaged perceptron on 2-D inputs.

    order is an (epochs, m) matrix of visit indices (one shuffled row per
    epoch). Returns the step-averaged (w0, w1, bias). This twin runs the
    identical update sequence as the jitted version, just without JIT.
    """
    w0 = 0.0
    w1 = 0.0
    b = 0.0
    a0 = 0.0
    a1 = 0.0
    ab = 0.0
    epochs, m = order.shape
    for ep in range(epochs):
        row = order[ep]
        for k in range(m):
            i = row[k]
            if y[i] * (w0 * x0[i] + w1 * x1[i] + b) <= 0.0:
                w0 += lr * y[i] * x0[i]
                w1 += lr * y[i] * x1[i]
                b += lr * y[i]
            a0 += w0
            a1 += w1
            ab += b
    steps = epochs * m
    return a0 / steps, a1 / steps, ab / steps

"""Numba @njit twins of the numpy kernels.

fastmath stays off so float results match the numpy path bit-for-bit.
"""
import numpy as np
from numba import njit

from .numpy_kernels import SENTINEL_EPS


@njit(cache=True)
def observed_counts(src, dst, labels, mask, n):
    out_neg = np.zeros(n, np.int64)
    out_tot = np.zeros(n, np.int64)
    in_neg = np.zeros(n, np.int64)
    in_tot = np.zeros(n, np.int64)
    for e in range(src.shape[0]):
        if mask[e]:
            s = src[e]
            d = dst[e]
            out_tot[s] += 1
            in_tot[d] += 1
            if labels[e] < 0:
                out_neg[s] += 1
                in_neg[d] += 1
    return out_neg, out_tot, in_neg, in_tot


@njit(cache=True)
def component_labels(src, dst, n):
    # union-find, roots kept at the component's smallest node id
    parent = np.arange(n, dtype=np.int64)
    for e in range(src.shape[0]):
        a = src[e]
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        b = dst[e]
        while parent[b] != b:
            parent[b] = parent[parent[b]]
            b = parent[b]
        if a < b:
            parent[b] = a
        elif b < a:
            parent[a] = b
    out = np.empty(n, np.int64)
    for i in range(n):
        x = i
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        out[i] = x
    return out


@njit(cache=True)
def boundary_mistakes(scores, neg):
    m = scores.shape[0]
    total_neg = 0
    for i in range(m):
        if neg[i]:
            total_neg += 1
    total_pos = m - total_neg

    n_gaps = 0
    for i in range(m - 1):
        if scores[i] != scores[i + 1]:
            mid = (scores[i] + scores[i + 1]) * 0.5
            if scores[i] < mid < scores[i + 1]:
                n_gaps += 1

    cands = np.empty(n_gaps + 2, np.float64)
    mists = np.empty(n_gaps + 2, np.int64)
    cands[0] = scores[0] - SENTINEL_EPS
    mists[0] = total_pos

    k = 1
    neg_seen = 0
    pos_seen = 0
    for i in range(m - 1):
        if neg[i]:
            neg_seen += 1
        else:
            pos_seen += 1
        if scores[i] != scores[i + 1]:
            mid = (scores[i] + scores[i + 1]) * 0.5
            if scores[i] < mid < scores[i + 1]:
                cands[k] = mid
                mists[k] = neg_seen + (total_pos - pos_seen)
                k += 1

    cands[n_gaps + 1] = scores[m - 1] + SENTINEL_EPS
    mists[n_gaps + 1] = total_neg
    return cands, mists


@njit(cache=True)
def perceptron_train(x0, x1, y, order, lr):
    w0 = 0.0
    w1 = 0.0
    b = 0.0
    a0 = 0.0
    a1 = 0.0
    ab = 0.0
    epochs, m = order.shape
    for ep in range(epochs):
        for k in range(m):
            i = order[ep, k]
            if y[i] * (w0 * x0[i] + w1 * x1[i] + b) <= 0.0:
                w0 += lr * y[i] * x0[i]
                w1 += lr * y[i] * x1[i]
                b += lr * y[i]
            a0 += w0
            a1 += w1
            ab += b
    steps = epochs * m
    return a0 / steps, a1 / steps, ab / steps

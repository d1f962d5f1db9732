"""Node features and labeling-irregularity statistics.

Trollness of a node is the fraction of its outgoing edges labeled -1,
unpleasantness the same fraction over ingoing edges; both default to 1/2
when the node has no edges in that direction. The hat-estimates use only
the observed (training) edges. The irregularity of a labeling counts,
per node, the outgoing (or ingoing) edges carrying the node's minority
label.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _accel
from .graph import SignedDigraph


@dataclass(frozen=True)
class FeatureEstimates:
    """Observed per-node counts and the derived feature estimates."""
    obs_out_neg: np.ndarray   # int64 (V,)
    obs_out: np.ndarray
    obs_in_neg: np.ndarray
    obs_in: np.ndarray
    t_hat: np.ndarray         # float64 (V,), trollness estimate
    u_hat: np.ndarray         # float64 (V,), unpleasantness estimate


@dataclass(frozen=True)
class ComplexityStats:
    """Per-node and total label irregularity of a fully labeled graph."""
    psi_out: np.ndarray        # int64 (V,) min(d_out_pos, d_out_neg)
    psi_in: np.ndarray
    y_min_out: np.ndarray      # int8 (V,) least-used outgoing label, tie -> +1
    y_min_in: np.ndarray
    psi_out_total: int
    psi_in_total: int
    psi_out_frac: float        # psi_out_total / |E|
    psi_in_frac: float
    d_bar: float               # |E| / |V|
    psi_bar0_out: float | None  # mean psi_out over nodes with psi_out > 0
    psi_bar0_in: float | None


@dataclass(frozen=True)
class PfcSurrogate:
    """|1/2 - trollness| for every node with at least one outgoing edge."""
    values: np.ndarray
    quartiles: tuple[float, float, float]


def _ratio_or_half(neg: np.ndarray, tot: np.ndarray) -> np.ndarray:
    out = np.full(tot.shape[0], 0.5)
    np.divide(neg, tot, out=out, where=tot > 0)
    return out


def estimate_features(g: SignedDigraph, mask: np.ndarray) -> FeatureEstimates:
    """Estimate trollness/unpleasantness from the masked (observed) edges.

    mask is a boolean array over edge ids; True marks a training edge.
    Nodes without any observed edge in a direction get 1/2 for that
    feature. Single O(|E|) pass.
    """
    mask = np.ascontiguousarray(mask, dtype=bool)
    if mask.shape != (g.edge_count,):
        raise ValueError(
            f"mask length {mask.shape} does not match edge count {g.edge_count}")
    out_neg, out_tot, in_neg, in_tot = _accel.observed_counts(
        g.src, g.dst, g.labels, mask, g.node_count)
    return FeatureEstimates(
        obs_out_neg=out_neg, obs_out=out_tot,
        obs_in_neg=in_neg, obs_in=in_tot,
        t_hat=_ratio_or_half(out_neg, out_tot),
        u_hat=_ratio_or_half(in_neg, in_tot))


def full_mask(g: SignedDigraph) -> np.ndarray:
    return np.ones(g.edge_count, dtype=bool)


def complexity(g: SignedDigraph) -> ComplexityStats:
    """Irregularity of the graph's true labeling (uses all labels)."""
    out_neg, out_tot, in_neg, in_tot = _accel.observed_counts(
        g.src, g.dst, g.labels, full_mask(g), g.node_count)
    out_pos = out_tot - out_neg
    in_pos = in_tot - in_neg
    psi_out = np.minimum(out_pos, out_neg)
    psi_in = np.minimum(in_pos, in_neg)
    y_min_out = np.where(out_pos <= out_neg, 1, -1).astype(np.int8)
    y_min_in = np.where(in_pos <= in_neg, 1, -1).astype(np.int8)
    e = g.edge_count

    def _bar0(psi: np.ndarray) -> float | None:
        nz = psi[psi > 0]
        return float(nz.mean()) if nz.shape[0] else None

    return ComplexityStats(
        psi_out=psi_out, psi_in=psi_in,
        y_min_out=y_min_out, y_min_in=y_min_in,
        psi_out_total=int(psi_out.sum()), psi_in_total=int(psi_in.sum()),
        psi_out_frac=float(psi_out.sum() / e) if e else 0.0,
        psi_in_frac=float(psi_in.sum() / e) if e else 0.0,
        d_bar=e / g.node_count if g.node_count else 0.0,
        psi_bar0_out=_bar0(psi_out), psi_bar0_in=_bar0(psi_in))


def pfc_surrogate(g: SignedDigraph) -> PfcSurrogate:
    """Behaviour-consistency surrogate |1/2 - t(i)| over nodes with
    d_out(i) >= 1, with its quartiles."""
    out_neg, out_tot, _, _ = _accel.observed_counts(
        g.src, g.dst, g.labels, full_mask(g), g.node_count)
    has_out = out_tot > 0
    t = out_neg[has_out] / out_tot[has_out]
    values = np.abs(0.5 - t)
    if values.shape[0]:
        q1, q2, q3 = np.percentile(values, [25, 50, 75])
    else:
        q1 = q2 = q3 = float("nan")
    return PfcSurrogate(values=values, quartiles=(float(q1), float(q2), float(q3)))

"""In-memory directed signed graph with CSR-style adjacency.

A SignedDigraph stores an edge list with dense node ids plus two index
arrays (out_ptr/out_edges, in_ptr/in_edges) giving O(1) access to the
contiguous range of edge ids incident to each node. Graphs are immutable
after construction and safe to share across threads.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from functools import cached_property
from pathlib import Path

import numpy as np

from . import _accel


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class SignedDigraph:
    """Directed graph with +-1 edge labels and per-node adjacency indices.

    Edge ids are 0..E-1 in ingestion order, node ids 0..V-1 in order of
    first appearance. raw_ids maps each dense node id back to the
    identifier used by the source data.
    """
    node_count: int
    src: np.ndarray          # int64 (E,)
    dst: np.ndarray          # int64 (E,)
    labels: np.ndarray       # int8 (E,), values in {-1, +1}
    out_ptr: np.ndarray      # int64 (V+1,)
    out_edges: np.ndarray    # int64 (E,) edge ids grouped by src
    in_ptr: np.ndarray       # int64 (V+1,)
    in_edges: np.ndarray     # int64 (E,) edge ids grouped by dst
    raw_ids: np.ndarray      # (V,) raw identifier per dense node id

    @property
    def edge_count(self) -> int:
        return self.src.shape[0]

    def out_edge_ids(self, i: int) -> np.ndarray:
        self._check_node(i)
        return self.out_edges[self.out_ptr[i]:self.out_ptr[i + 1]]

    def in_edge_ids(self, i: int) -> np.ndarray:
        self._check_node(i)
        return self.in_edges[self.in_ptr[i]:self.in_ptr[i + 1]]

    def degrees(self, i: int) -> tuple[int, int, int, int]:
        """(d_out_pos, d_out_neg, d_in_pos, d_in_neg) of node i."""
        out_labels = self.labels[self.out_edge_ids(i)]
        in_labels = self.labels[self.in_edge_ids(i)]
        out_neg = int(np.count_nonzero(out_labels < 0))
        in_neg = int(np.count_nonzero(in_labels < 0))
        return (out_labels.shape[0] - out_neg, out_neg,
                in_labels.shape[0] - in_neg, in_neg)

    @cached_property
    def out_degree(self) -> np.ndarray:
        return _frozen(np.diff(self.out_ptr))

    @cached_property
    def in_degree(self) -> np.ndarray:
        return _frozen(np.diff(self.in_ptr))

    @cached_property
    def _pair_lookup(self) -> tuple[np.ndarray, np.ndarray]:
        """Sorted (src*V+dst) keys plus matching edge ids, for O(log E)
        reverse-edge queries. Valid because (src,dst) pairs are unique."""
        keys = self.src * np.int64(max(self.node_count, 1)) + self.dst
        order = np.argsort(keys, kind="stable")
        return _frozen(keys[order]), _frozen(order.astype(np.int64))

    def reverse_edge_ids(self, edge_ids: np.ndarray) -> np.ndarray:
        """Edge id of (dst,src) for each given edge, or -1 when absent."""
        found = np.full(len(edge_ids), -1, dtype=np.int64)
        keys_sorted, order = self._pair_lookup
        if keys_sorted.shape[0] == 0 or len(edge_ids) == 0:
            return found
        want = (self.dst[edge_ids] * np.int64(max(self.node_count, 1))
                + self.src[edge_ids])
        pos = np.searchsorted(keys_sorted, want)
        pos = np.minimum(pos, keys_sorted.shape[0] - 1)
        hit = keys_sorted[pos] == want
        found[hit] = order[pos[hit]]
        return found

    def with_labels(self, labels: np.ndarray) -> "SignedDigraph":
        """Same topology, different labeling."""
        labels = np.asarray(labels)
        if labels.shape != self.labels.shape:
            raise ValueError("label array length does not match edge count")
        if not np.isin(labels, (-1, 1)).all():
            raise ValueError("labels must be -1 or +1")
        return replace(self, labels=_frozen(labels.astype(np.int8)))

    def _check_node(self, i: int) -> None:
        if not 0 <= i < self.node_count:
            raise IndexError(f"node id {i} out of range [0, {self.node_count})")


@dataclass(frozen=True)
class WccView:
    """Largest weakly connected component as a standalone graph.

    nodes[k] / edges[k] give the parent graph's node / edge id behind the
    view's dense id k; coverage is |E_view| / |E_parent|.
    """
    graph: SignedDigraph
    nodes: np.ndarray     # parent node id per view node id
    edges: np.ndarray     # parent edge id per view edge id
    coverage: float


def _assemble(node_count: int, src: np.ndarray, dst: np.ndarray,
              labels: np.ndarray, raw_ids: np.ndarray) -> SignedDigraph:
    src = src.astype(np.int64, copy=False)
    dst = dst.astype(np.int64, copy=False)
    out_counts = np.bincount(src, minlength=node_count).astype(np.int64)
    in_counts = np.bincount(dst, minlength=node_count).astype(np.int64)
    out_ptr = np.concatenate(([0], np.cumsum(out_counts)))
    in_ptr = np.concatenate(([0], np.cumsum(in_counts)))
    out_edges = np.argsort(src, kind="stable").astype(np.int64)
    in_edges = np.argsort(dst, kind="stable").astype(np.int64)
    return SignedDigraph(
        node_count=node_count,
        src=_frozen(src), dst=_frozen(dst),
        labels=_frozen(labels.astype(np.int8, copy=False)),
        out_ptr=_frozen(out_ptr), out_edges=_frozen(out_edges),
        in_ptr=_frozen(in_ptr), in_edges=_frozen(in_edges),
        raw_ids=_frozen(raw_ids))


def _validate_signs(signs: np.ndarray, lines: np.ndarray | None) -> np.ndarray:
    signs = np.asarray(signs)
    bad = ~np.isin(signs, (-1, 1))
    if bad.any():
        k = int(np.argmax(bad))
        where = f"line {lines[k]}" if lines is not None else f"edge {k}"
        raise ValueError(f"{where}: sign must be -1 or 1, got {signs[k]!r}")
    return signs.astype(np.int8)


def build_graph(edges) -> SignedDigraph:
    """Build a SignedDigraph from an iterable of (raw_src, raw_dst, sign).

    Dense node ids follow first appearance (src before dst within a
    triple). Duplicate (src, dst) pairs keep the first occurrence's sign;
    self-loops are kept.
    """
    edges = list(edges)
    if not edges:
        return build_graph_arrays(np.empty(0, np.int64), np.empty(0, np.int64),
                                  np.empty(0, np.int8))
    return build_graph_arrays(np.asarray([e[0] for e in edges]),
                              np.asarray([e[1] for e in edges]),
                              np.asarray([e[2] for e in edges]))


def build_graph_arrays(raw_src, raw_dst, signs,
                       lines: np.ndarray | None = None) -> SignedDigraph:
    """Column-array variant of build_graph; lines may carry a source line
    number per edge for error messages."""
    raw_src = np.asarray(raw_src)
    raw_dst = np.asarray(raw_dst)
    signs = np.asarray(signs)
    if raw_src.shape[0] == 0:
        return _assemble(0, np.empty(0, np.int64), np.empty(0, np.int64),
                         np.empty(0, np.int8), np.empty(0, np.int64))
    signs = _validate_signs(signs, lines)

    if raw_src.dtype.kind not in "iu" or raw_dst.dtype.kind not in "iu":
        raw_src = raw_src.astype(str)
        raw_dst = raw_dst.astype(str)

    # first-appearance dense ids: interleave so src of edge k precedes dst
    tokens = np.empty(2 * raw_src.shape[0], dtype=raw_src.dtype)
    tokens[0::2] = raw_src
    tokens[1::2] = raw_dst
    uniq, first_pos = np.unique(tokens, return_index=True)
    appearance = np.argsort(first_pos, kind="stable")
    dense_of_uniq = np.empty(uniq.shape[0], dtype=np.int64)
    dense_of_uniq[appearance] = np.arange(uniq.shape[0], dtype=np.int64)
    src = dense_of_uniq[np.searchsorted(uniq, raw_src)]
    dst = dense_of_uniq[np.searchsorted(uniq, raw_dst)]
    raw_ids = uniq[appearance]
    n = uniq.shape[0]

    # drop duplicate (src, dst) pairs, keeping the first occurrence
    key = src * np.int64(n) + dst
    _, first = np.unique(key, return_index=True)
    keep = np.sort(first)
    return _assemble(n, src[keep], dst[keep], signs[keep], raw_ids)


def degrees(g: SignedDigraph, i: int) -> tuple[int, int, int, int]:
    return g.degrees(i)


def largest_wcc(g: SignedDigraph) -> WccView:
    """Extract the weakly connected component with the most edges.

    Ties go to the component with more nodes, then to the one containing
    the smallest dense node id.
    """
    if g.node_count == 0:
        raise ValueError("graph has no nodes")
    comp = _accel.component_labels(g.src, g.dst, g.node_count)
    node_counts = np.bincount(comp, minlength=g.node_count)
    edge_counts = np.bincount(comp[g.src], minlength=g.node_count)
    roots = np.nonzero(node_counts)[0]
    order = np.lexsort((roots, -node_counts[roots], -edge_counts[roots]))
    best = roots[order[0]]

    nodes = np.nonzero(comp == best)[0].astype(np.int64)
    edge_ids = np.nonzero(comp[g.src] == best)[0].astype(np.int64)
    remap = np.full(g.node_count, -1, dtype=np.int64)
    remap[nodes] = np.arange(nodes.shape[0], dtype=np.int64)
    sub = _assemble(nodes.shape[0], remap[g.src[edge_ids]],
                    remap[g.dst[edge_ids]], g.labels[edge_ids], nodes.copy())
    coverage = edge_ids.shape[0] / g.edge_count if g.edge_count else 1.0
    return WccView(graph=sub, nodes=_frozen(nodes),
                   edges=_frozen(edge_ids), coverage=coverage)


def _parse_lines(path: Path):
    raw_src, raw_dst, signs, lines = [], [], [], []
    with open(path, "r", encoding="utf-8") as fh:
        for ln, line in enumerate(fh, start=1):
            data = line.split("#", 1)[0].strip()
            if not data:
                continue
            parts = data.split()
            if len(parts) != 3:
                raise ValueError(
                    f"{path}: line {ln}: expected 'src dst sign', got {line.rstrip()!r}")
            try:
                sign = int(parts[2])
            except ValueError:
                raise ValueError(
                    f"{path}: line {ln}: sign must be -1 or 1, got {parts[2]!r}") from None
            if sign not in (-1, 1):
                raise ValueError(f"{path}: line {ln}: sign must be -1 or 1, got {sign}")
            raw_src.append(parts[0])
            raw_dst.append(parts[1])
            signs.append(sign)
            lines.append(ln)
    try:
        src_arr = np.asarray([int(s) for s in raw_src], dtype=np.int64)
        dst_arr = np.asarray([int(s) for s in raw_dst], dtype=np.int64)
    except ValueError:
        src_arr = np.asarray(raw_src)
        dst_arr = np.asarray(raw_dst)
    return src_arr, dst_arr, np.asarray(signs, np.int8), np.asarray(lines)


def load_edgelist(path) -> SignedDigraph:
    """Read the canonical edge-list format: '#'-comments skipped, data
    lines 'src dst sign' with sign in {-1, 1}."""
    path = Path(path)
    try:
        import pandas as pd
        df = pd.read_csv(path, sep=r"\s+", comment="#", header=None,
                         names=("s", "d", "y"))
        if all(df[c].dtype.kind in "iu" for c in ("s", "d", "y")):
            src = df["s"].to_numpy(np.int64)
            dst = df["d"].to_numpy(np.int64)
            signs = df["y"].to_numpy(np.int64)
            if np.isin(signs, (-1, 1)).all():
                return build_graph_arrays(src, dst, signs)
    except Exception:
        pass
    # slow path: precise per-line diagnostics
    src_arr, dst_arr, signs, lines = _parse_lines(path)
    return build_graph_arrays(src_arr, dst_arr, signs, lines=lines)


def save_edgelist(g: SignedDigraph, path) -> Path:
    """Write the canonical edge-list format; round-trips with load_edgelist."""
    path = Path(path)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for e in range(g.edge_count):
            fh.write(f"{g.raw_ids[g.src[e]]} {g.raw_ids[g.dst[e]]} {g.labels[e]}\n")
    return path

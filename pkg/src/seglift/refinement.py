"""KNN neighborhoods and the three schemes that repair lifted labels.

Neighborhood contract: each query point's K neighbors are ordered by
ascending Euclidean distance; exact ties are broken by ascending point
index, except that the query point itself always comes first (so with
self-inclusion, neighbor 0 is the query at distance 0 and K=1 is the
identity refinement).  The tie rules make results independent of thread
count, build order, and the underlying search structure.

Vote accumulation is performed neighbor-by-neighbor in neighbor order so
that floating-point sums are reproducible against a direct per-point
reimplementation.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.spatial import cKDTree

from .core import IGNORE_ID, PointCloud
from .errors import BadK, DimMismatch, EmptyInput

TIE_BREAKS = ("lowest", "keep")


@dataclass(eq=False)
class KdTree:
    """Immutable spatial index over the masked subset of a cloud."""

    points: np.ndarray     # (M, 3) float64, the indexed subset
    index_map: np.ndarray  # (M,) positions of the subset in the original cloud
    n_total: int           # size of the original cloud
    _kd: cKDTree = field(repr=False)

    def __len__(self) -> int:
        return self.points.shape[0]

    def neighbors(self, k: int, include_self: bool = True):
        """K nearest indexed points for every indexed point.

        Returns (indices, distances), both (M, k); indices are positions
        in the indexed subset (apply `index_map` for original-cloud ids).
        """
        m = len(self)
        limit = m if include_self else m - 1
        if not 1 <= k <= limit:
            raise BadK(f"k={k} outside [1, {limit}] for {m} indexed points")

        # Probe two extra neighbors: one to absorb the query itself when
        # excluded, one to detect distance ties that straddle the cut.
        kq = min(k + 2, m)
        _, raw_i = self._kd.query(self.points, k=kq)
        raw_i = raw_i.reshape(m, kq)

        d2 = ((self.points[raw_i] - self.points[:, None, :]) ** 2).sum(axis=2)
        qidx = np.arange(m)[:, None]
        not_self = raw_i != qidx
        order = np.lexsort((raw_i, not_self, d2), axis=-1)
        sd2 = np.take_along_axis(d2, order, axis=1)
        si = np.take_along_axis(raw_i, order, axis=1)
        s_not_self = np.take_along_axis(not_self, order, axis=1)

        start = np.zeros(m, dtype=np.int64)
        exact = np.ones(m, dtype=bool)
        if include_self:
            # Self must be present and lead the row; with many coincident
            # points the search may have dropped it.
            exact &= ~s_not_self[:, 0]
        else:
            # Drop the query from its own candidate list when present.
            start = (~s_not_self[:, 0]).astype(np.int64)
        end = start + k
        if kq > k + 1 or not include_self:
            # A tie across the cut means the probe may have missed a
            # lower-index candidate; fall back to an exhaustive row.
            has_probe = end < kq
            tied = np.zeros(m, dtype=bool)
            rows = np.flatnonzero(has_probe)
            tied[rows] = sd2[rows, end[rows]] <= sd2[rows, end[rows] - 1]
            exact &= ~tied
        if kq == m:
            # The whole set is in the row: its sorted prefix is exact and
            # the query is necessarily present.
            exact[:] = True

        cols = np.arange(k)
        take = start[:, None] + cols[None, :]
        idx = np.take_along_axis(si, np.minimum(take, kq - 1), axis=1)
        for row in np.flatnonzero(~exact):
            idx[row] = self._exhaustive_row(row, k, include_self)

        diff = self.points[idx] - self.points[:, None, :]
        dist = np.sqrt((diff ** 2).sum(axis=2))
        return idx, dist

    def _exhaustive_row(self, row: int, k: int, include_self: bool) -> np.ndarray:
        d2 = ((self.points - self.points[row]) ** 2).sum(axis=1)
        ids = np.arange(len(self))
        not_self = ids != row
        order = np.lexsort((ids, not_self, d2))
        if not include_self:
            order = order[order != row]
        return order[:k]


def build_tree(cloud: PointCloud, mask=None) -> KdTree:
    """Index the masked points (all points if mask is None)."""
    n = len(cloud)
    if mask is None:
        index_map = np.arange(n)
    else:
        arr = mask.mask if hasattr(mask, "mask") else np.asarray(mask, dtype=bool)
        if arr.shape != (n,):
            raise DimMismatch(f"mask length {arr.shape} vs {n} points")
        index_map = np.flatnonzero(arr)
    if index_map.size == 0:
        raise EmptyInput("mask selects no points")
    pts = np.ascontiguousarray(cloud.xyz[index_map], dtype=np.float64)
    return KdTree(points=pts, index_map=index_map, n_total=n, _kd=cKDTree(pts))


def _checked_probs(probs: np.ndarray, tree: KdTree, k: int) -> np.ndarray:
    probs = np.asarray(probs, dtype=np.float64)
    if probs.ndim != 2 or probs.shape[0] != tree.n_total:
        raise DimMismatch(
            f"probs must be ({tree.n_total}, C), got {probs.shape}"
        )
    if k % 2 == 0:
        raise BadK(f"k must be odd, got {k}")
    return probs


def _scatter_labels(tree: KdTree, winners: np.ndarray) -> np.ndarray:
    out = np.full(tree.n_total, IGNORE_ID, dtype=np.uint16)
    out[tree.index_map] = winners.astype(np.uint16)
    return out


def refine_majority(probs: np.ndarray, tree: KdTree, k: int,
                    include_self: bool = True, tie_break: str = "lowest") -> np.ndarray:
    """Most frequent argmax label among the K neighbors.

    Vote ties resolve to the lowest class id, or to the point's own label
    with tie_break="keep".  Points outside the indexed subset get IGNORE_ID.
    """
    if tie_break not in TIE_BREAKS:
        raise ValueError(f"tie_break must be one of {TIE_BREAKS}")
    probs = _checked_probs(probs, tree, k)
    sub = probs[tree.index_map]
    labels = np.argmax(sub, axis=1)
    idx, _ = tree.neighbors(k, include_self)
    m, c = sub.shape
    votes = np.zeros((m, c), dtype=np.int64)
    rows = np.arange(m)
    for j in range(k):
        np.add.at(votes, (rows, labels[idx[:, j]]), 1)
    winners = votes.argmax(axis=1)  # first max -> lowest class id
    if tie_break == "keep":
        top = votes.max(axis=1, keepdims=True)
        tied = (votes == top).sum(axis=1) > 1
        winners = np.where(tied, labels, winners)
    return _scatter_labels(tree, winners)


def refine_distance_weighted(probs: np.ndarray, tree: KdTree, k: int,
                             include_self: bool = True) -> np.ndarray:
    """Argmax over classes of summed (1 - softmax(distances)) neighbor weights.

    Closer neighbors carry more weight; equal distances degrade to plain
    majority voting.  Ties resolve to the lowest class id.
    """
    probs = _checked_probs(probs, tree, k)
    sub = probs[tree.index_map]
    labels = np.argmax(sub, axis=1)
    idx, dist = tree.neighbors(k, include_self)
    e = np.exp(dist - dist.max(axis=1, keepdims=True))
    weights = 1.0 - e / e.sum(axis=1, keepdims=True)
    m, c = sub.shape
    acc = np.zeros((m, c), dtype=np.float64)
    voted = np.zeros((m, c), dtype=bool)
    rows = np.arange(m)
    for j in range(k):
        np.add.at(acc, (rows, labels[idx[:, j]]), weights[:, j])
        voted[rows, labels[idx[:, j]]] = True
    # Only classes that received a vote compete; at k=1 every weight is
    # zero, which must still return the self label, not class 0.
    acc[~voted] = -np.inf
    return _scatter_labels(tree, acc.argmax(axis=1))


def refine_confidence_avg(probs: np.ndarray, tree: KdTree, k: int,
                          include_self: bool = True):
    """Unweighted mean of the K neighbors' probability rows.

    Returns (labels, refined): the argmax of each averaged row (ties ->
    lowest class id) and the full refined (N, C) matrix with zero rows
    outside the indexed subset.  Averaging normalized rows keeps the
    output normalized.
    """
    probs = _checked_probs(probs, tree, k)
    sub = probs[tree.index_map]
    idx, _ = tree.neighbors(k, include_self)
    acc = np.zeros_like(sub)
    for j in range(k):
        acc += sub[idx[:, j]]
    refined_sub = acc / k
    refined = np.zeros((tree.n_total, sub.shape[1]), dtype=np.float64)
    refined[tree.index_map] = refined_sub
    return _scatter_labels(tree, refined_sub.argmax(axis=1)), refined

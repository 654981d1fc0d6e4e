"""Independent brute-force reimplementations used as test oracles.

These deliberately avoid the library's vectorized code paths: neighbor
search is exhaustive O(N^2) with per-row Python sorting, votes are
accumulated point by point with plain dicts and lists.  They implement
the same documented contracts (ascending distance, index tie-break,
query-first self-inclusion, lowest-class-id vote ties) so the library
must match them bit-exactly on labels.
"""

from collections import defaultdict

import numpy as np


def knn_brute(points: np.ndarray, k: int, include_self: bool = True):
    """Exhaustive K-nearest-neighbor search over all points as queries."""
    points = np.asarray(points, dtype=np.float64)
    n = points.shape[0]
    idx = np.empty((n, k), dtype=np.int64)
    dist = np.empty((n, k), dtype=np.float64)
    for q in range(n):
        d2 = ((points - points[q]) ** 2).sum(axis=1)
        order = sorted(range(n), key=lambda j: (d2[j], j != q, j))
        if not include_self:
            order = [j for j in order if j != q]
        chosen = order[:k]
        idx[q] = chosen
        dist[q] = np.sqrt(d2[chosen])
    return idx, dist


def argmax_labels(probs: np.ndarray) -> list[int]:
    return [int(np.argmax(probs[i])) for i in range(probs.shape[0])]


def majority_brute(probs: np.ndarray, idx: np.ndarray,
                   tie_break: str = "lowest") -> np.ndarray:
    """Per-query majority vote over argmax labels; ties to lowest class id."""
    labels = argmax_labels(probs)
    out = np.empty(idx.shape[0], dtype=np.int64)
    for q in range(idx.shape[0]):
        counts: dict[int, int] = defaultdict(int)
        for j in idx[q]:
            counts[labels[j]] += 1
        top = max(counts.values())
        winners = sorted(c for c, v in counts.items() if v == top)
        if tie_break == "keep" and len(winners) > 1:
            out[q] = labels[q]
        else:
            out[q] = winners[0]
    return out


def distance_weighted_brute(probs: np.ndarray, idx: np.ndarray,
                            dist: np.ndarray) -> np.ndarray:
    """Per-query vote with weights 1 - softmax(distances); ties to lowest id."""
    labels = argmax_labels(probs)
    out = np.empty(idx.shape[0], dtype=np.int64)
    for q in range(idx.shape[0]):
        d = dist[q]
        e = np.exp(d - np.max(d))
        w = 1.0 - e / np.sum(e)
        acc: dict[int, float] = defaultdict(float)
        for pos, j in enumerate(idx[q]):
            acc[labels[j]] += w[pos]
        best_c, best_v = -1, -np.inf
        for c in sorted(acc):
            if acc[c] > best_v:
                best_c, best_v = c, acc[c]
        out[q] = best_c
    return out


def confidence_avg_brute(probs: np.ndarray, idx: np.ndarray):
    """Per-query unweighted mean of neighbor probability rows."""
    m, c = probs.shape
    k = idx.shape[1]
    refined = np.empty((m, c), dtype=np.float64)
    out = np.empty(m, dtype=np.int64)
    for q in range(m):
        acc = np.zeros(c, dtype=np.float64)
        for j in idx[q]:
            acc += probs[j]
        row = acc / k
        refined[q] = row
        out[q] = int(np.argmax(row))
    return out, refined


def class_thresholds_scalar(counts, tau_min: float, tau_max: float) -> list[float]:
    """Pure-Python per-class thresholds; ignore class pinned to tau_max."""
    real = list(counts[1:])
    max_count = max(real)
    taus = [c / max_count * (tau_max - tau_min) + tau_min for c in counts]
    taus[0] = tau_max
    return taus


def project_scalar(p_mat, t_mat, xyz):
    """Single-point projection with plain Python floats."""
    x, y, z = (float(v) for v in xyz)
    cam = [
        sum(t_mat[r][c] * v for c, v in enumerate((x, y, z, 1.0)))
        for r in range(3)
    ]
    img = [
        sum(p_mat[r][c] * v for c, v in enumerate((cam[0], cam[1], cam[2], 1.0)))
        for r in range(3)
    ]
    depth = cam[2]
    if depth <= 0.0:
        return None, None, depth
    return img[0] / img[2], img[1] / img[2], depth


def in_frustum_scalar(p_mat, t_mat, width, height, xyz) -> bool:
    u, v, depth = project_scalar(p_mat, t_mat, xyz)
    if depth <= 0.0:
        return False
    return 0.0 <= u < width and 0.0 <= v < height

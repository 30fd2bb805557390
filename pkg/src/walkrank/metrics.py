"""Partition-agreement and classification metrics: ARI, NMI, AMI,
balanced accuracy.

ARI is computed in exact integer arithmetic with a single final float
division, so it agrees bit for bit with pair-counting oracles. MI uses
the entropy form H(x) + H(y) - H(x,y), which makes NMI and AMI of
identical partitions exactly 1. Entropies use natural logs; NMI/AMI
normalize by the arithmetic mean of the two entropies.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class ContingencyTable:
    counts: np.ndarray
    row_sums: np.ndarray
    col_sums: np.ndarray
    n: int


def _as_labels(x) -> np.ndarray:
    labels = getattr(x, "labels", x)
    return np.asarray(labels)


def contingency(x, y) -> ContingencyTable:
    xs = _as_labels(x)
    ys = _as_labels(y)
    if xs.shape != ys.shape or xs.ndim != 1:
        raise ValueError("partitions must be 1-D and the same length")
    if xs.size == 0:
        raise ValueError("partitions must be non-empty")
    _, xi = np.unique(xs, return_inverse=True)
    _, yi = np.unique(ys, return_inverse=True)
    r = int(xi.max()) + 1
    c = int(yi.max()) + 1
    counts = np.bincount(xi * c + yi, minlength=r * c).reshape(r, c)
    return ContingencyTable(
        counts=counts,
        row_sums=counts.sum(axis=1),
        col_sums=counts.sum(axis=0),
        n=int(xs.size),
    )


def _identical_up_to_relabel(t: ContingencyTable) -> bool:
    # same set partition <=> exactly one nonzero per row and per column
    nz = t.counts > 0
    return bool((nz.sum(axis=1) == 1).all() and (nz.sum(axis=0) == 1).all())


def _pairs(counts) -> int:
    return sum(int(c) * (int(c) - 1) // 2 for c in np.ravel(counts))


def ari(x, y) -> float:
    """Adjusted Rand Index via exact integer pair counting."""
    t = contingency(x, y)
    index = _pairs(t.counts)
    a = _pairs(t.row_sums)
    b = _pairs(t.col_sums)
    total = t.n * (t.n - 1) // 2
    # (index - expected) / (max - expected), cleared of the /total and /2
    num = 2 * (total * index - a * b)
    den = total * (a + b) - 2 * a * b
    if den == 0:
        return 1.0 if _identical_up_to_relabel(t) else 0.0
    return num / den


def _entropy_from_counts(counts: np.ndarray, n: int) -> float:
    c = counts[counts > 0].astype(float)
    return float(np.log(n) - (c * np.log(c)).sum() / n)


def _mutual_information(t: ContingencyTable) -> tuple[float, float, float]:
    hx = _entropy_from_counts(t.row_sums, t.n)
    hy = _entropy_from_counts(t.col_sums, t.n)
    hxy = _entropy_from_counts(t.counts, t.n)
    mi = max(0.0, hx + hy - hxy)
    return mi, hx, hy


def nmi(x, y) -> float:
    """MI / mean(H(x), H(y)); 1.0 when both entropies are 0, 0.0 if exactly one is."""
    t = contingency(x, y)
    mi, hx, hy = _mutual_information(t)
    if hx == 0.0 and hy == 0.0:
        return 1.0
    if hx == 0.0 or hy == 0.0:
        return 0.0
    return mi / (0.5 * (hx + hy))


def expected_mutual_information(t: ContingencyTable) -> float:
    """E[MI] over the hypergeometric model with the table's margins.

    Exact sum with log-factorial accumulation so large counts cannot
    overflow.
    """
    n = t.n
    logfact = np.concatenate(([0.0], np.cumsum(np.log(np.arange(1, n + 1)))))
    log_n = np.log(n)
    emi = 0.0
    for ai in (int(v) for v in t.row_sums):
        for bj in (int(v) for v in t.col_sums):
            lo = max(1, ai + bj - n)
            hi = min(ai, bj)
            for nij in range(lo, hi + 1):
                log_pmf = (
                    logfact[ai]
                    + logfact[bj]
                    + logfact[n - ai]
                    + logfact[n - bj]
                    - logfact[n]
                    - logfact[nij]
                    - logfact[ai - nij]
                    - logfact[bj - nij]
                    - logfact[n - ai - bj + nij]
                )
                emi += (nij / n) * (log_n + np.log(nij) - np.log(ai * bj)) * np.exp(log_pmf)
    return emi


def ami(x, y) -> float:
    """(MI - E[MI]) / (mean entropy - E[MI]); 1 or 0 on degenerate denominators."""
    t = contingency(x, y)
    mi, hx, hy = _mutual_information(t)
    emi = expected_mutual_information(t)
    denom = 0.5 * (hx + hy) - emi
    if abs(denom) < 1e-12 * max(1.0, 0.5 * (hx + hy)):
        return 1.0 if _identical_up_to_relabel(t) else 0.0
    return (mi - emi) / denom


def balanced_accuracy(true, pred) -> float:
    """Mean per-class recall over the classes present in `true`."""
    ts = _as_labels(true)
    ps = _as_labels(pred)
    if ts.shape != ps.shape or ts.ndim != 1:
        raise ValueError("label arrays must be 1-D and the same length")
    if ts.size == 0:
        raise ValueError("true labels must contain at least one class member")
    classes = np.unique(ts)
    recalls = [np.mean(ps[ts == c] == c) for c in classes]
    return float(np.mean(recalls))

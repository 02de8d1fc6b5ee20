"""Rankings, Spearman correlation and top-K correlation curves."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateInput, KOutOfRange, LengthMismatch

__all__ = ["Ranking", "rank", "spearman", "RankComparison", "topk_curve", "default_ks", "top_n_table"]


@dataclass(frozen=True)
class Ranking:
    order: np.ndarray  # node ids, descending score, ties by node id
    ranks: np.ndarray  # 1 = best; tied groups share their mean position


def rank(scores, rtol: float = 0.0) -> Ranking:
    """Average ranks in descending score order.

    Scores within ``rtol`` (relative) of their sorted neighbour count as
    tied, which absorbs round-off between nominally equal centralities.
    """
    s = np.asarray(scores, dtype=float)
    order = np.lexsort((np.arange(len(s)), -s))
    ranks = np.empty(len(s))
    start = 0
    for pos in range(1, len(s) + 1):
        if pos < len(s):
            a, b = s[order[pos - 1]], s[order[pos]]
            if a - b <= rtol * max(abs(a), abs(b)):
                continue
        ranks[order[start:pos]] = 0.5 * (start + 1 + pos)
        start = pos
    return Ranking(order, ranks)


def _pearson(x: np.ndarray, y: np.ndarray) -> float:
    dx = x - x.mean()
    dy = y - y.mean()
    sxx = float(np.dot(dx, dx))
    syy = float(np.dot(dy, dy))
    if sxx == 0 or syy == 0:
        raise DegenerateInput("rank correlation is undefined when every score is tied")
    return float(np.clip(np.dot(dx, dy) / np.sqrt(sxx * syy), -1.0, 1.0))


def spearman(a, b, rtol: float = 0.0) -> float:
    """Spearman's rho: Pearson correlation of average-rank vectors."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape or a.ndim != 1:
        raise LengthMismatch(f"score vectors differ in shape: {a.shape} vs {b.shape}")
    if len(a) < 2:
        raise DegenerateInput("rank correlation needs at least two items")
    return _pearson(rank(a, rtol).ranks, rank(b, rtol).ranks)


@dataclass(frozen=True)
class RankComparison:
    rho_full: float
    curve_ab: tuple  # (K, rho) pairs; rho is nan where the top-K positions are all tied
    curve_ba: tuple


def default_ks(n: int, points: int = 25) -> list:
    """Roughly logarithmic grid over ``2..n`` that always ends at ``n``."""
    if n < 2:
        return []
    grid = np.unique(np.round(np.geomspace(2, n, num=min(points, n - 1))).astype(int))
    return sorted(set(int(k) for k in grid) | {n})


def _direction(ra: Ranking, rb: Ranking, k: int) -> float:
    top = np.sort(ra.order[:k])
    try:
        return _pearson(rank(-ra.ranks[top]).ranks, rank(-rb.ranks[top]).ranks)
    except DegenerateInput:
        return float("nan")


def topk_curve(a, b, ks=None, rtol: float = 0.0) -> RankComparison:
    """Bidirectional top-K Spearman curves.

    Direction a->b at K takes the K best nodes by ``a`` and correlates their
    positions in ``a`` with their positions in the full ranking by ``b``;
    b->a is the mirror image.  Both end at ``K = N`` with the full rho.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape or a.ndim != 1:
        raise LengthMismatch(f"score vectors differ in shape: {a.shape} vs {b.shape}")
    n = len(a)
    ks = default_ks(n) if ks is None else sorted(set(int(k) for k in ks))
    for k in ks:
        if not 2 <= k <= n:
            raise KOutOfRange(f"K = {k} outside 2..{n}")
    ra, rb = rank(a, rtol), rank(b, rtol)
    rho_full = _pearson(ra.ranks, rb.ranks)
    curve_ab = tuple((k, _direction(ra, rb, k)) for k in ks)
    curve_ba = tuple((k, _direction(rb, ra, k)) for k in ks)
    return RankComparison(rho_full, curve_ab, curve_ba)


def top_n_table(results, n: int, labels) -> dict:
    """``{method: [n best labels]}``, descending score, ties by label."""
    table = {}
    for method, scores in results:
        scores = np.asarray(scores, dtype=float)
        if n > len(scores):
            raise KOutOfRange(f"n = {n} exceeds the {len(scores)} ranked nodes")
        order = sorted(range(len(scores)), key=lambda i: (-scores[i], labels[i]))
        table[method] = [labels[i] for i in order[:n]]
    return table

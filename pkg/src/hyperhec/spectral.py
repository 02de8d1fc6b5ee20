"""Spectral centralities computed by shifted power iteration.

Every solver reduces to the same loop over a nonnegative, homogeneous
contraction ``F`` of degree ``d``::

    y  = F(x) + shift * x**d
    x' = normalize_L1(y ** (1/d))

The Collatz-Wielandt ratios ``y_i / x_i**d`` bracket ``lambda + shift``;
iteration stops once the bracket is narrower than ``tol`` and reports the
iterate the bracket was measured at, so the relative residual of the
returned pair is at most ``tol / 2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .connectivity import directed_operator_tensor, is_strongly_connected, scc
from .errors import HypergraphError, NotConverged, NotFHypergraph, NotStronglyConnected
from .hypergraph import Digraph, Hypergraph, tail_uniformity
from .tensor import KStepOperator, OrbitTensor, apply, kstep_apply, transpose

__all__ = [
    "SolverConfig",
    "CentralityResult",
    "power_iterate",
    "hec",
    "hec_directed",
    "directed_apply",
    "f_digraph",
    "ec_f_hypergraph",
    "ec_projection",
    "kstep_centrality",
    "residual",
]


@dataclass(frozen=True)
class SolverConfig:
    tol: float = 1e-10
    max_iter: int = 10000
    shift: float = 1.0

    def __post_init__(self):
        if not self.tol > 0:
            raise HypergraphError(f"tol must be positive, got {self.tol}")
        if self.max_iter < 1:
            raise HypergraphError(f"max_iter must be >= 1, got {self.max_iter}")
        if not self.shift >= 0:
            raise HypergraphError(f"shift must be nonnegative, got {self.shift}")


@dataclass(frozen=True)
class CentralityResult:
    scores: np.ndarray  # L1-normalized
    eigenvalue: float  # shift removed
    iterations: int
    residual: float  # final bracket width
    converged: bool

    def __eq__(self, other):
        if not isinstance(other, CentralityResult):
            return NotImplemented
        return (
            np.array_equal(self.scores, other.scores)
            and self.eigenvalue == other.eigenvalue
            and self.iterations == other.iterations
            and self.residual == other.residual
            and self.converged == other.converged
        )


def _start_vector(n: int, x0=None, seed=None) -> np.ndarray:
    if x0 is None and seed is None:
        return np.full(n, 1.0 / n)
    if x0 is None:
        x0 = np.random.default_rng(seed).uniform(0.05, 1.0, size=n)
    x0 = np.asarray(x0, dtype=float)
    if x0.shape != (n,) or np.any(x0 <= 0) or not np.all(np.isfinite(x0)):
        raise HypergraphError("start vector must be strictly positive with one entry per node")
    return x0 / x0.sum()


def power_iterate(contract, n: int, degree: int, cfg: SolverConfig = SolverConfig(), x0=None, seed=None):
    """Shifted power iteration for ``lambda x**degree = contract(x)``.

    ``x0`` or ``seed`` select a (random) positive start; the default is the
    uniform vector.  Raises :class:`NotConverged` carrying the partial
    result when ``cfg.max_iter`` is exhausted.
    """
    if n == 0:
        raise HypergraphError("cannot compute a centrality on an empty node set")
    x = _start_vector(n, x0, seed)
    width = math.inf
    for it in range(1, cfg.max_iter + 1):
        xp = x**degree
        y = contract(x) + cfg.shift * xp
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = y / xp
        lo, hi = float(ratio.min()), float(ratio.max())
        width = hi - lo
        if not math.isfinite(width):
            break
        if width < cfg.tol:
            return CentralityResult(x, 0.5 * (lo + hi) - cfg.shift, it, width, True)
        x = y ** (1.0 / degree)
        x = x / x.sum()
    result = CentralityResult(x, float("nan"), it, width, False)
    raise NotConverged(it, width, result)


def _require(ok: bool, what: str):
    if not ok:
        raise NotStronglyConnected(f"{what} is not strongly connected; the centrality is not unique")


def hec(t: OrbitTensor, cfg: SolverConfig = SolverConfig(), force: bool = False, x0=None, seed=None):
    """H-eigenvector centrality: Perron H-eigenvector of the transposed tensor."""
    if not force:
        _require(is_strongly_connected(t), "the transposed hypergraph")
    tt = transpose(t)
    return power_iterate(lambda x: apply(tt, x), t.n, t.order - 1, cfg, x0, seed)


def directed_apply(h: Hypergraph, c) -> np.ndarray:
    """``x[j] = sum over edges with j in head of w * prod(c[tail])``."""
    c = np.asarray(c, dtype=float)
    x = np.zeros(h.n)
    for e in h.edges:
        prod = e.weight * math.prod(c[i] for i in sorted(e.tail))
        for j in sorted(e.head):
            x[j] += prod
    return x


class _EdgeListOperator:
    """Vectorized :func:`directed_apply` for a tail-uniform hypergraph."""

    def __init__(self, h: Hypergraph):
        rows_t, rows_h, weights = [], [], []
        for e in h.edges:
            tail = sorted(e.tail)
            for j in sorted(e.head):
                rows_t.append(tail)
                rows_h.append(j)
                weights.append(e.weight)
        self.n = h.n
        self.tails = np.array(rows_t, dtype=np.int64)
        self.heads = np.array(rows_h, dtype=np.int64)
        self.weights = np.array(weights, dtype=float)

    def __call__(self, c):
        return np.bincount(self.heads, weights=self.weights * c[self.tails].prod(axis=1), minlength=self.n)


def hec_directed(h: Hypergraph, cfg: SolverConfig = SolverConfig(), force: bool = False, x0=None, seed=None):
    """Directed HEC in the edge-list convention.

    Solves ``lambda c[j]**m_T = sum_{e: j in head(e)} w_e prod_{i in tail(e)} c[i]``
    for a tail-uniform directed hypergraph.  The orbit-tensor route
    ``hec(directed_operator_tensor(h))`` yields the same scores with the
    eigenvalue multiplied by ``m_T!``.
    """
    m_t = tail_uniformity(h)
    if not force:
        _require(is_strongly_connected(directed_operator_tensor(h)), "the transposed directed hypergraph")
    return power_iterate(_EdgeListOperator(h), h.n, m_t, cfg, x0, seed)


def f_digraph(h: Hypergraph) -> Digraph:
    """Digraph with an arc ``tail -> j`` of weight ``w`` for every head ``j`` of every F-edge."""
    if not h.is_directed() or any(len(e.tail) != 1 for e in h.edges):
        raise NotFHypergraph("every edge must be directed with exactly one tail node")
    arcs = [(next(iter(e.tail)), j, e.weight) for e in h.edges for j in sorted(e.head)]
    return Digraph.from_arcs(h.n, arcs, tuple(h.nodes.labels))


def _linear_ec(g: Digraph, cfg: SolverConfig, force: bool, x0, seed):
    A = g.matrix()
    if not force:
        _require(scc(A).is_strongly_connected, "the graph")
    AT = A.T.tocsr()
    return power_iterate(lambda x: AT @ x, g.n, 1, cfg, x0, seed)


def ec_f_hypergraph(h: Hypergraph, cfg: SolverConfig = SolverConfig(), force: bool = False, x0=None, seed=None):
    """Centrality of an F-hypergraph: ``lambda c[j] = sum_{i -> {j, ...}} w c[i]``.

    Head sizes may differ between edges; every edge contributes with
    coefficient 1 to each of its heads.
    """
    return _linear_ec(f_digraph(h), cfg, force, x0, seed)


def ec_projection(g: Digraph, cfg: SolverConfig = SolverConfig(), force: bool = False, x0=None, seed=None):
    """Eigenvector centrality (Perron vector of ``A^T``) of a weighted digraph."""
    return _linear_ec(g, cfg, force, x0, seed)


def kstep_centrality(op: KStepOperator, cfg: SolverConfig = SolverConfig(), force: bool = False, x0=None, seed=None):
    """H-eigenvector centrality of the k-step tensor, contraction of degree ``k - 1``."""
    if not force:
        _require(is_strongly_connected(op), "the k-step hypergraph")
    return power_iterate(lambda x: kstep_apply(op, x), op.n, op.k - 1, cfg, x0, seed)


def residual(contract, result: CentralityResult, degree: int) -> float:
    """``||F(c) - lambda c**d||_inf / ||c**d||_inf`` for a computed pair."""
    c = result.scores
    cp = c**degree
    return float(np.max(np.abs(contract(c) - result.eigenvalue * cp)) / np.max(cp))

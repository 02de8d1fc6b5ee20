"""Brute-force dense references for tests.

Nothing here shares code with the sparse path: tensors are filled by
enumerating index tuples straight from the edge definitions, contractions
are repeated dense products, and the eigen-solver is a plain fixed-point
loop with its own stopping rule.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import LengthMismatch, NotConverged, TooLarge
from .hypergraph import CyclicEdge, DirectedEdge, Hypergraph, UndirectedEdge

DENSE_LIMIT = 10**7


@dataclass
class DenseTensor:
    order: int
    n: int
    components: np.ndarray

    def __post_init__(self):
        if self.n**self.order > DENSE_LIMIT:
            raise TooLarge(f"N^m = {self.n}^{self.order} exceeds {DENSE_LIMIT}")
        self.components = np.asarray(self.components, dtype=float)
        if self.components.shape != (self.n,) * self.order:
            raise LengthMismatch(f"component array has shape {self.components.shape}")

    @classmethod
    def zeros(cls, order, n):
        if n**order > DENSE_LIMIT:
            raise TooLarge(f"N^m = {n}^{order} exceeds {DENSE_LIMIT}")
        return cls(order, n, np.zeros((n,) * order))

    def permuted(self, rule) -> "DenseTensor":
        """Tensor ``S`` with ``S[idx] = T[rule(idx)]`` for every index tuple."""
        out = np.zeros_like(self.components)
        for idx in itertools.product(range(self.n), repeat=self.order):
            out[idx] = self.components[tuple(rule(idx))]
        return DenseTensor(self.order, self.n, out)


def _parity(perm) -> int:
    inversions = sum(1 for a, b in itertools.combinations(perm, 2) if a > b)
    return inversions % 2


def dense_from_hypergraph(h: Hypergraph) -> DenseTensor:
    """Dense adjacency tensor straight from the edge definitions."""
    m = max(e.size for e in h.edges)
    t = DenseTensor.zeros(m, h.n)
    T = t.components
    for e in h.edges:
        if isinstance(e, UndirectedEdge):
            for idx in itertools.permutations(sorted(e.nodes)):
                T[idx] += e.weight
        elif isinstance(e, CyclicEdge):
            want = 0 if e.orientation == "even" else 1
            for perm in itertools.permutations(range(m)):
                if _parity(perm) == want:
                    T[tuple(e.nodes[p] for p in perm)] += e.weight
        elif isinstance(e, DirectedEdge):
            for a in itertools.permutations(sorted(e.tail)):
                for b in itertools.permutations(sorted(e.head)):
                    T[a + b] += e.weight
    return t


def dense_apply(t: DenseTensor, c) -> np.ndarray:
    """``x[i1] = sum T[i1, i2..im] c[i2]..c[im]`` by contracting trailing axes one at a time."""
    c = np.asarray(c, dtype=float)
    if c.shape != (t.n,):
        raise LengthMismatch(f"vector has shape {c.shape}, expected ({t.n},)")
    x = t.components
    for _ in range(t.order - 1):
        x = x @ c
    return x


def dense_hec(t: DenseTensor, tol: float = 1e-14, shift: float = 0.5, max_iter: int = 200000):
    """Perron H-eigenpair ``(scores, lambda)`` of ``t`` itself (pass the transposed tensor).

    Stops when successive L1-normalized iterates differ by less than
    ``tol`` in the max norm.
    """
    d = t.order - 1
    x = np.ones(t.n) / t.n
    for _ in range(max_iter):
        y = dense_apply(t, x) + shift * x**d
        x_new = y ** (1.0 / d)
        x_new /= x_new.sum()
        if np.max(np.abs(x_new - x)) < tol:
            lam = float(np.mean(dense_apply(t, x_new) / x_new**d))
            return x_new, lam
        x = x_new
    raise NotConverged(max_iter, float(np.max(np.abs(x_new - x))))


def enumerate_walks(A, k: int) -> DenseTensor:
    """Explicit k-step tensor ``T[i1..ik] = a[i1,i2]...a[i(k-1),ik]``."""
    A = np.asarray(A.toarray() if hasattr(A, "toarray") else A, dtype=float)
    n = A.shape[0]
    t = DenseTensor.zeros(k, n)
    for walk in itertools.product(range(n), repeat=k):
        w = 1.0
        for a, b in zip(walk, walk[1:]):
            w *= A[a, b]
        t.components[walk] = w
    return t


def dense_perron(M) -> tuple:
    """Perron eigenpair of a nonnegative irreducible matrix via a dense eigensolve."""
    M = np.asarray(M.toarray() if hasattr(M, "toarray") else M, dtype=float)
    vals, vecs = np.linalg.eig(M)
    i = int(np.argmax(vals.real))
    v = np.abs(vecs[:, i].real)
    return v / v.sum(), float(vals[i].real)

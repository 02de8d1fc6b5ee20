"""Sparse adjacency tensors stored as symmetry orbits.

An :class:`OrbitTensor` keeps one ``(canonical index tuple, weight)`` entry
per hyperedge.  The tensor's :class:`SymmetryClass` says which index tuples
share that weight:

* ``full``         -- every permutation of the tuple;
* ``cyclic-even``  -- the even permutations of the stored tuple;
* ``cyclic-odd``   -- the odd permutations of the stored tuple;
* ``directed``     -- independent permutations of a leading and a trailing
  block (tails first, or heads first once transposed);
* ``ordered``      -- the stored tuple only.

Contractions use closed-form orbit multiplicities, so their cost is
``O(entries * m)`` regardless of ``N``.

:class:`KStepOperator` is the implicit k-step walk tensor of a base graph,
``T[i1..ik] = a[i1,i2] * ... * a[i(k-1),ik]``, never materialized.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
import scipy.sparse as sp

from .errors import (
    HypergraphError,
    IndexOutOfRange,
    LengthMismatch,
    MixedKinds,
    NonFiniteInput,
    NonPositiveWeight,
    NonTailUniform,
    TooLarge,
    WrongArity,
)
from .hypergraph import (
    CyclicEdge,
    Digraph,
    Hypergraph,
    UndirectedEdge,
    permutation_parity,
    uniformity,
)

__all__ = [
    "SymmetryClass",
    "FULL",
    "CYCLIC_EVEN",
    "CYCLIC_ODD",
    "ORDERED",
    "OrbitTensor",
    "KStepOperator",
    "from_hypergraph",
    "component",
    "transpose",
    "apply",
    "kstep_apply",
    "materialize",
]


@dataclass(frozen=True)
class SymmetryClass:
    """Symmetry tag of an orbit tensor.

    For ``kind == "directed"``, ``tails`` is the tail cardinality and
    ``heads_first`` tells whether stored tuples list the head block first
    (the transposed layout).
    """

    kind: str
    tails: int = 0
    heads_first: bool = False

    def __post_init__(self):
        if self.kind not in ("full", "cyclic-even", "cyclic-odd", "directed", "ordered"):
            raise HypergraphError(f"unknown symmetry class {self.kind!r}")
        if self.kind == "directed" and self.tails < 1:
            raise HypergraphError("directed symmetry class needs tails >= 1")

    @classmethod
    def directed(cls, tails: int, heads_first: bool = False) -> "SymmetryClass":
        return cls("directed", tails, heads_first)

    def lead(self, m: int) -> int:
        """Size of the leading permutation block (directed classes only)."""
        return m - self.tails if self.heads_first else self.tails

    def __str__(self):
        if self.kind == "directed":
            return f"directed(tails={self.tails}, {'heads' if self.heads_first else 'tails'} first)"
        return self.kind


FULL = SymmetryClass("full")
CYCLIC_EVEN = SymmetryClass("cyclic-even")
CYCLIC_ODD = SymmetryClass("cyclic-odd")
ORDERED = SymmetryClass("ordered")


def _canonical(sym: SymmetryClass, m: int, idx: tuple) -> tuple:
    if sym.kind == "full":
        return tuple(sorted(idx))
    if sym.kind in ("cyclic-even", "cyclic-odd"):
        out = sorted(idx)
        if permutation_parity(idx):
            out[-1], out[-2] = out[-2], out[-1]
        return tuple(out)
    if sym.kind == "directed":
        p = sym.lead(m)
        return tuple(sorted(idx[:p])) + tuple(sorted(idx[p:]))
    return tuple(idx)


def _position_multiplicities(sym: SymmetryClass, m: int) -> np.ndarray:
    """``mult[q]``: orbit tuples whose first index is the stored tuple's q-th node."""
    mult = np.zeros(m)
    if sym.kind == "full":
        mult[:] = math.factorial(m - 1)
    elif sym.kind in ("cyclic-even", "cyclic-odd"):
        if m >= 3:
            mult[:] = math.factorial(m - 1) // 2
        else:
            # m == 2: the even class is the stored pair itself, the odd class its swap
            mult[0 if sym.kind == "cyclic-even" else 1] = 1
    elif sym.kind == "directed":
        p = sym.lead(m)
        mult[:p] = math.factorial(p - 1) * math.factorial(m - p)
    else:
        mult[0] = 1
    return mult


def _pair_multiplicities(sym: SymmetryClass, m: int) -> np.ndarray:
    """``pm[q, r]``: orbit tuples starting with the stored tuple's q-th then r-th node."""
    pm = np.zeros((m, m))
    if sym.kind == "full":
        pm[:] = math.factorial(m - 2)
        np.fill_diagonal(pm, 0)
    elif sym.kind in ("cyclic-even", "cyclic-odd"):
        want = 0 if sym.kind == "cyclic-even" else 1
        if m >= 4:
            pm[:] = math.factorial(m - 2) // 2
            np.fill_diagonal(pm, 0)
        else:
            # the remaining positions are forced; keep the pair iff the parity matches
            for q, r in itertools.permutations(range(m), 2):
                rest = [u for u in range(m) if u not in (q, r)]
                if permutation_parity((q, r, *rest)) == want:
                    pm[q, r] = 1
    elif sym.kind == "directed":
        p = sym.lead(m)
        if p >= 2:
            pm[:p, :p] = math.factorial(p - 2) * math.factorial(m - p)
            np.fill_diagonal(pm, 0)
        else:
            pm[0, 1:] = math.factorial(m - 2)
    else:
        pm[0, 1] = 1
    return pm


def _orbit(sym: SymmetryClass, idx: tuple) -> list:
    """All index tuples in the orbit of a stored tuple, by direct enumeration."""
    m = len(idx)
    if sym.kind == "full":
        return sorted(set(itertools.permutations(idx)))
    if sym.kind in ("cyclic-even", "cyclic-odd"):
        want = 0 if sym.kind == "cyclic-even" else 1
        return sorted(
            tuple(idx[q] for q in perm)
            for perm in itertools.permutations(range(m))
            if permutation_parity(perm) == want
        )
    if sym.kind == "directed":
        p = sym.lead(m)
        return sorted(
            a + b for a in itertools.permutations(idx[:p]) for b in itertools.permutations(idx[p:])
        )
    return [tuple(idx)]


@dataclass(frozen=True)
class OrbitTensor:
    """Order-``m`` adjacency tensor on ``n`` nodes stored as weighted orbits."""

    order: int
    n: int
    sym: SymmetryClass
    entries: tuple = field(default=())

    def __post_init__(self):
        if self.order < 2:
            raise HypergraphError(f"tensor order must be >= 2, got {self.order}")
        if self.sym.kind == "directed" and not 1 <= self.sym.tails < self.order:
            raise HypergraphError(f"tail count {self.sym.tails} incompatible with order {self.order}")
        merged: dict = {}
        for idx, w in self.entries:
            idx = tuple(int(v) for v in idx)
            if len(idx) != self.order:
                raise WrongArity(f"entry {idx} does not have {self.order} indices")
            if any(not 0 <= v < self.n for v in idx):
                raise IndexOutOfRange(f"entry {idx} outside 0..{self.n - 1}")
            if self.sym.kind != "ordered" and len(set(idx)) != len(idx):
                raise HypergraphError(f"entry {idx} repeats a node")
            w = float(w)
            if not math.isfinite(w) or w <= 0:
                raise NonPositiveWeight(f"entry weight must be positive, got {w!r}")
            key = _canonical(self.sym, self.order, idx)
            merged[key] = merged.get(key, 0.0) + w
        object.__setattr__(self, "entries", tuple(sorted(merged.items())))

    def __len__(self):
        return len(self.entries)

    @cached_property
    def _index(self) -> np.ndarray:
        if not self.entries:
            return np.zeros((0, self.order), dtype=np.int64)
        return np.array([idx for idx, _ in self.entries], dtype=np.int64)

    @cached_property
    def _weights(self) -> np.ndarray:
        return np.array([w for _, w in self.entries], dtype=float)

    @cached_property
    def _lookup(self) -> dict:
        return dict(self.entries)

    def component(self, idx) -> float:
        return component(self, idx)

    def transpose(self) -> "OrbitTensor":
        return transpose(self)

    def apply(self, c) -> np.ndarray:
        return apply(self, c)


def from_hypergraph(h: Hypergraph) -> OrbitTensor:
    """Adjacency tensor of a uniform, single-kind hypergraph.

    Undirected edges give ``full`` orbits, cyclic edges ``cyclic-even``
    orbits (odd-oriented edges are re-listed as even ones) and directed
    edges tails-first ``directed`` orbits; directed input must be
    tail-uniform because the class carries a single tail count.
    """
    m = uniformity(h)
    kinds = {type(e) for e in h.edges}
    if len(kinds) > 1:
        raise MixedKinds(f"cannot build one tensor from mixed edge kinds {sorted(k.__name__ for k in kinds)}")
    kind = kinds.pop()
    if kind is UndirectedEdge:
        return OrbitTensor(m, h.n, FULL, tuple((tuple(sorted(e.nodes)), e.weight) for e in h.edges))
    if kind is CyclicEdge:
        return OrbitTensor(m, h.n, CYCLIC_EVEN, tuple((e.canonical_nodes(), e.weight) for e in h.edges))
    tails = {len(e.tail) for e in h.edges}
    if len(tails) > 1:
        a, b = sorted(tails)[:2]
        raise NonTailUniform(a, b)
    entries = tuple((tuple(sorted(e.tail)) + tuple(sorted(e.head)), e.weight) for e in h.edges)
    return OrbitTensor(m, h.n, SymmetryClass.directed(tails.pop()), entries)


def component(t: OrbitTensor, idx) -> float:
    """Value ``T[idx]`` of the expanded tensor (0 off every orbit)."""
    idx = tuple(int(v) for v in idx)
    if len(idx) != t.order:
        raise WrongArity(f"expected {t.order} indices, got {len(idx)}")
    if any(not 0 <= v < t.n for v in idx):
        raise IndexOutOfRange(f"index {idx} outside 0..{t.n - 1}")
    if t.sym.kind == "ordered":
        return t._lookup.get(idx, 0.0)
    if len(set(idx)) != len(idx):
        return 0.0
    if t.sym.kind == "cyclic-odd":
        # idx is an odd permutation of a stored tuple iff its first-two swap is an even one
        idx = (idx[1], idx[0]) + idx[2:]
    return t._lookup.get(_canonical(t.sym, t.order, idx), 0.0)


def transpose(t: OrbitTensor) -> OrbitTensor:
    """Class-dependent transposition.

    ``full``: identity.  Cyclic: full index reversal; reversal of ``m``
    indices has parity ``(m // 2) % 2``, so for m = 2, 3 (mod 4) the
    even and odd classes swap and otherwise stay put.  ``directed``: swap
    the tail and head blocks.  ``ordered``: reverse each tuple.
    """
    m = t.order
    if t.sym.kind == "full":
        return t
    if t.sym.kind in ("cyclic-even", "cyclic-odd"):
        if (m // 2) % 2 == 0:
            return t
        sym = CYCLIC_ODD if t.sym.kind == "cyclic-even" else CYCLIC_EVEN
        return OrbitTensor(m, t.n, sym, t.entries)
    if t.sym.kind == "directed":
        p = t.sym.lead(m)
        sym = SymmetryClass.directed(t.sym.tails, not t.sym.heads_first)
        return OrbitTensor(m, t.n, sym, tuple((idx[p:] + idx[:p], w) for idx, w in t.entries))
    return OrbitTensor(m, t.n, ORDERED, tuple((idx[::-1], w) for idx, w in t.entries))


def _check_vector(c, n: int) -> np.ndarray:
    c = np.asarray(c, dtype=float)
    if c.shape != (n,):
        raise LengthMismatch(f"vector has shape {c.shape}, expected ({n},)")
    if not np.all(np.isfinite(c)):
        raise NonFiniteInput("vector contains non-finite entries")
    if np.any(c < 0):
        raise HypergraphError("vector must be nonnegative")
    return c


def _others_product(vals: np.ndarray) -> np.ndarray:
    """Row-wise product of all columns except the q-th one, for every q (no division)."""
    rows, m = vals.shape
    prefix = np.ones((rows, m))
    suffix = np.ones((rows, m))
    for q in range(1, m):
        prefix[:, q] = prefix[:, q - 1] * vals[:, q - 1]
    for q in range(m - 2, -1, -1):
        suffix[:, q] = suffix[:, q + 1] * vals[:, q + 1]
    return prefix * suffix


def apply(t: OrbitTensor, c) -> np.ndarray:
    """Tensor apply ``x[i1] = sum T[i1, i2..im] c[i2]...c[im]``."""
    c = _check_vector(c, t.n)
    x = np.zeros(t.n)
    if not t.entries:
        return x
    idx = t._index
    others = _others_product(c[idx])
    mult = _position_multiplicities(t.sym, t.order)
    for q in range(t.order):
        if mult[q]:
            x += np.bincount(idx[:, q], weights=t._weights * mult[q] * others[:, q], minlength=t.n)
    return x


def induced_pairs(t: OrbitTensor) -> sp.csr_matrix:
    """``M[i, j] = sum over trailing indices of T[i, j, ...]``, exactly from orbits."""
    pm = _pair_multiplicities(t.sym, t.order)
    rows, cols, vals = [], [], []
    idx = t._index
    for q, r in zip(*np.nonzero(pm)):
        rows.append(idx[:, q])
        cols.append(idx[:, r])
        vals.append(t._weights * pm[q, r])
    if not rows:
        return sp.csr_matrix((t.n, t.n))
    M = sp.coo_matrix(
        (np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))), shape=(t.n, t.n)
    )
    return M.tocsr()


class KStepOperator:
    """Implicit k-step tensor of a weighted base graph.

    ``A`` is the base adjacency (``A[i, j]`` weight of arc ``i -> j``) and
    ``k >= 2`` the number of walk nodes, so the tensor has order ``k``.
    """

    def __init__(self, A, k: int, labels=()):
        if isinstance(A, Digraph):
            labels = labels or A.labels
            A = A.matrix()
        A = sp.csr_matrix(A, dtype=float)
        if A.shape[0] != A.shape[1]:
            raise LengthMismatch(f"adjacency matrix must be square, got {A.shape}")
        if A.nnz and (A.data.min() < 0 or not np.all(np.isfinite(A.data))):
            raise NonPositiveWeight("adjacency weights must be nonnegative and finite")
        if int(k) < 2:
            raise HypergraphError(f"k must be >= 2, got {k}")
        A.eliminate_zeros()
        A.sort_indices()
        self.A = A
        self.k = int(k)
        self.labels = tuple(labels) if labels else tuple(str(i) for i in range(A.shape[0]))

    @property
    def n(self) -> int:
        return self.A.shape[0]

    @property
    def order(self) -> int:
        return self.k

    def transpose(self) -> "KStepOperator":
        """Walk reversal, realized by transposing the base matrix."""
        return KStepOperator(self.A.T.tocsr(), self.k, self.labels)

    def to_orbit_tensor(self) -> OrbitTensor:
        """Explicit ``ordered`` tensor with one entry per walk (small graphs only)."""
        walks = [((i,), 1.0) for i in range(self.n)]
        indptr, indices, data = self.A.indptr, self.A.indices, self.A.data
        for _ in range(self.k - 1):
            walks = [
                (path + (int(indices[p]),), w * data[p])
                for path, w in walks
                for p in range(indptr[path[-1]], indptr[path[-1] + 1])
            ]
        return OrbitTensor(self.k, self.n, ORDERED, tuple(walks))

    def __repr__(self):
        return f"KStepOperator(n={self.n}, k={self.k}, arcs={self.A.nnz})"


def kstep_apply(op: KStepOperator, c) -> np.ndarray:
    """Apply of the *transposed* k-step tensor.

    ``x[j] = sum over walks v1 -> ... -> v(k-1) -> j`` of the arc weights
    times ``c[v1]...c[v(k-1)]``, via ``k - 1`` sparse products.
    """
    c = _check_vector(c, op.n)
    AT = op.A.T.tocsr()
    z = np.ones(op.n)
    for _ in range(op.k - 1):
        z = AT @ (c * z)
    return z


def materialize(t, limit: int = 10) -> np.ndarray:
    """Dense component array of an orbit tensor or k-step operator (``N <= limit``)."""
    n = t.n
    if n > limit:
        raise TooLarge(f"N = {n} exceeds the materialization limit {limit}")
    if isinstance(t, KStepOperator):
        A = t.A.toarray()
        out = np.zeros((n,) * t.k)
        for walk in itertools.product(range(n), repeat=t.k):
            out[walk] = math.prod(A[a, b] for a, b in zip(walk, walk[1:]))
        return out
    out = np.zeros((n,) * t.order)
    for idx, w in t.entries:
        for tup in _orbit(t.sym, idx):
            out[tup] += w
    return out

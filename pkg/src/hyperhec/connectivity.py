"""Induced pairwise matrices, strongly connected components, core extraction."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .errors import NotDirected
from .hypergraph import Hypergraph, NodeRegistry, split_heads
from .tensor import KStepOperator, OrbitTensor, from_hypergraph, induced_pairs, transpose

__all__ = [
    "InducedMatrix",
    "SccReport",
    "induced_matrix",
    "scc",
    "is_strongly_connected",
    "directed_operator_tensor",
    "b_uniform_core",
]


@dataclass(frozen=True)
class InducedMatrix:
    """``M[i, j] = sum_{j3..jm} T[i, j, j3..jm]`` as a sparse matrix."""

    M: sp.csr_matrix

    @property
    def n(self) -> int:
        return self.M.shape[0]

    def toarray(self) -> np.ndarray:
        return self.M.toarray()


@dataclass(frozen=True)
class SccReport:
    components: tuple  # tuples of node ids, each sorted; ordered by smallest member
    largest: int
    labels: np.ndarray  # component id per node

    @property
    def is_strongly_connected(self) -> bool:
        return len(self.components) == 1

    @property
    def largest_component(self) -> tuple:
        return self.components[self.largest] if self.components else ()


def induced_matrix(t) -> InducedMatrix:
    """Induced matrix of an orbit tensor or of a k-step operator's tensor."""
    if isinstance(t, KStepOperator):
        # M[i, j] = a[i, j] * (total weight of (k-2)-arc walks leaving j)
        r = np.ones(t.n)
        for _ in range(t.k - 2):
            r = t.A @ r
        M = t.A @ sp.diags(r)
        return InducedMatrix(sp.csr_matrix(M))
    return InducedMatrix(induced_pairs(t))


def _tarjan(n: int, indptr: np.ndarray, indices: np.ndarray) -> np.ndarray:
    """Iterative Tarjan; returns a component label per node (labels in completion order)."""
    index = np.full(n, -1, dtype=np.int64)
    low = np.zeros(n, dtype=np.int64)
    on_stack = np.zeros(n, dtype=bool)
    comp = np.full(n, -1, dtype=np.int64)
    stack: list = []
    counter = 0
    ncomp = 0
    for root in range(n):
        if index[root] >= 0:
            continue
        work = [(root, indptr[root])]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, p = work[-1]
            end = indptr[v + 1]
            while p < end:
                w = indices[p]
                p += 1
                if index[w] < 0:
                    work[-1] = (v, p)
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, indptr[w]))
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            else:
                work.pop()
                if work:
                    parent = work[-1][0]
                    low[parent] = min(low[parent], low[v])
                if low[v] == index[v]:
                    while True:
                        w = stack.pop()
                        on_stack[w] = False
                        comp[w] = ncomp
                        if w == v:
                            break
                    ncomp += 1
    return comp


def scc(m) -> SccReport:
    """Strongly connected components of the digraph with arc ``i -> j`` iff ``M[i, j] > 0``."""
    M = m.M if isinstance(m, InducedMatrix) else sp.csr_matrix(m)
    n = M.shape[0]
    M = sp.csr_matrix(M > 0)
    M.sort_indices()
    raw = _tarjan(n, M.indptr, M.indices)
    groups: dict = {}
    for v in range(n):
        groups.setdefault(int(raw[v]), []).append(v)
    components = tuple(sorted((tuple(g) for g in groups.values()), key=lambda g: g[0]))
    labels = np.empty(n, dtype=np.int64)
    for cid, g in enumerate(components):
        labels[list(g)] = cid
    largest = min(range(len(components)), key=lambda c: (-len(components[c]), components[c][0]), default=-1)
    return SccReport(components, largest, labels)


def is_strongly_connected(t) -> bool:
    """Strong connectivity of the *transposed* hypergraph, the HEC prerequisite."""
    return scc(induced_matrix(transpose(t) if isinstance(t, OrbitTensor) else t.transpose())).is_strongly_connected


def directed_operator_tensor(h: Hypergraph) -> OrbitTensor:
    """Orbit tensor of a tail-uniform directed hypergraph with every edge split into single-head edges.

    Its order is ``m_T + 1`` and its transposed apply is exactly the
    directed HEC contraction scaled by ``m_T!``.
    """
    return from_hypergraph(split_heads(h))


def b_uniform_core(h: Hypergraph, m_t: int) -> Hypergraph:
    """Largest strongly connected sub-hypergraph whose edges all have ``m_t`` tail nodes.

    Iterates to a fixpoint: drop edges with another tail size, compute the
    SCCs of the transposed tensor's induced graph, keep the largest one
    (ties: smallest member id) and the edges fully inside it.  The result
    is relabeled to contiguous ids in the original node order and may be
    empty.
    """
    if not h.is_directed():
        raise NotDirected("b_uniform_core requires a nonempty, all-directed hypergraph")
    nodes = list(range(h.n))
    edges = [e for e in h.edges if len(e.tail) == m_t]
    while edges:
        sub = _restrict(h, nodes, edges)
        report = scc(induced_matrix(transpose(directed_operator_tensor(sub))))
        keep = [nodes[v] for v in report.largest_component]
        keep_set = set(keep)
        kept_edges = [e for e in edges if e.members <= keep_set]
        if keep == nodes and len(kept_edges) == len(edges):
            return sub
        nodes, edges = keep, kept_edges
    return Hypergraph()


def _restrict(h: Hypergraph, nodes: list, edges: list) -> Hypergraph:
    new_id = {old: new for new, old in enumerate(nodes)}
    out = Hypergraph(NodeRegistry([h.nodes.label(v) for v in nodes]))
    for e in edges:
        out.add_hyperedge(e.mapped(new_id.__getitem__))
    return out


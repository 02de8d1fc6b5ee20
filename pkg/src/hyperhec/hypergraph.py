"""Hypergraph data model: node registry, typed hyperedges, projections.

Nodes are dense integer ids ``0..N-1`` with a bijective label mapping.  Edges
come in three kinds:

* :class:`UndirectedEdge` -- an unordered node set;
* :class:`CyclicEdge` -- an ordered tuple plus an orientation; the edge is
  the class of all even (or all odd) permutations of the tuple;
* :class:`DirectedEdge` -- disjoint, nonempty ``tail`` (senders) and
  ``head`` (receivers) sets.

A :class:`Hypergraph` is built by a single writer through
:meth:`Hypergraph.add_hyperedge`; identical edges merge by summing weights.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np
import scipy.sparse as sp

from .errors import (
    EmptyBlock,
    HypergraphError,
    NonPositiveWeight,
    NonTailUniform,
    NonUniform,
    NotDirected,
    RepeatedNode,
    UnknownNode,
)

__all__ = [
    "NodeRegistry",
    "Hyperedge",
    "UndirectedEdge",
    "CyclicEdge",
    "DirectedEdge",
    "Hypergraph",
    "Digraph",
    "ProjectionGraph",
    "add_hyperedge",
    "uniformity",
    "tail_uniformity",
    "modal_tail_cardinality",
    "project",
    "relabel",
    "split_heads",
    "permutation_parity",
]


def permutation_parity(seq: Sequence[int]) -> int:
    """Parity (0 even, 1 odd) of the permutation sorting ``seq`` (distinct items)."""
    order = sorted(range(len(seq)), key=seq.__getitem__)
    seen = [False] * len(order)
    parity = 0
    for start in range(len(order)):
        if seen[start]:
            continue
        length = 0
        j = start
        while not seen[j]:
            seen[j] = True
            j = order[j]
            length += 1
        parity ^= (length - 1) & 1
    return parity


def _check_weight(weight) -> float:
    w = float(weight)
    if not math.isfinite(w) or w <= 0:
        raise NonPositiveWeight(f"hyperedge weight must be positive and finite, got {weight!r}")
    return w


def _distinct(nodes: Iterable[int], what: str) -> tuple[int, ...]:
    out = tuple(int(v) for v in nodes)
    if len(set(out)) != len(out):
        raise RepeatedNode(f"repeated node in {what}: {out}")
    return out


class Hyperedge:
    """Common interface of the three edge kinds."""

    weight: float

    @property
    def size(self) -> int:
        return len(self.members)

    @property
    def members(self) -> frozenset:
        raise NotImplementedError

    def key(self):
        """Identity used for duplicate merging (weight excluded)."""
        raise NotImplementedError

    def with_weight(self, weight: float) -> "Hyperedge":
        raise NotImplementedError

    def mapped(self, f) -> "Hyperedge":
        """Same edge with every node id passed through ``f``."""
        raise NotImplementedError


@dataclass(frozen=True)
class UndirectedEdge(Hyperedge):
    nodes: frozenset
    weight: float = 1.0

    def __post_init__(self):
        nodes = _distinct(self.nodes, "undirected edge")
        if len(nodes) < 2:
            raise EmptyBlock(f"undirected edge needs at least 2 nodes, got {nodes}")
        object.__setattr__(self, "nodes", frozenset(nodes))
        object.__setattr__(self, "weight", _check_weight(self.weight))

    @property
    def members(self):
        return self.nodes

    def key(self):
        return ("undirected", tuple(sorted(self.nodes)))

    def with_weight(self, weight):
        return UndirectedEdge(self.nodes, weight)

    def mapped(self, f):
        return UndirectedEdge(frozenset(f(v) for v in self.nodes), self.weight)


@dataclass(frozen=True)
class CyclicEdge(Hyperedge):
    """Ordered tuple whose even (``orientation="even"``) or odd permutations form the edge."""

    nodes: tuple
    orientation: str = "even"
    weight: float = 1.0

    def __post_init__(self):
        nodes = _distinct(self.nodes, "cyclic edge")
        if len(nodes) < 2:
            raise EmptyBlock(f"cyclic edge needs at least 2 nodes, got {nodes}")
        if self.orientation not in ("even", "odd"):
            raise HypergraphError(f"orientation must be 'even' or 'odd', got {self.orientation!r}")
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weight", _check_weight(self.weight))

    @property
    def members(self):
        return frozenset(self.nodes)

    def parity(self) -> int:
        """Parity of the edge's permutation class relative to the sorted node tuple."""
        return permutation_parity(self.nodes) ^ (self.orientation == "odd")

    def canonical_nodes(self) -> tuple:
        """Lexicographically smallest tuple among the edge's even-orientation listings."""
        ordered = sorted(self.nodes)
        if self.parity():
            ordered[-1], ordered[-2] = ordered[-2], ordered[-1]
        return tuple(ordered)

    def key(self):
        return ("cyclic", self.canonical_nodes())

    def with_weight(self, weight):
        return CyclicEdge(self.nodes, self.orientation, weight)

    def mapped(self, f):
        return CyclicEdge(tuple(f(v) for v in self.nodes), self.orientation, self.weight)


@dataclass(frozen=True)
class DirectedEdge(Hyperedge):
    """Directed hyperedge: ``tail`` nodes send, ``head`` nodes receive."""

    tail: frozenset
    head: frozenset
    weight: float = 1.0

    def __post_init__(self):
        tail = _distinct(self.tail, "tail")
        head = _distinct(self.head, "head")
        if not tail or not head:
            raise EmptyBlock(f"directed edge needs nonempty tail and head, got {tail} -> {head}")
        if set(tail) & set(head):
            raise RepeatedNode(f"tail and head overlap: {tail} -> {head}")
        object.__setattr__(self, "tail", frozenset(tail))
        object.__setattr__(self, "head", frozenset(head))
        object.__setattr__(self, "weight", _check_weight(self.weight))

    @property
    def members(self):
        return self.tail | self.head

    def key(self):
        return ("directed", tuple(sorted(self.tail)), tuple(sorted(self.head)))

    def with_weight(self, weight):
        return DirectedEdge(self.tail, self.head, weight)

    def mapped(self, f):
        return DirectedEdge(
            frozenset(f(v) for v in self.tail), frozenset(f(v) for v in self.head), self.weight
        )


@dataclass
class NodeRegistry:
    """Bijective label <-> dense id mapping; ids follow insertion order."""

    labels: list = field(default_factory=list)

    def __post_init__(self):
        self._index = {}
        for i, label in enumerate(self.labels):
            if label in self._index:
                raise HypergraphError(f"duplicate node label {label!r}")
            self._index[label] = i

    def __len__(self):
        return len(self.labels)

    def __contains__(self, label):
        return label in self._index

    def intern(self, label) -> int:
        label = str(label)
        idx = self._index.get(label)
        if idx is None:
            idx = len(self.labels)
            self.labels.append(label)
            self._index[label] = idx
        return idx

    def id(self, label) -> int:
        try:
            return self._index[str(label)]
        except KeyError:
            raise UnknownNode(f"unknown node label {label!r}") from None

    def label(self, idx: int) -> str:
        return self.labels[idx]


class Hypergraph:
    """A node registry plus a list of weighted, typed hyperedges."""

    def __init__(self, nodes: NodeRegistry | Iterable | int | None = None):
        if nodes is None:
            nodes = NodeRegistry()
        elif isinstance(nodes, int):
            nodes = NodeRegistry([str(i) for i in range(nodes)])
        elif not isinstance(nodes, NodeRegistry):
            nodes = NodeRegistry([str(v) for v in nodes])
        self.nodes = nodes
        self._edges: dict = {}

    @classmethod
    def from_edges(cls, edges: Iterable[Hyperedge], nodes=None) -> "Hypergraph":
        """Build from edges over integer ids; ``nodes`` defaults to ``0..max_id``."""
        edges = list(edges)
        if nodes is None:
            top = max((max(e.members) for e in edges), default=-1)
            nodes = top + 1
        h = cls(nodes)
        for e in edges:
            h.add_hyperedge(e)
        return h

    @property
    def n(self) -> int:
        return len(self.nodes)

    @property
    def edges(self) -> list:
        return list(self._edges.values())

    def __len__(self):
        return len(self._edges)

    def __repr__(self):
        return f"Hypergraph(n={self.n}, edges={len(self)})"

    def add_hyperedge(self, e: Hyperedge) -> "Hypergraph":
        for v in e.members:
            if not 0 <= v < self.n:
                raise UnknownNode(f"node id {v} is not registered (n={self.n})")
        key = e.key()
        old = self._edges.get(key)
        self._edges[key] = e if old is None else old.with_weight(old.weight + e.weight)
        return self

    def kinds(self) -> Counter:
        return Counter(type(e).__name__.replace("Edge", "").lower() for e in self._edges.values())

    def is_directed(self) -> bool:
        return bool(self._edges) and all(isinstance(e, DirectedEdge) for e in self._edges.values())

    def scaled(self, alpha: float) -> "Hypergraph":
        return Hypergraph.from_edges(
            (e.with_weight(e.weight * alpha) for e in self.edges), NodeRegistry(list(self.nodes.labels))
        )


def add_hyperedge(h: Hypergraph, e: Hyperedge) -> Hypergraph:
    return h.add_hyperedge(e)


def uniformity(h: Hypergraph) -> int:
    """Common edge size ``m``; raises :class:`NonUniform` naming two offending sizes."""
    edges = h.edges
    if not edges:
        raise HypergraphError("uniformity is undefined for a hypergraph without edges")
    m = edges[0].size
    for e in edges[1:]:
        if e.size != m:
            raise NonUniform(m, e.size)
    return m


def tail_uniformity(h: Hypergraph) -> int:
    """Common tail cardinality of a directed hypergraph."""
    if not h.is_directed():
        raise NotDirected("tail uniformity requires a nonempty, all-directed hypergraph")
    edges = h.edges
    m_t = len(edges[0].tail)
    for e in edges[1:]:
        if len(e.tail) != m_t:
            raise NonTailUniform(m_t, len(e.tail))
    return m_t


def modal_tail_cardinality(h: Hypergraph) -> int:
    """Most frequent tail size; ties go to the smaller size."""
    if not h.is_directed():
        raise NotDirected("modal tail cardinality requires a nonempty, all-directed hypergraph")
    counts = Counter(len(e.tail) for e in h.edges)
    return min(counts, key=lambda s: (-counts[s], s))


def split_heads(h: Hypergraph) -> Hypergraph:
    """Replace every directed edge ``T -> H`` by the single-head edges ``T -> {j}``, j in H."""
    if not h.is_directed():
        raise NotDirected("split_heads requires a nonempty, all-directed hypergraph")
    out = Hypergraph(NodeRegistry(list(h.nodes.labels)))
    for e in h.edges:
        for j in sorted(e.head):
            out.add_hyperedge(DirectedEdge(e.tail, frozenset([j]), e.weight))
    return out


def relabel(h: Hypergraph, perm: Sequence[int]) -> Hypergraph:
    """Hypergraph with node ``i`` renamed to ``perm[i]`` (labels move along)."""
    perm = [int(p) for p in perm]
    if sorted(perm) != list(range(h.n)):
        raise HypergraphError("perm must be a permutation of 0..n-1")
    labels = [None] * h.n
    for old, new in enumerate(perm):
        labels[new] = h.nodes.labels[old]
    return Hypergraph.from_edges((e.mapped(perm.__getitem__) for e in h.edges), NodeRegistry(labels))


@dataclass(frozen=True)
class Digraph:
    """Weighted digraph over ``n`` nodes; ``arcs`` are sorted ``(i, j, w)`` with merged duplicates."""

    n: int
    arcs: tuple
    labels: tuple = ()

    def __post_init__(self):
        if not self.labels:
            object.__setattr__(self, "labels", tuple(str(i) for i in range(self.n)))

    @classmethod
    def from_arcs(cls, n: int, arcs: Iterable, labels: Sequence[str] = ()) -> "Digraph":
        acc: dict = {}
        for i, j, w in arcs:
            w = float(w)
            if not math.isfinite(w) or w < 0:
                raise NonPositiveWeight(f"arc weight must be nonnegative and finite, got {w!r}")
            if not (0 <= i < n and 0 <= j < n):
                raise UnknownNode(f"arc ({i}, {j}) outside 0..{n - 1}")
            acc[(i, j)] = acc.get((i, j), 0.0) + w
        return cls(n, tuple((i, j, w) for (i, j), w in sorted(acc.items())), tuple(labels))

    def matrix(self) -> sp.csr_matrix:
        """Weighted adjacency matrix with ``A[i, j]`` the weight of arc ``i -> j``."""
        if not self.arcs:
            return sp.csr_matrix((self.n, self.n))
        rows, cols, vals = zip(*self.arcs)
        return sp.csr_matrix((np.array(vals, dtype=float), (rows, cols)), shape=(self.n, self.n))

    def reversed(self) -> "Digraph":
        return Digraph.from_arcs(self.n, ((j, i, w) for i, j, w in self.arcs), self.labels)


ProjectionGraph = Digraph


def project(h: Hypergraph) -> Digraph:
    """Pairwise projection: clique expansion for undirected/cyclic edges, tail x head arcs for directed ones."""
    arcs = []
    for e in h.edges:
        if isinstance(e, DirectedEdge):
            arcs.extend((i, j, e.weight) for i in sorted(e.tail) for j in sorted(e.head))
        else:
            nodes = sorted(e.members)
            arcs.extend((i, j, e.weight) for i in nodes for j in nodes if i != j)
    return Digraph.from_arcs(h.n, arcs, tuple(h.nodes.labels))

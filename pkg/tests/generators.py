"""Seeded random instances for tests.

Every ``*_sc`` generator plants a ring of edges that makes the transposed
hypergraph strongly connected, then adds random edges on top.
"""

import numpy as np

from hyperhec.hypergraph import CyclicEdge, Digraph, DirectedEdge, Hypergraph, UndirectedEdge
from hyperhec.tensor import ORDERED, OrbitTensor, from_hypergraph


def _weight(rng, lo=0.2, hi=2.0):
    return float(rng.uniform(lo, hi))


def _nodes(rng, n, size):
    return tuple(int(v) for v in rng.choice(n, size=size, replace=False))


def undirected_sc(rng, n, m, extra=None):
    edges = [UndirectedEdge(tuple((i + d) % n for d in range(m)), _weight(rng)) for i in range(n)]
    for _ in range(rng.integers(0, n) if extra is None else extra):
        edges.append(UndirectedEdge(_nodes(rng, n, m), _weight(rng)))
    return Hypergraph.from_edges(edges, n)


def cyclic_sc(rng, n, m, extra=None):
    orient = lambda: "even" if rng.random() < 0.5 else "odd"  # noqa: E731
    edges = []
    for i in range(n):
        edges.append(CyclicEdge(tuple((i + d) % n for d in range(m)), "even", _weight(rng)))
    for _ in range(rng.integers(0, n) if extra is None else extra):
        edges.append(CyclicEdge(_nodes(rng, n, m), orient(), _weight(rng)))
    return Hypergraph.from_edges(edges, n)


def directed_sc(rng, n, m, m_t, extra=None):
    """``m``-uniform directed hypergraph with ``m_t`` tails and ``m - m_t`` heads per edge.

    Ring edges ``{i+p..i+m-1} -> {i..i+p-1}`` (``p`` heads) keep both the
    transposed tensor and its single-head split strongly connected.
    """
    p = m - m_t
    edges = [
        DirectedEdge(tuple((i + d) % n for d in range(p, m)), tuple((i + d) % n for d in range(p)), _weight(rng))
        for i in range(n)
    ]
    for _ in range(rng.integers(0, n) if extra is None else extra):
        picks = _nodes(rng, n, m)
        edges.append(DirectedEdge(picks[:m_t], picks[m_t:], _weight(rng)))
    return Hypergraph.from_edges(edges, n)


def tail_uniform_sc(rng, n, m_t, max_heads=2, extra=None):
    """Tail-uniform directed hypergraph with mixed head sizes; ring edges ``{i+1..i+m_t} -> {i}``."""
    edges = [
        DirectedEdge(tuple((i + d) % n for d in range(1, m_t + 1)), (i,), _weight(rng)) for i in range(n)
    ]
    for _ in range(rng.integers(0, n) if extra is None else extra):
        picks = _nodes(rng, n, min(n, m_t + int(rng.integers(1, max_heads + 1))))
        edges.append(DirectedEdge(picks[:m_t], picks[m_t:], _weight(rng)))
    return Hypergraph.from_edges(edges, n)


def ordered_sc(rng, n, m, extra=None):
    entries = [(tuple((i + d) % n for d in range(m)), _weight(rng)) for i in range(n)]
    for _ in range(rng.integers(0, n) if extra is None else extra):
        entries.append((tuple(int(v) for v in rng.integers(0, n, size=m)), _weight(rng)))
    return OrbitTensor(m, n, ORDERED, tuple(entries))


def digraph_sc(rng, n, density=0.15, lo=0.2, hi=2.0):
    arcs = [(i, (i + 1) % n, float(rng.uniform(lo, hi))) for i in range(n)]
    mask = rng.random((n, n)) < density
    arcs += [(int(i), int(j), float(rng.uniform(lo, hi))) for i, j in zip(*np.nonzero(mask)) if i != j]
    return Digraph.from_arcs(n, arcs)


def f_hypergraph_sc(rng, n, max_heads=3, extra=None):
    edges = []
    for i in range(n):
        heads = {(i + 1) % n} | {int(v) for v in rng.choice(n, size=int(rng.integers(0, max_heads)))}
        heads.discard(i)
        edges.append(DirectedEdge((i,), tuple(heads), _weight(rng)))
    for _ in range(rng.integers(0, n) if extra is None else extra):
        picks = _nodes(rng, n, min(n, 1 + int(rng.integers(1, max_heads + 1))))
        edges.append(DirectedEdge(picks[:1], picks[1:], _weight(rng)))
    return Hypergraph.from_edges(edges, n)


def random_class_tensor(rng, kind, n, m):
    """Random strongly connected orbit tensor of a class, with its hypergraph (None for ``ordered``)."""
    if kind == "full":
        h = undirected_sc(rng, n, m)
    elif kind == "cyclic":
        h = cyclic_sc(rng, n, m)
    elif kind == "directed":
        h = directed_sc(rng, n, m, int(rng.integers(1, m)))
    else:
        return ordered_sc(rng, n, m), None
    return from_hypergraph(h), h

"""Seeded synthetic reaction networks.

The bundled ``data/synthetic_200.rxn`` is ``reaction_network()`` with the
default arguments; regenerate it with ``python -m hyperhec.synthetic``.
"""

from __future__ import annotations

import sys

import numpy as np

from .hypergraph import DirectedEdge, Hypergraph, NodeRegistry


def reaction_network(n: int = 200, extra: int = 500, unimolecular: int = 60, seed: int = 20240611) -> Hypergraph:
    """Bimolecular reaction network on ``n`` species that is strongly connected as a whole.

    A ring ``S_i + S_(i+1) -> S_(i+2)`` guarantees strong connectivity; the
    ``extra`` bimolecular reactions draw reactants and products from two
    different heavy-tailed popularity orders, and ``unimolecular`` one-reactant
    reactions are noise for core extraction.
    """
    rng = np.random.default_rng(seed)
    width = len(str(n - 1))
    h = Hypergraph(NodeRegistry([f"S{i:0{width}d}" for i in range(n)]))
    for i in range(n):
        h.add_hyperedge(DirectedEdge((i, (i + 1) % n), ((i + 2) % n,)))

    def popularity(exponent):
        p = 1.0 / np.arange(1, n + 1) ** exponent
        return rng.permutation(n), p / p.sum()

    reactant_order, reactant_p = popularity(0.9)
    product_order, product_p = popularity(0.6)

    def draw(order, p, size, exclude=()):
        while True:
            picks = order[rng.choice(n, size=size, replace=False, p=p)]
            if not set(picks.tolist()) & set(exclude):
                return tuple(int(v) for v in picks)

    for _ in range(extra):
        tail = draw(reactant_order, reactant_p, 2)
        head = draw(product_order, product_p, int(rng.integers(1, 3)), tail)
        h.add_hyperedge(DirectedEdge(tail, head))
    for _ in range(unimolecular):
        tail = draw(reactant_order, reactant_p, 1)
        head = draw(product_order, product_p, int(rng.integers(1, 3)), tail)
        h.add_hyperedge(DirectedEdge(tail, head))
    return h


def main(argv=None):
    from .io import write_reactions

    sys.stdout.write("# synthetic reaction network: hyperhec.synthetic.reaction_network()\n")
    sys.stdout.write(write_reactions(reaction_network()))


if __name__ == "__main__":
    main()

"""Text formats: hyperedge lists, reaction lists, edge lists, ranking output.

Hyperedge files (``.he``), one edge per line, ``#`` starts a comment line::

    A,B,C          undirected edge, weight 1
    cyc A,B,C      cyclic edge; the listed order is the even orientation
    A,B -> C,D     directed edge, tail A,B and head C,D
    A,B,C : 2.5    any edge with an explicit weight

Reaction files (``.rxn``/``.txt``)::

    H + OH -> H2O
    2 H -> H2      leading integer coefficients are dropped (set semantics)

Species are separated by `` + `` with surrounding whitespace, so ions such
as ``C+`` stay intact.  Every reaction becomes a directed edge from the
reactants to the products; repeated reactions add up.

Edge lists (``.el``/``.edges``): ``src dst [w]`` separated by whitespace.
"""

from __future__ import annotations

import csv
import io
import json
import math
import re

import numpy as np

from .errors import EmptySide, HypergraphError, NonPositiveWeight, NotConverged, ParseError
from .hypergraph import (
    CyclicEdge,
    Digraph,
    DirectedEdge,
    Hypergraph,
    NodeRegistry,
    UndirectedEdge,
)
from .ranking import rank
from .spectral import CentralityResult

__all__ = [
    "FORMATS",
    "infer_format",
    "parse_hyperedges",
    "parse_reactions",
    "parse_edgelist",
    "write_hyperedges",
    "write_reactions",
    "write_rankings",
    "rankings_json",
    "read_rankings_json",
    "read_scores_csv",
    "TIE_RTOL",
]

FORMATS = ("hyperedges", "reactions", "edgelist")

_SUFFIXES = {
    ".he": "hyperedges",
    ".hg": "hyperedges",
    ".rxn": "reactions",
    ".txt": "reactions",
    ".el": "edgelist",
    ".edges": "edgelist",
}

# scores closer than this (relative) share a rank in written output
TIE_RTOL = 1e-9

_REACTANT_SPLIT = re.compile(r"\s+\+\s+")
_COEFFICIENT = re.compile(r"^(\d+)\s+(\S.*)$")


def infer_format(path: str) -> str:
    for suffix, fmt in _SUFFIXES.items():
        if str(path).lower().endswith(suffix):
            return fmt
    raise HypergraphError(f"cannot infer the input format of {path!r}; pass --format")


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield lineno, line


def _labels(chunk: str, lineno: int) -> list:
    labels = [s.strip() for s in chunk.split(",")]
    if any(not s for s in labels):
        raise ParseError(lineno, f"empty node label in {chunk.strip()!r}")
    return labels


def parse_hyperedges(text: str) -> Hypergraph:
    h = Hypergraph()
    for lineno, line in _content_lines(text):
        body, weight = line, 1.0
        head_part, sep, tail_part = line.rpartition(":")
        if sep:
            try:
                weight = float(tail_part)
                body = head_part.strip()
            except ValueError:
                pass
        try:
            if body.startswith("cyc ") or body.startswith("cyc\t"):
                ids = [h.nodes.intern(s) for s in _labels(body[4:], lineno)]
                edge = CyclicEdge(tuple(ids), "even", weight)
            elif "->" in body:
                parts = body.split("->")
                if len(parts) != 2:
                    raise ParseError(lineno, "more than one '->'")
                tail = [h.nodes.intern(s) for s in _labels(parts[0], lineno)]
                head = [h.nodes.intern(s) for s in _labels(parts[1], lineno)]
                edge = DirectedEdge(tuple(tail), tuple(head), weight)
            else:
                edge = UndirectedEdge(tuple(h.nodes.intern(s) for s in _labels(body, lineno)), weight)
            h.add_hyperedge(edge)
        except ParseError:
            raise
        except HypergraphError as exc:
            raise ParseError(lineno, str(exc)) from exc
    return h


def _species(side: str, lineno: int, what: str) -> list:
    side = side.strip()
    if not side:
        raise EmptySide(lineno, f"reaction has no {what}")
    out = []
    for token in _REACTANT_SPLIT.split(side):
        token = token.strip()
        match = _COEFFICIENT.match(token)
        if match:
            token = match.group(2).strip()
        if not token or token == "+":
            raise ParseError(lineno, f"empty species among the {what}")
        if token not in out:
            out.append(token)
    return out


def parse_reactions(text: str, skip_invalid: bool = False) -> Hypergraph:
    """Reactions as directed edges; ``skip_invalid`` drops reactions whose sides share a species."""
    h = Hypergraph()
    for lineno, line in _content_lines(text):
        parts = line.split("->")
        if len(parts) != 2:
            raise ParseError(lineno, "expected exactly one '->'")
        reactants = _species(parts[0], lineno, "reactants")
        products = _species(parts[1], lineno, "products")
        if set(reactants) & set(products):
            if skip_invalid:
                continue
            shared = sorted(set(reactants) & set(products))
            raise ParseError(lineno, f"species on both sides of the reaction: {', '.join(shared)}")
        tail = [h.nodes.intern(s) for s in reactants]
        head = [h.nodes.intern(s) for s in products]
        h.add_hyperedge(DirectedEdge(tuple(tail), tuple(head), 1.0))
    return h


def parse_edgelist(text: str, undirected: bool = False) -> Digraph:
    nodes = NodeRegistry()
    arcs = []
    for lineno, line in _content_lines(text):
        tokens = line.split()
        if len(tokens) < 2:
            raise ParseError(lineno, "missing destination node")
        if len(tokens) > 3:
            raise ParseError(lineno, f"expected 'src dst [w]', got {len(tokens)} fields")
        weight = 1.0
        if len(tokens) == 3:
            try:
                weight = float(tokens[2])
            except ValueError:
                raise ParseError(lineno, f"invalid weight {tokens[2]!r}") from None
            if not math.isfinite(weight) or weight <= 0:
                raise NonPositiveWeight(f"line {lineno}: arc weight must be positive, got {tokens[2]}")
        i, j = nodes.intern(tokens[0]), nodes.intern(tokens[1])
        arcs.append((i, j, weight))
        if undirected and i != j:
            arcs.append((j, i, weight))
    return Digraph.from_arcs(len(nodes), arcs, tuple(nodes.labels))


def _fmt_weight(w: float) -> str:
    return "" if w == 1.0 else f" : {float(w)!r}"


def write_hyperedges(h: Hypergraph) -> str:
    """Hyperedge-format text; parsing it back gives the same edges up to node ids.

    Ids follow first appearance in the text, so they may come back
    renumbered; labels, kinds, orientations and weights are preserved.
    """
    lab = h.nodes.label
    lines = []
    for e in h.edges:
        if isinstance(e, DirectedEdge):
            body = ",".join(lab(v) for v in sorted(e.tail)) + " -> " + ",".join(lab(v) for v in sorted(e.head))
        elif isinstance(e, CyclicEdge):
            body = "cyc " + ",".join(lab(v) for v in e.canonical_nodes())
        else:
            body = ",".join(lab(v) for v in sorted(e.nodes))
        lines.append(body + _fmt_weight(e.weight))
    return "".join(line + "\n" for line in lines)


def write_reactions(h: Hypergraph) -> str:
    lab = h.nodes.label
    lines = []
    for e in h.edges:
        side_t = " + ".join(lab(v) for v in sorted(e.tail))
        side_h = " + ".join(lab(v) for v in sorted(e.head))
        lines.extend([f"{side_t} -> {side_h}"] * max(1, int(round(e.weight))))
    return "".join(line + "\n" for line in lines)


def _check_converged(result: CentralityResult, allow_unconverged: bool):
    if not result.converged and not allow_unconverged:
        raise NotConverged(result.iterations, result.residual, result)


def write_rankings(result: CentralityResult, labels, allow_unconverged: bool = False) -> str:
    """CSV ``node,score,rank`` in descending score order."""
    _check_converged(result, allow_unconverged)
    ranking = rank(result.scores, TIE_RTOL)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["node", "score", "rank"])
    for i in ranking.order:
        writer.writerow([labels[i], repr(float(result.scores[i])), repr(float(ranking.ranks[i]))])
    return buf.getvalue()


def _finite_or_none(x: float):
    return float(x) if math.isfinite(x) else None


def rankings_json(result: CentralityResult, labels, allow_unconverged: bool = False, **extra) -> str:
    _check_converged(result, allow_unconverged)
    ranking = rank(result.scores, TIE_RTOL)
    doc = {
        **extra,
        "lambda": _finite_or_none(result.eigenvalue),
        "iterations": int(result.iterations),
        "residual": _finite_or_none(result.residual),
        "converged": bool(result.converged),
        "nodes": [labels[i] for i in ranking.order],
        "scores": [float(result.scores[i]) for i in ranking.order],
        "ranks": [float(ranking.ranks[i]) for i in ranking.order],
        "node_order": [str(v) for v in labels],
    }
    return json.dumps(doc, indent=2, sort_keys=True, allow_nan=False) + "\n"


def read_rankings_json(text: str):
    """Inverse of :func:`rankings_json`: ``(labels, CentralityResult)`` in the original node order."""
    doc = json.loads(text)
    labels = doc["node_order"]
    score = dict(zip(doc["nodes"], doc["scores"]))
    result = CentralityResult(
        np.array([score[v] for v in labels], dtype=float),
        math.nan if doc["lambda"] is None else float(doc["lambda"]),
        int(doc["iterations"]),
        math.nan if doc["residual"] is None else float(doc["residual"]),
        bool(doc["converged"]),
    )
    return labels, result


def read_scores_csv(text: str):
    """``(labels, scores)`` from a ``node,score[,rank]`` CSV."""
    reader = csv.reader(io.StringIO(text))
    rows = list(reader)
    if not rows or [c.strip() for c in rows[0][:2]] != ["node", "score"]:
        raise ParseError(1, "expected a 'node,score' header")
    labels, scores = [], []
    for lineno, row in enumerate(rows[1:], 2):
        if not row:
            continue
        if len(row) < 2:
            raise ParseError(lineno, "expected at least 'node,score'")
        try:
            scores.append(float(row[1]))
        except ValueError:
            raise ParseError(lineno, f"invalid score {row[1]!r}") from None
        labels.append(row[0])
    if len(set(labels)) != len(labels):
        raise ParseError(1, "duplicate node labels")
    return labels, np.array(scores)

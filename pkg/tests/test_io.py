import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from generators import cyclic_sc, tail_uniform_sc, undirected_sc
from hyperhec.errors import EmptySide, NonPositiveWeight, NotConverged, ParseError
from hyperhec.hypergraph import CyclicEdge, DirectedEdge, UndirectedEdge, permutation_parity
from hyperhec.io import (
    infer_format,
    parse_edgelist,
    parse_hyperedges,
    parse_reactions,
    rankings_json,
    read_rankings_json,
    read_scores_csv,
    write_hyperedges,
    write_rankings,
    write_reactions,
)
from hyperhec.spectral import CentralityResult

def labelled(h):
    """Edges as label-level facts, independent of node ids."""
    lab = h.nodes.label
    out = set()
    for e in h.edges:
        if isinstance(e, DirectedEdge):
            fact = ("d", frozenset(map(lab, e.tail)), frozenset(map(lab, e.head)))
        elif isinstance(e, CyclicEdge):
            names = [lab(v) for v in e.nodes]
            fact = ("c", frozenset(names), permutation_parity(names) ^ (e.orientation == "odd"))
        else:
            fact = ("u", frozenset(map(lab, e.nodes)))
        out.add((fact, e.weight))
    return out


UNIFORM = CentralityResult(np.full(3, 1 / 3), 2.0, 5, 1e-12, True)


class TestHyperedges:
    def test_weighted_directed(self):
        h = parse_hyperedges("1,2 -> 3 : 2.5\n")
        (e,) = h.edges
        assert isinstance(e, DirectedEdge) and e.weight == 2.5
        assert {h.nodes.label(v) for v in e.tail} == {"1", "2"} and h.nodes.label(*e.head) == "3"

    def test_cyclic(self):
        h = parse_hyperedges("cyc a,b,c\n")
        (e,) = h.edges
        assert isinstance(e, CyclicEdge) and e.weight == 1.0 and e.orientation == "even"
        assert [h.nodes.label(v) for v in e.nodes] == ["a", "b", "c"]

    def test_repeated_node(self):
        with pytest.raises(ParseError) as info:
            parse_hyperedges("# header\na,b,c\na,a,b\n")
        assert info.value.line == 3

    def test_comments_blank_lines_and_interning(self):
        h = parse_hyperedges("# x\n\nb,a,c\nc,d : 3\n")
        assert list(h.nodes.labels) == ["b", "a", "c", "d"]
        assert isinstance(h.edges[0], UndirectedEdge) and h.edges[1].weight == 3.0

    def test_colon_in_label(self):
        h = parse_hyperedges("x:a,x:b\n")
        assert list(h.nodes.labels) == ["x:a", "x:b"] and h.edges[0].weight == 1.0

    def test_trailing_number_is_a_weight(self):
        h = parse_hyperedges("x:1,x:2\n")
        assert list(h.nodes.labels) == ["x:1", "x"] and h.edges[0].weight == 2.0

    @pytest.mark.parametrize("line", ["a,,b", "a,b -> c -> d", "a,b -> ", "a,b : -1", "a,b : 0"])
    def test_errors_name_the_line(self, line):
        with pytest.raises(ParseError) as info:
            parse_hyperedges("a,b\n" + line + "\n")
        assert info.value.line == 2

    def test_duplicates_merge(self):
        h = parse_hyperedges("a,b,c\nc,b,a : 2\n")
        assert len(h) == 1 and h.edges[0].weight == 3.0

    @settings(max_examples=30, deadline=None)
    @given(st.integers(0, 2**32 - 1), st.sampled_from(["undirected", "cyclic", "directed"]))
    def test_round_trip(self, seed, kind):
        rng = np.random.default_rng(seed)
        n = int(rng.integers(4, 10))
        h = {"undirected": lambda: undirected_sc(rng, n, 3), "cyclic": lambda: cyclic_sc(rng, n, 3),
             "directed": lambda: tail_uniform_sc(rng, n, 2, max_heads=2)}[kind]()
        back = parse_hyperedges(write_hyperedges(h))
        assert labelled(back) == labelled(h)
        again = parse_hyperedges(write_hyperedges(back))
        assert write_hyperedges(again) == write_hyperedges(back)
        assert list(again.nodes.labels) == list(back.nodes.labels)


class TestReactions:
    def test_simple(self):
        h = parse_reactions("H + OH -> H2O\n")
        (e,) = h.edges
        assert {h.nodes.label(v) for v in e.tail} == {"H", "OH"} and {h.nodes.label(v) for v in e.head} == {"H2O"}

    def test_coefficient_dropped(self):
        h = parse_reactions("2 H -> H2\n")
        (e,) = h.edges
        assert [h.nodes.label(v) for v in e.tail] == ["H"] and len(e.head) == 1

    def test_empty_side(self):
        with pytest.raises(EmptySide):
            parse_reactions("-> H2O\n")
        with pytest.raises(EmptySide):
            parse_reactions("H2O ->\n")

    def test_ions_kept(self):
        h = parse_reactions("C+ + e- -> C\n")
        assert list(h.nodes.labels) == ["C+", "e-", "C"]

    def test_duplicates_merge(self):
        h = parse_reactions("A + B -> C\nB + A -> C\n")
        assert len(h) == 1 and h.edges[0].weight == 2.0

    def test_species_on_both_sides(self):
        with pytest.raises(ParseError):
            parse_reactions("A + B -> A + C\n")
        assert len(parse_reactions("A + B -> A + C\nA -> B\n", skip_invalid=True)) == 1

    def test_round_trip(self):
        h = tail_uniform_sc(np.random.default_rng(0), 8, 2)
        h = type(h).from_edges([e.with_weight(1.0) for e in h.edges], h.nodes)
        back = parse_reactions(write_reactions(h))
        assert labelled(back) == labelled(h)


class TestEdgelist:
    def test_plain(self):
        g = parse_edgelist("1 2\n")
        assert g.arcs == ((0, 1, 1.0),) and list(g.labels) == ["1", "2"]

    def test_undirected(self):
        g = parse_edgelist("1 2 0.5\n", undirected=True)
        assert g.arcs == ((0, 1, 0.5), (1, 0, 0.5))

    def test_missing_destination(self):
        with pytest.raises(ParseError) as info:
            parse_edgelist("1\n")
        assert info.value.line == 1

    def test_non_positive(self):
        with pytest.raises(NonPositiveWeight):
            parse_edgelist("1 2 1\n2 1 0\n")


class TestRankings:
    def test_uniform_csv(self):
        text = write_rankings(UNIFORM, ["a", "b", "c"])
        lines = text.splitlines()
        assert lines[0] == "node,score,rank"
        assert [row.split(",")[2] for row in lines[1:]] == ["2.0", "2.0", "2.0"]
        assert len({row.split(",")[1] for row in lines[1:]}) == 1

    def test_descending_order(self):
        r = CentralityResult(np.array([0.2, 0.5, 0.3]), 1.0, 1, 0.0, True)
        assert [row.split(",")[0] for row in write_rankings(r, ["a", "b", "c"]).splitlines()[1:]] == ["b", "c", "a"]

    def test_unconverged_refused(self):
        r = CentralityResult(np.full(3, 1 / 3), float("nan"), 9, 1e-3, False)
        with pytest.raises(NotConverged):
            write_rankings(r, ["a", "b", "c"])
        with pytest.raises(NotConverged):
            rankings_json(r, ["a", "b", "c"])
        assert write_rankings(r, ["a", "b", "c"], allow_unconverged=True)
        assert json.loads(rankings_json(r, ["a", "b", "c"], allow_unconverged=True))["lambda"] is None

    def test_json_round_trip(self):
        rng = np.random.default_rng(0)
        x = rng.random(10)
        r = CentralityResult(x / x.sum(), 1.2345678901234567, 17, 3.1e-11, True)
        labels = [f"n{i}" for i in range(10)]
        back_labels, back = read_rankings_json(rankings_json(r, labels, method="hec"))
        assert back_labels == labels and back == r

    def test_csv_scores_round_trip(self):
        rng = np.random.default_rng(1)
        x = rng.random(6)
        r = CentralityResult(x / x.sum(), 1.0, 1, 0.0, True)
        labels, scores = read_scores_csv(write_rankings(r, list("abcdef")))
        order = [ "abcdef".index(v) for v in labels]
        np.testing.assert_array_equal(scores, r.scores[order])

    def test_csv_header_required(self):
        with pytest.raises(ParseError):
            read_scores_csv("a,0.5\n")


@pytest.mark.parametrize(
    "path,fmt", [("x.he", "hyperedges"), ("x.rxn", "reactions"), ("x.TXT", "reactions"), ("x.el", "edgelist")]
)
def test_infer_format(path, fmt):
    assert infer_format(path) == fmt

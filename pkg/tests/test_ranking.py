import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st
from scipy.stats import spearmanr

from hyperhec.errors import DegenerateInput, KOutOfRange, LengthMismatch
from hyperhec.ranking import default_ks, rank, spearman, top_n_table, topk_curve

# integer-valued so that the transforms below stay strictly monotone in floating point
distinct = st.lists(st.integers(-1000, 1000), min_size=2, max_size=40, unique=True).map(lambda v: [float(x) for x in v])


def score_pair(draw_size=st.integers(2, 40)):
    return draw_size.flatmap(
        lambda n: st.tuples(
            st.lists(st.integers(0, 10), min_size=n, max_size=n),
            st.lists(st.integers(0, 10), min_size=n, max_size=n),
        )
    )


class TestRank:
    def test_no_ties(self):
        r = rank([0.1, 0.5, 0.3])
        assert r.order.tolist() == [1, 2, 0]
        assert r.ranks.tolist() == [3.0, 1.0, 2.0]

    def test_ties_share_mean(self):
        assert rank([1.0, 1.0, 1.0]).ranks.tolist() == [2.0, 2.0, 2.0]
        assert rank([3.0, 1.0, 3.0, 0.0]).ranks.tolist() == [1.5, 3.0, 1.5, 4.0]

    def test_relative_tolerance_groups(self):
        x = [1 / 3, 1 / 3 * (1 + 1e-12), 0.2]
        assert rank(x).ranks.tolist() == [2.0, 1.0, 3.0]
        assert rank(x, rtol=1e-9).ranks.tolist() == [1.5, 1.5, 3.0]

    @given(distinct)
    def test_permutation_of_positions(self, x):
        assert sorted(rank(x).ranks.tolist()) == list(range(1, len(x) + 1))


class TestSpearman:
    def test_identical(self):
        assert spearman([1.0, 2.0, 3.0], [1.0, 2.0, 3.0]) == 1.0

    def test_reversed(self):
        assert spearman([1.0, 2.0, 3.0, 4.0], [4.0, 3.0, 2.0, 1.0]) == -1.0

    def test_closed_form(self):
        assert spearman([4, 3, 2, 1], [4, 2, 3, 1]) == 0.8

    def test_length_mismatch(self):
        with pytest.raises(LengthMismatch):
            spearman([1, 2], [1, 2, 3])

    @pytest.mark.parametrize("a,b", [([1, 1, 1], [1, 2, 3]), ([1, 2, 3], [5, 5, 5]), ([1], [1])])
    def test_degenerate(self, a, b):
        with pytest.raises(DegenerateInput):
            spearman(a, b)

    @settings(max_examples=200)
    @given(score_pair())
    def test_matches_scipy_symmetric_bounded(self, pair):
        a, b = (np.array(v, dtype=float) for v in pair)
        assume(np.ptp(a) > 0 and np.ptp(b) > 0)
        rho = spearman(a, b)
        assert -1.0 <= rho <= 1.0
        assert rho == spearman(b, a)
        assert rho == pytest.approx(spearmanr(a, b).statistic, abs=1e-12)

    @given(distinct, distinct)
    def test_monotone_invariance(self, a, b):
        n = min(len(a), len(b))
        a, b = np.array(a[:n]), np.array(b[:n])
        rho = spearman(a, b)
        assert spearman(np.arctan(a / 100), b) == pytest.approx(rho, abs=1e-12)
        assert spearman(a, 3 * b + 7) == pytest.approx(rho, abs=1e-12)

    @given(distinct)
    def test_rho_one_iff_same_order(self, a):
        a = np.array(a)
        assert spearman(a, a**3) == pytest.approx(1.0, abs=1e-12)


class TestTopK:
    def test_half_example(self):
        comp = topk_curve([4, 3, 2, 1], [4, 2, 3, 1], ks=[3, 4])
        assert comp.curve_ab[0] == (3, 0.5)
        assert comp.curve_ab[1][1] == comp.curve_ba[1][1] == comp.rho_full == 0.8

    def test_directions_can_differ(self):
        a = [10, 9, 8, 7, 6, 5]
        b = [6, 10, 5, 9, 8, 7]
        comp = topk_curve(a, b, ks=[3])
        assert comp.curve_ab[0][1] != comp.curve_ba[0][1]

    def test_identical_constant_one(self):
        x = np.random.default_rng(0).random(30)
        comp = topk_curve(x, x)
        assert all(r == 1.0 for _, r in comp.curve_ab + comp.curve_ba)

    def test_degenerate_k_is_nan(self):
        comp = topk_curve([1.0, 1.0, 1.0, 0.5], [4.0, 3.0, 2.0, 1.0], ks=[2, 3, 4])
        assert np.isnan(comp.curve_ab[0][1]) and np.isnan(comp.curve_ab[1][1])
        assert not np.isnan(comp.curve_ab[2][1])

    @pytest.mark.parametrize("ks", [[1], [5], [0, 2]])
    def test_k_out_of_range(self, ks):
        with pytest.raises(KOutOfRange):
            topk_curve([1, 2, 3, 4], [4, 3, 2, 1], ks=ks)

    def test_length_mismatch(self):
        with pytest.raises(LengthMismatch):
            topk_curve([1, 2, 3], [1, 2])

    @settings(max_examples=100)
    @given(score_pair(st.integers(3, 40)))
    def test_endpoint_equals_full(self, pair):
        a, b = (np.array(v, dtype=float) for v in pair)
        assume(np.ptp(a) > 0 and np.ptp(b) > 0)
        comp = topk_curve(a, b)
        assert comp.curve_ab[-1] == comp.curve_ba[-1] == (len(a), comp.rho_full)
        assert comp.rho_full == spearman(a, b)

    @given(distinct)
    def test_same_ranking_same_curves(self, a):
        a = np.array(a)
        comp = topk_curve(a, np.exp(a / 100))
        assert comp.curve_ab == comp.curve_ba

    def test_default_grid(self):
        ks = default_ks(200)
        assert ks[0] == 2 and ks[-1] == 200 and ks == sorted(set(ks))
        assert default_ks(2) == [2] and default_ks(1) == []


class TestTopNTable:
    def test_strict_order(self):
        assert top_n_table([("m", [0.1, 0.7, 0.2])], 3, ["a", "b", "c"]) == {"m": ["b", "c", "a"]}

    def test_tie_by_label(self):
        assert top_n_table([("m", [0.5, 0.5, 0.1])], 2, ["z", "y", "x"]) == {"m": ["y", "z"]}

    def test_uniform_methods_identical_columns(self):
        table = top_n_table([("hec", [1 / 3] * 3), ("ec", [1 / 3] * 3)], 3, ["1", "2", "3"])
        assert table["hec"] == table["ec"] == ["1", "2", "3"]

    def test_n_too_large(self):
        with pytest.raises(KOutOfRange):
            top_n_table([("m", [1.0, 2.0])], 3, ["a", "b"])

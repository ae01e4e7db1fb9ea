from collections import Counter

import networkx as nx
import pytest

from molex.config import DEFAULT_ALPHA_GRID, DEFAULT_K_GRID
from molex.schemas import Variant
from molex.services.bounds import UnsupportedCaseError
from molex.services.graph_core import DegreeCensus, canonical_key, degree_census, is_connected
from molex.services.search import EnumerationRangeError, enumerate_graphs, exhaustive_verify

CONNECTED_COUNTS = {1: 1, 2: 1, 3: 2, 4: 6, 5: 21, 6: 78, 7: 353}

CONNECTED_BY_M = {
    5: {4: 3, 5: 5, 6: 5, 7: 4, 8: 2, 9: 1, 10: 1},
    6: {5: 5, 6: 12, 7: 17, 8: 18, 9: 14, 10: 8, 11: 3, 12: 1},
    7: {6: 9, 7: 29, 8: 56, 9: 79, 10: 79, 11: 59, 12: 31, 13: 9, 14: 2},
}

ALL_CASES = [(Variant.CHI, a) for a in DEFAULT_ALPHA_GRID] \
    + [(Variant.PLATT, a) for a in DEFAULT_ALPHA_GRID] \
    + [(Variant.OGA, k) for k in DEFAULT_K_GRID]


def _atlas_counts(connected):
    counts = Counter()
    for G in nx.graph_atlas_g():
        n = G.number_of_nodes()
        if n == 0 or max(dict(G.degree()).values(), default=0) > 4:
            continue
        if connected and not nx.is_connected(G):
            continue
        counts[n, G.number_of_edges()] += 1
    return counts


# ============================================================================
# Enumeration
# ============================================================================

@pytest.mark.parametrize("n,expected", sorted(CONNECTED_COUNTS.items()))
def test_connected_counts(n, expected):
    assert sum(1 for _ in enumerate_graphs(n)) == expected


@pytest.mark.parametrize("n", sorted(CONNECTED_BY_M))
def test_connected_counts_per_edge_count(n):
    counts = {m: sum(1 for _ in enumerate_graphs(n, m)) for m in range(n - 1, 2 * n + 1)}
    assert counts == CONNECTED_BY_M[n]


@pytest.mark.parametrize("n,expected", [(5, 3), (6, 5), (7, 9), (8, 18)])
def test_tree_counts(n, expected):
    assert sum(1 for _ in enumerate_graphs(n, n - 1)) == expected


@pytest.mark.slow
def test_tree_count_n9():
    assert sum(1 for _ in enumerate_graphs(9, 8)) == 35


@pytest.mark.slow
def test_connected_counts_n8():
    counts = Counter(G.m for G in enumerate_graphs(8))
    assert dict(counts) == {7: 18, 8: 73, 9: 182, 10: 326, 11: 430, 12: 427, 13: 298, 14: 134, 15: 35, 16: 6}
    assert sum(counts.values()) == 1929


def test_four_regular_graph_on_five_vertices():
    graphs = list(enumerate_graphs(5, 10))
    assert len(graphs) == 1
    assert degree_census(graphs[0]) == DegreeCensus(n4=5)


def test_representatives_are_connected_and_pairwise_non_isomorphic():
    graphs = list(enumerate_graphs(7))
    keys = [canonical_key(G) for G in graphs]
    assert len(set(keys)) == len(keys)
    assert all(is_connected(G) for G in graphs)


def test_connected_counts_match_the_graph_atlas():
    atlas = _atlas_counts(connected=True)
    ours = Counter((G.n, G.m) for n in range(1, 8) for G in enumerate_graphs(n))
    assert ours == atlas


def test_all_graph_counts_match_the_graph_atlas():
    atlas = _atlas_counts(connected=False)
    ours = Counter((G.n, G.m) for n in range(1, 8) for G in enumerate_graphs(n, connected=False))
    assert ours == atlas


def test_disconnected_enumeration_has_no_duplicates():
    graphs = list(enumerate_graphs(6, connected=False))
    keys = {canonical_key(G) for G in graphs}
    assert len(keys) == len(graphs)
    assert sum(1 for G in graphs if not is_connected(G)) == len(graphs) - CONNECTED_COUNTS[6]


def test_process_pool_gives_the_same_classes():
    serial = {canonical_key(G) for G in enumerate_graphs(7, jobs=1)}
    pooled = {canonical_key(G) for G in enumerate_graphs(7, jobs=2)}
    assert pooled == serial


@pytest.mark.parametrize("n,m", [(0, None), (13, None), (5, 11), (5, -1)])
def test_enumeration_range(n, m):
    with pytest.raises(EnumerationRangeError):
        list(enumerate_graphs(n, m))


def test_max_order_comes_from_settings(monkeypatch):
    monkeypatch.setenv("MOLEX_MAX_ORDER", "6")
    with pytest.raises(EnumerationRangeError):
        list(enumerate_graphs(7))


# ============================================================================
# Exhaustive verification
# ============================================================================

def _summary(summaries, m, variant=None, parameter=None):
    return next(
        s for s in summaries
        if s.m == m
        and (variant is None or s.case.variant == variant)
        and (parameter is None or s.case.parameter == parameter)
    )


def test_star_is_the_only_holder_on_five_vertices(k14):
    summaries = exhaustive_verify((5, 5), [(Variant.CHI, -0.5)])
    assert [s.m for s in summaries] == list(range(4, 11))
    trees = _summary(summaries, 4)
    assert trees.graph_count == 3
    assert [h.canonical_key for h in trees.equality_holders] == [canonical_key(k14).hex()]
    assert trees.attained
    assert trees.min_value == pytest.approx(trees.bound_value)


def test_no_violations_up_to_seven_vertices():
    summaries = exhaustive_verify((5, 7), ALL_CASES)
    assert summaries
    assert [v for s in summaries for v in s.violations] == []
    assert {s.n for s in summaries} == {5, 6, 7}


def test_high_regime_holder_census():
    summaries = exhaustive_verify((6, 6), [(Variant.CHI, 2.0)])
    summary = _summary(summaries, 5)
    assert summary.bound_value == pytest.approx(120)
    assert len(summary.equality_holders) == 1
    assert summary.equality_holders[0].edge_census == {"1,2": 1, "1,4": 3, "2,4": 1}


def test_attainment_depends_on_the_regime():
    summaries = exhaustive_verify((7, 7), [(Variant.CHI, -0.5), (Variant.CHI, 2.0)])
    assert not _summary(summaries, 6, parameter=-0.5).attained
    assert _summary(summaries, 6, parameter=2.0).attained
    assert not _summary(summaries, 7, parameter=-0.5).violations


def test_residue_zero_bound_unattained_at_six_six():
    summaries = exhaustive_verify((6, 6), [(Variant.CHI, -0.5), (Variant.OGA, 1.0)])
    for s in summaries:
        if s.m == 6:
            assert s.graph_count == 12
            assert not s.attained
            assert s.min_value > s.bound_value


def test_alpha_one_keeps_only_supported_residues():
    summaries = exhaustive_verify((5, 5), [(Variant.CHI, 1.0)])
    assert {(s.n + s.m) % 3 for s in summaries} == {0}
    assert all(not s.violations for s in summaries)
    with pytest.raises(UnsupportedCaseError):
        exhaustive_verify((5, 5), [(Variant.PLATT, 1.0)])


def test_exhaustive_range():
    with pytest.raises(EnumerationRangeError):
        exhaustive_verify((4, 6), [(Variant.CHI, -0.5)])


@pytest.mark.slow
def test_no_violations_up_to_nine_vertices():
    summaries = exhaustive_verify((8, 9), ALL_CASES, jobs=2)
    assert [v for s in summaries for v in s.violations] == []

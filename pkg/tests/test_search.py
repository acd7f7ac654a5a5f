import itertools

import pytest

from kneser_geodetic import constructions as cons
from kneser_geodetic import search
from kneser_geodetic.core import GraphParams
from kneser_geodetic.geodesy import VertexSet, is_geodetic_set, is_hull_set
from kneser_geodetic.search import BudgetExceeded, SearchBudget, min_geodetic_set, min_hull_set

from conftest import oracle
from oracles import brute_ghn, brute_gn


@pytest.mark.parametrize("n,k,expected", [(2, 1, 4), (2, 2, 5), (2, 3, 6), (1, 1, 3), (1, 3, 5)])
def test_min_geodetic_values(n, k, expected):
    report = min_geodetic_set(GraphParams(n, k))
    assert report.value == expected
    assert report.details["witness_verified"]


@pytest.mark.parametrize("n,k", [(2, 1), (2, 2)])
def test_min_geodetic_matches_brute_force(n, k):
    assert min_geodetic_set(GraphParams(n, k)).value == brute_gn(n, k)


@pytest.mark.parametrize("n,k,expected", [(2, 1, 3), (2, 2, 3), (3, 2, 3), (2, 4, 2), (2, 3, 2), (2, 5, 2)])
def test_min_hull_values(n, k, expected):
    report = min_hull_set(GraphParams(n, k))
    assert report.value == expected == brute_ghn(n, k)
    assert report.agrees_with_paper


def test_witness_is_lexicographically_smallest():
    p = GraphParams(2, 1)
    o = oracle(2, 1)
    report = min_geodetic_set(p)
    ranks = [o.rank_of(v) for v in report.witness]
    first = next(c for c in itertools.combinations(range(o.size), 4)
                 if is_geodetic_set(o, VertexSet.from_ranks(o.size, c)))
    assert tuple(ranks) == first
    hull = min_hull_set(p)
    ranks = [o.rank_of(v) for v in hull.witness]
    first = next(c for c in itertools.combinations(range(o.size), 3)
                 if is_hull_set(o, VertexSet.from_ranks(o.size, c)))
    assert tuple(ranks) == first


def test_witness_texts():
    assert [v.text() for v in min_hull_set(GraphParams(2, 4)).witness] == ["1,2", "1,3"]


def test_gn_respects_upper_bound():
    p = GraphParams(3, 1)
    report = min_geodetic_set(p, SearchBudget(max_subset_size=8, time_limit=60))
    assert report.value <= cons.gn_upper_bound(p)


def test_budget_exceeded_by_size():
    with pytest.raises(BudgetExceeded) as info:
        min_geodetic_set(GraphParams(2, 2), SearchBudget(max_subset_size=3))
    r = info.value.report
    assert r.status == "budget_exceeded" and r.value is None
    assert r.lower_bound == 4 and r.upper_bound == 9


def test_budget_exceeded_by_candidates():
    with pytest.raises(BudgetExceeded) as info:
        min_geodetic_set(GraphParams(2, 3), SearchBudget(max_candidates=50))
    assert info.value.report.lower_bound >= 2


def test_budget_validation():
    with pytest.raises(ValueError):
        SearchBudget(max_subset_size=0)


def test_report_serialization_is_ordered():
    d = min_hull_set(GraphParams(2, 1)).to_dict()
    assert list(d) == ["params", "quantity", "value", "expected", "witness", "agrees_with_paper",
                       "status", "discrepancy_note", "lower_bound", "upper_bound", "candidates",
                       "details", "elapsed"]
    assert d["elapsed"] is None
    assert d["witness"] == ["1,2", "1,3", "1,4"]


def test_sweep_small_targets():
    for target in search.TARGETS:
        reports = search.sweep_verify(target, 60)
        assert reports and all(r.agrees_with_paper for r in reports), target


def test_sweep_diameter_two_only():
    labels = [r.params.label() for r in search.sweep_verify("theorem7", 60)]
    assert "K(7,3)" not in labels and "K(8,3)" in labels


def test_sweep_degenerate_marked():
    reports = search.sweep_verify("theorem1", 10, include_degenerate=True)
    outside = [r for r in reports if r.status == "outside_hypotheses"]
    assert [r.params.k for r in outside] == list(range(1, 9))
    assert all(r.params.n == 1 for r in outside)


def test_sweep_threads_do_not_change_results():
    one = [r.to_dict() for r in search.sweep_verify("corollary8", 60, threads=1)]
    four = [r.to_dict() for r in search.sweep_verify("corollary8", 60, threads=4)]
    assert one == four


def test_unknown_target():
    with pytest.raises(ValueError):
        search.sweep_verify("theorem9", 10)

import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from assignments import CorrespondenceAssignment, ListAssignment, identity_correspondence
from errors import LimitExceeded, PartialColouring
from exact_solver import check, enumerate_corr, enumerate_list, solve_corr, solve_list
from generators import gen_random_plane


def _lists(triangle, *colours):
    return ListAssignment.from_lists({v: cs for v, cs in zip(triangle.vertices, colours)})


def test_triangle_two_colours_each(triangle):
    outcome = solve_list(triangle, _lists(triangle, "12", "12", "12"))
    assert outcome.status == "not-colourable"
    assert outcome.witness is None


def test_triangle_colourable(triangle):
    L = _lists(triangle, "12", "12", "13")
    outcome = solve_list(triangle, L)
    assert outcome.colourable
    assert check(triangle, L, outcome.witness).proper


def test_empty_list_is_not_colourable(triangle):
    outcome = solve_list(triangle, _lists(triangle, "1", "", "2"))
    assert outcome.status == "not-colourable"


def test_budget_exceeded(triangle):
    outcome = solve_list(triangle, _lists(triangle, "123", "123", "123"), budget=1)
    assert outcome.status == "budget-exceeded"
    assert outcome.witness is None


def test_enumerate_in_lexicographic_order(triangle):
    colourings = enumerate_list(triangle, _lists(triangle, "123", "123", "123"))
    assert len(colourings) == 6
    assert colourings[0] == {"v0": "1", "v1": "2", "v2": "3"}
    assert colourings[-1] == {"v0": "3", "v1": "2", "v2": "1"}


def test_enumerate_limit(triangle):
    with pytest.raises(LimitExceeded):
        enumerate_list(triangle, _lists(triangle, "123", "123", "123"), limit=5)


def test_empty_matchings_allow_everything(triangle):
    A = CorrespondenceAssignment(_lists(triangle, "1", "1", "1"), {})
    outcome = solve_corr(triangle, A)
    assert outcome.witness == {"v0": "1", "v1": "1", "v2": "1"}
    assert check(triangle, A, outcome.witness).proper


def test_check_reports_violations(triangle):
    L = _lists(triangle, "12", "12", "3")
    report = check(triangle, L, {"v0": "1", "v1": "1", "v2": "4"})
    assert not report.proper
    assert [v.edge for v in report.violations] == [("v0", "v1")]
    assert report.outside_list == ["v2"]


def test_check_partial_colouring(triangle):
    with pytest.raises(PartialColouring):
        check(triangle, _lists(triangle, "1", "2", "3"), {"v0": "1"})


def test_counterexample_is_not_colourable(g42):
    outcome = solve_corr(g42.graph, g42.assignment)
    assert outcome.status == "not-colourable"


def _random_lists(g, rng):
    palette = ["1", "2", "3"]
    return ListAssignment.from_lists({v: rng.sample(palette, rng.randint(1, 3)) for v in g.vertices})


def _naive(g, L):
    for choice in itertools.product(*(L.sorted(v) for v in g.vertices)):
        phi = dict(zip(g.vertices, choice))
        if all(phi[u] != phi[v] for u, v in g.edges):
            return True
    return False


@given(n=st.integers(1, 8), seed=st.integers(0, 100_000))
@settings(derandomize=True, deadline=None, max_examples=150)
def test_agrees_with_naive_enumeration(n, seed):
    g = gen_random_plane(n, seed)
    L = _random_lists(g, random.Random(seed))
    outcome = solve_list(g, L)
    assert outcome.colourable == _naive(g, L)
    if outcome.colourable:
        assert check(g, L, outcome.witness).proper


def test_enumerate_corr_respects_crossed_matching(triangle):
    # only (v0, v1) = (1, 2) is forbidden
    A = CorrespondenceAssignment.build(_lists(triangle, "12", "12", "12"), {("v0", "v1"): [("1", "2")]})
    colourings = enumerate_corr(triangle, A)
    assert len(colourings) == 6
    assert colourings[0] == {"v0": "1", "v1": "1", "v2": "1"}
    assert all(not (phi["v0"] == "1" and phi["v1"] == "2") for phi in colourings)

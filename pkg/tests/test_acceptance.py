"""
Corpus runs over seeded random instances

The larger sweeps are marked slow; run them with `pytest -m slow`.
"""

import random

import pytest
from hypothesis import given, settings, strategies as st

from assignments import ListAssignment, SeparationSpec, identity_correspondence
from constructive_solver import ExtensionInstance, PrecolouredPath, colour_no_offensive, extend_precoloured
from exact_solver import check, solve_corr, solve_list
from generators import gen_random_assignment, gen_random_plane
from plane_graph import face_count, outer_vertices, outer_walk

SPEC_42 = SeparationSpec.of(4, 2)


@pytest.mark.slow
@pytest.mark.parametrize("seed", range(200))
def test_no_offensive_triangles_means_colourable(seed):
    n = 1 + seed % 40
    g = gen_random_plane(n, seed, deletions=seed % 5)
    L = gen_random_assignment(g, SPEC_42, seed=seed, forbid_offensive=True)
    phi = colour_no_offensive(g, L)
    assert check(g, L, phi).proper
    if n <= 12:
        assert solve_list(g, L).colourable


def _outer_path(g, L, rng):
    walk = outer_walk(g)
    if not walk.darts:
        v = min(outer_vertices(g))
        return PrecolouredPath.of([(v, rng.choice(L.sorted(v)))])
    p, q = rng.choice(walk.darts)
    cp = rng.choice(L.sorted(p))
    return PrecolouredPath.of([(p, cp), (q, rng.choice(sorted(L[q] - {cp})))])


@pytest.mark.slow
@pytest.mark.parametrize("seed", range(200))
def test_precoloured_path_extends(seed):
    rng = random.Random(seed)
    g = gen_random_plane(2 + seed % 30, 5000 + seed)
    L = gen_random_assignment(g, SPEC_42, seed=seed, forbid_offensive=True)
    outer = outer_vertices(g)
    L = ListAssignment({v: frozenset(rng.sample(sorted(cs), 3)) if v in outer else cs for v, cs in L.lists.items()})
    P = _outer_path(g, L, rng)
    phi = extend_precoloured(ExtensionInstance(g, P, L))
    assert check(g, L, phi).proper
    assert all(phi[v] == c for v, c in P.pins)


@given(n=st.integers(1, 10), seed=st.integers(0, 100_000))
@settings(derandomize=True, deadline=None, max_examples=500)
def test_list_and_identity_correspondence_agree(n, seed):
    g = gen_random_plane(n, seed)
    L = gen_random_assignment(g, SeparationSpec.of(3, 2), palette=5, seed=seed)
    A = identity_correspondence(g, L)
    by_lists = solve_list(g, L)
    by_matchings = solve_corr(g, A)
    assert by_lists.colourable == by_matchings.colourable
    if by_matchings.colourable:
        assert check(g, L, by_matchings.witness).proper == check(g, A, by_matchings.witness).proper


@given(n=st.integers(2, 10), seed=st.integers(0, 100_000), drops=st.integers(1, 6))
@settings(derandomize=True, deadline=None, max_examples=500)
def test_dropping_matching_pairs_never_hurts(n, seed, drops):
    g = gen_random_plane(n, seed)
    L = gen_random_assignment(g, SeparationSpec.of(3, 2), palette=5, seed=seed)
    A = identity_correspondence(g, L)
    before = solve_corr(g, A).colourable
    rng = random.Random(seed)
    for _ in range(drops):
        edges = [e for e in g.edges if A.matching(*e)]
        if not edges:
            break
        u, v = rng.choice(edges)
        A = A.without_pair(u, v, rng.choice(sorted(A.matching(u, v))))
    if before:
        assert solve_corr(g, A).colourable


def test_face_counts_of_the_gadgets(gadget_h, g42):
    assert face_count(gadget_h.graph) == 13
    assert face_count(g42.graph) == 208

import itertools

import pytest
from hypothesis import given, settings, strategies as st

from conftest import cyclic
from errors import (
    AsymmetricRotation,
    DuplicateNeighbour,
    MissingItem,
    NotACutVertex,
    NotAChord,
    NotPlanarEmbedding,
    UnknownFace,
    UnknownOuterFace,
    WalkNotCycle,
)
from generators import gen_random_plane
from plane_graph import (
    build_plane_graph,
    components,
    corner_face,
    cut_vertices,
    enumerate_triangles,
    euler_characteristic,
    face_count,
    find_chords,
    outer_vertices,
    outer_walk,
    relabel,
    remove,
    reroot_outer_face,
    split_at_chord,
    split_at_cut_vertex,
    subgraph,
    trace_faces,
)


def test_triangle_has_two_faces(triangle):
    faces = trace_faces(triangle)
    assert len(faces) == 2
    assert all(len(f) == 3 for f in faces)
    assert euler_characteristic(triangle) == 2


def test_triangle_outer_walk(triangle):
    walk = outer_walk(triangle)
    assert sorted(walk.vertices) == ["v0", "v1", "v2"]
    assert walk.is_cycle


def test_k5_rotation_fails_euler():
    names = [f"v{i}" for i in range(5)]
    rotation = {v: [names[(i + s) % 5] for s in (4, 3, 2, 1)] for i, v in enumerate(names)}
    with pytest.raises(NotPlanarEmbedding):
        build_plane_graph(names, rotation)


def test_two_disjoint_edges():
    rotation = {"a": ["b"], "b": ["a"], "c": ["d"], "d": ["c"]}
    g = build_plane_graph(rotation, rotation)
    assert g.num_components == 2
    assert face_count(g) == 1
    assert euler_characteristic(g) == 3


def test_path_has_one_face(path3):
    faces = trace_faces(path3)
    assert len(faces) == 1
    assert len(faces[0]) == 4


def test_single_vertex_has_empty_walk():
    g = build_plane_graph(["x"], {})
    assert outer_walk(g).vertices == ()
    assert outer_vertices(g) == frozenset({"x"})
    assert face_count(g) == 1


def test_empty_graph():
    g = build_plane_graph([], {})
    assert g.vertices == ()
    assert g.outer_face is None
    assert outer_walk(g).vertices == ()


def test_rejects_asymmetric_rotation():
    with pytest.raises(AsymmetricRotation):
        build_plane_graph(["a", "b"], {"a": ["b"], "b": []})


def test_rejects_repeated_neighbour():
    with pytest.raises(DuplicateNeighbour):
        build_plane_graph(["a", "b"], {"a": ["b", "b"], "b": ["a"]})


def test_rejects_loop():
    with pytest.raises(DuplicateNeighbour):
        build_plane_graph(["a"], {"a": ["a"]})


def test_unknown_outer_hint(triangle):
    with pytest.raises(UnknownOuterFace):
        build_plane_graph(triangle.vertices, triangle.rotation, ["v0", "v9"])


def test_outer_hint_selects_face(square_with_diagonal):
    g = build_plane_graph(square_with_diagonal.vertices, square_with_diagonal.rotation, ["a", "c", "b"])
    assert sorted(outer_walk(g).vertices) == ["a", "b", "c"]


def test_default_outer_face_is_longest(square_with_diagonal):
    assert cyclic(outer_walk(square_with_diagonal).vertices, "a") == ["a", "b", "c", "d"]


def test_gadget_h_faces(gadget_h):
    g = gadget_h.graph
    assert len(g.edges) == 20
    assert face_count(g) == 13
    assert cyclic(outer_walk(g).vertices, "v1") == ["v1", "v3", "v2", "v4"]


def test_cut_vertices(path3, triangle):
    assert cut_vertices(path3) == ["b"]
    assert cut_vertices(triangle) == []


def test_find_chords(square_with_diagonal):
    assert find_chords(square_with_diagonal) == [("a", "c")]


def test_find_chords_needs_a_cycle(path3):
    with pytest.raises(WalkNotCycle):
        find_chords(path3)


def test_enumerate_triangles(square_with_diagonal):
    assert enumerate_triangles(square_with_diagonal) == [("a", "b", "c"), ("a", "c", "d")]


def test_split_at_chord(square_with_diagonal):
    g1, g2 = split_at_chord(square_with_diagonal, "a", "c")
    assert g1.vertices == ("a", "b", "c")
    assert g2.vertices == ("a", "c", "d")
    for part in (g1, g2):
        assert ("a", "c") in outer_walk(part).edges


def test_split_at_chord_rejects_walk_edge(square_with_diagonal):
    with pytest.raises(NotAChord):
        split_at_chord(square_with_diagonal, "a", "b")


def test_split_at_chord_rejects_non_edge(square_with_diagonal):
    with pytest.raises(NotAChord):
        split_at_chord(square_with_diagonal, "b", "d")


def test_split_at_cut_vertex(path3):
    g1, g2 = split_at_cut_vertex(path3, "b")
    assert g1.vertices == ("a", "b")
    assert g2.vertices == ("b", "c")


def test_split_at_cut_vertex_rejects_non_cut(path3):
    with pytest.raises(NotACutVertex):
        split_at_cut_vertex(path3, "a")


def test_remove_edge_and_vertex(square_with_diagonal):
    no_chord = remove(square_with_diagonal, ("c", "a"))
    assert not no_chord.has_edge("a", "c")
    assert face_count(no_chord) == 2
    no_d = remove(square_with_diagonal, "d")
    assert no_d.vertices == ("a", "b", "c")
    assert cyclic(outer_walk(no_d).vertices, "a") == ["a", "b", "c"]


def test_remove_missing_item(triangle):
    with pytest.raises(MissingItem):
        remove(triangle, "zz")
    with pytest.raises(MissingItem):
        remove(triangle, ("v0", "zz"))


def test_reroot_outer_face(triangle):
    inner = next(f for f in triangle.faces if f.id != triangle.outer_faces[0])
    g = reroot_outer_face(triangle, inner)
    assert g.outer_face == inner
    with pytest.raises(UnknownFace):
        reroot_outer_face(triangle, 99)


def test_corner_face_opens_where_vertex_was(k4_instance):
    g, _ = k4_instance
    k4 = subgraph(g, ["a", "b", "c", "d"])
    assert corner_face(g, k4, "a", "e").incident == frozenset({"a", "b", "d"})
    assert corner_face(g, k4, "a", "f").incident == frozenset({"a", "b", "c"})


def test_subgraph_inherits_outer_face(k4_instance):
    g, _ = k4_instance
    k4 = subgraph(g, ["a", "b", "c", "d"])
    assert outer_walk(k4).edges == frozenset({("a", "b"), ("b", "c"), ("a", "c")})


def test_components_keep_their_outer_faces():
    rotation = {"a": ["b"], "b": ["a"], "x": []}
    g = build_plane_graph(rotation, rotation)
    parts = components(g)
    assert [p.vertices for p in parts] == [("a", "b"), ("x",)]


def test_relabel_keeps_structure(gadget_h):
    mapping = {v: v.upper() for v in gadget_h.graph.vertices}
    g = relabel(gadget_h.graph, mapping)
    assert len(g.edges) == 20
    assert face_count(g) == 13
    assert cyclic(outer_walk(g).vertices, "V1") == ["V1", "V3", "V2", "V4"]


@given(n=st.integers(1, 30), seed=st.integers(0, 10_000), deletions=st.integers(0, 5))
@settings(derandomize=True, deadline=None, max_examples=60)
def test_every_dart_in_exactly_one_face(n, seed, deletions):
    g = gen_random_plane(n, seed, deletions=deletions)
    darts = [d for f in g.faces for d in f.darts]
    assert len(darts) == len(set(darts)) == 2 * len(g.edges)
    assert euler_characteristic(g) == 1 + g.num_components


@given(n=st.integers(4, 25), seed=st.integers(0, 10_000))
@settings(derandomize=True, deadline=None, max_examples=40)
def test_removing_inner_vertex_keeps_outer_walk(n, seed):
    g = gen_random_plane(n, seed)
    inner = [v for v in g.vertices if v not in outer_vertices(g)]
    if not inner:
        return
    h = remove(g, inner[0])
    for fid in g.outer_faces:
        old = g.faces[fid]
        if old.anchor is None:
            assert set(old.darts) <= set(d for f in h.outer_faces for d in h.faces[f].darts)


def _polygon(n, chords=()):
    """Convex n-gon v0 .. v{n-1} counter-clockwise, with non-crossing chords"""
    names = [f"v{i}" for i in range(n)]
    adjacent = {i: {(i + 1) % n, (i - 1) % n} for i in range(n)}
    for i, j in chords:
        adjacent[i].add(j)
        adjacent[j].add(i)
    rotation = {names[i]: [names[j] for j in sorted(adjacent[i], key=lambda j: (j - i) % n)] for i in range(n)}
    return build_plane_graph(rotation, rotation)


def test_chordless_pentagon():
    g = _polygon(5)
    assert find_chords(g) == []
    assert enumerate_triangles(g) == []


@pytest.mark.parametrize("n,chord,sizes", [(6, (0, 3), [4, 4]), (5, (0, 2), [3, 4]), (4, (0, 2), [3, 3])])
def test_split_polygon_at_chord(n, chord, sizes):
    g = _polygon(n, [chord])
    vi, vj = f"v{chord[0]}", f"v{chord[1]}"
    assert find_chords(g) == [(vi, vj)]
    g1, g2 = split_at_chord(g, vi, vj)
    assert sorted([len(g1.vertices), len(g2.vertices)]) == sizes
    for part in (g1, g2):
        # each side is a single cycle bounded by the chord
        assert len(part.edges) == len(part.vertices)
        assert (vi, vj) in outer_walk(part).edges


def test_split_bowtie():
    # a, b to the right of u and c, d to the left
    rotation = {"u": ["a", "d", "c", "b"], "a": ["u", "b"], "b": ["a", "u"], "c": ["u", "d"], "d": ["c", "u"]}
    g = build_plane_graph(rotation, rotation)
    assert cut_vertices(g) == ["u"]
    g1, g2 = split_at_cut_vertex(g, "u")
    assert set(g1.edges) == {("a", "b"), ("a", "u"), ("b", "u")}
    assert set(g2.edges) == {("c", "d"), ("c", "u"), ("d", "u")}


def test_split_triangle_with_pendant():
    rotation = {"a": ["b", "u"], "b": ["u", "a"], "u": ["a", "b", "p"], "p": ["u"]}
    g = build_plane_graph(rotation, rotation)
    g1, g2 = split_at_cut_vertex(g, "u")
    assert set(g1.vertices) == {"a", "b", "u"}
    assert g2.edges == (("p", "u"),)


def test_reroot_square_to_triangle(square_with_diagonal):
    g = square_with_diagonal
    triangle = next(f for f in g.faces if len(f) == 3)
    assert len(outer_walk(reroot_outer_face(g, triangle)).vertices) == 3


def test_wheel_hub_deletion_reroot():
    rim = [f"r{i}" for i in range(5)]
    rotation = {"h": list(rim)}
    for i, r in enumerate(rim):
        rotation[r] = [rim[(i + 1) % 5], "h", rim[(i - 1) % 5]]
    wheel = build_plane_graph(rotation, rotation)
    assert face_count(wheel) == 6
    rest = remove(wheel, "h")
    merged = corner_face(wheel, rest, "r0", "h")
    assert merged.id != rest.outer_face.id
    rerooted = reroot_outer_face(rest, merged)
    assert outer_vertices(rerooted) == frozenset(wheel.neighbours("h"))


@given(n=st.integers(1, 10), seed=st.integers(0, 10_000), deletions=st.integers(0, 6))
@settings(derandomize=True, deadline=None, max_examples=150)
def test_triangles_match_brute_force(n, seed, deletions):
    g = gen_random_plane(n, seed, deletions=deletions)
    brute = [t for t in itertools.combinations(g.vertices, 3)
             if g.has_edge(t[0], t[1]) and g.has_edge(t[1], t[2]) and g.has_edge(t[0], t[2])]
    assert enumerate_triangles(g) == sorted(brute)


@given(n=st.integers(3, 25), seed=st.integers(0, 10_000), deletions=st.integers(0, 8))
@settings(derandomize=True, deadline=None, max_examples=120)
def test_split_counts(n, seed, deletions):
    g = gen_random_plane(n, seed, deletions=deletions)
    V, E = len(g.vertices), len(g.edges)
    for u in cut_vertices(g):
        g1, g2 = split_at_cut_vertex(g, u)
        assert len(g1.vertices) + len(g2.vertices) == V + 1
        assert len(g1.edges) + len(g2.edges) == E
    if g.num_components == 1 and outer_walk(g).is_cycle:
        for vi, vj in find_chords(g):
            g1, g2 = split_at_chord(g, vi, vj)
            assert len(g1.vertices) + len(g2.vertices) == V + 2
            assert len(g1.edges) + len(g2.edges) == E + 1
            assert (vi, vj) in outer_walk(g1).edges
            assert (vi, vj) in outer_walk(g2).edges

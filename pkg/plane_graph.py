#!/usr/bin/env python3
"""
Plane graph module

Simple graphs carried by a rotation system (the cyclic order of neighbours
around each vertex) together with a designated outer face. Faces are traced
from the rotations; planarity is certified by the Euler relation on the traced
faces rather than by a planarity test.

Face tracing rule: after the dart (u, v) comes (v, w) where w follows u in the
rotation at v. With counter-clockwise rotations the outer face is walked
counter-clockwise around the drawing.

Every surgery (vertex or edge deletion, splits, component extraction) returns a
new PlaneGraph whose outer face is inherited from the old one: the face holding
the surviving darts of the old outer walk, else the face opening into the
corner where deleted material used to be.
"""

import logging
from collections import Counter, deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Set, Tuple, Union

import networkx as nx

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

logger = logging.getLogger(__name__)

Vertex = str
Dart = Tuple[Vertex, Vertex]
Edge = Tuple[Vertex, Vertex]


def edge_key(u: Vertex, v: Vertex) -> Edge:
    """Canonical orientation of an undirected edge (smaller token first)"""
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Face:
    id: int
    darts: Tuple[Dart, ...]
    # set only for the empty face around an isolated vertex
    anchor: Optional[Vertex] = None

    @property
    def vertices(self) -> Tuple[Vertex, ...]:
        """Vertices in walk order, repeated where the walk revisits them"""
        return tuple(u for u, _ in self.darts)

    @property
    def incident(self) -> FrozenSet[Vertex]:
        if self.anchor is not None:
            return frozenset((self.anchor,))
        return frozenset(self.vertices)

    def __len__(self) -> int:
        return len(self.darts)


@dataclass(frozen=True)
class BoundaryWalk:
    """Closed walks of the outer face, one per connected component"""

    faces: Tuple[Face, ...]

    @property
    def darts(self) -> Tuple[Dart, ...]:
        return tuple(d for f in self.faces for d in f.darts)

    @property
    def vertices(self) -> Tuple[Vertex, ...]:
        return tuple(v for f in self.faces for v in f.vertices)

    @property
    def edges(self) -> FrozenSet[Edge]:
        return frozenset(edge_key(u, v) for u, v in self.darts)

    @property
    def is_cycle(self) -> bool:
        verts = self.vertices
        return len(self.faces) == 1 and len(verts) >= 3 and len(set(verts)) == len(verts)

    def __len__(self) -> int:
        return len(self.darts)


@dataclass(frozen=True)
class PlaneGraph:
    vertices: Tuple[Vertex, ...]
    rotation: Mapping[Vertex, Tuple[Vertex, ...]]
    faces: Tuple[Face, ...]
    # one outer face id per component, components ordered by smallest vertex
    outer_faces: Tuple[int, ...]
    component_vertices: Tuple[Tuple[Vertex, ...], ...] = field(repr=False)

    @cached_property
    def nx_graph(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(self.vertices)
        graph.add_edges_from(self.edges)
        return graph

    @cached_property
    def edges(self) -> Tuple[Edge, ...]:
        return tuple(sorted({edge_key(u, v) for u in self.vertices for v in self.rotation[u]}))

    @cached_property
    def _component_index(self) -> Dict[Vertex, int]:
        return {v: i for i, comp in enumerate(self.component_vertices) for v in comp}

    @property
    def outer_face(self) -> Optional[Face]:
        """Outer face of the first component (None for the empty graph)"""
        return self.faces[self.outer_faces[0]] if self.outer_faces else None

    def outer_face_of(self, v: Vertex) -> Face:
        return self.faces[self.outer_faces[self._component_index[v]]]

    def component_of(self, v: Vertex) -> Tuple[Vertex, ...]:
        return self.component_vertices[self._component_index[v]]

    def neighbours(self, v: Vertex) -> Tuple[Vertex, ...]:
        return self.rotation[v]

    def degree(self, v: Vertex) -> int:
        return len(self.rotation[v])

    def has_edge(self, u: Vertex, v: Vertex) -> bool:
        return u in self.rotation and v in self.rotation[u]

    def face_component(self, face: Face) -> int:
        v = face.anchor if face.anchor is not None else face.darts[0][0]
        return self._component_index[v]

    @property
    def num_components(self) -> int:
        return len(self.component_vertices)

    def __contains__(self, v: object) -> bool:
        return v in self.rotation


# =============================================================================
# Construction
# =============================================================================

def _trace(vertices: Sequence[Vertex], rotation: Mapping[Vertex, Sequence[Vertex]]) -> Tuple[Face, ...]:
    position = {v: {w: i for i, w in enumerate(rotation[v])} for v in vertices}
    seen: Set[Dart] = set()
    faces: List[Face] = []
    for v in vertices:
        if not rotation[v]:
            faces.append(Face(len(faces), (), anchor=v))
            continue
        for w in rotation[v]:
            if (v, w) in seen:
                continue
            darts = []
            u, x = v, w
            while (u, x) not in seen:
                seen.add((u, x))
                darts.append((u, x))
                around = rotation[x]
                u, x = x, around[(position[x][u] + 1) % len(around)]
            faces.append(Face(len(faces), tuple(darts)))
    return tuple(faces)


def _dart_index(faces: Iterable[Face]) -> Dict[Union[Dart, Vertex], int]:
    """Map every dart, and every isolated vertex, to the id of its face"""
    index: Dict[Union[Dart, Vertex], int] = {}
    for f in faces:
        if f.anchor is not None:
            index[f.anchor] = f.id
        for d in f.darts:
            index[d] = f.id
    return index


def _components(vertices: Sequence[Vertex], rotation: Mapping[Vertex, Sequence[Vertex]]) -> Tuple[Tuple[Vertex, ...], ...]:
    graph = nx.Graph()
    graph.add_nodes_from(vertices)
    graph.add_edges_from((u, v) for u in vertices for v in rotation[u])
    return tuple(sorted(tuple(sorted(c)) for c in nx.connected_components(graph)))


def _assemble(vertices: Tuple[Vertex, ...], rotation: Dict[Vertex, Tuple[Vertex, ...]],
              faces: Tuple[Face, ...], preferred: Sequence[int], strict: bool = False) -> PlaneGraph:
    comps = _components(vertices, rotation)
    comp_of = {v: i for i, comp in enumerate(comps) for v in comp}

    def face_comp(f: Face) -> int:
        return comp_of[f.anchor if f.anchor is not None else f.darts[0][0]]

    per_comp: Dict[int, List[Face]] = {i: [] for i in range(len(comps))}
    for f in faces:
        per_comp[face_comp(f)].append(f)

    for i, comp in enumerate(comps):
        edges = sum(len(rotation[v]) for v in comp) // 2
        walks = len(per_comp[i])
        if len(comp) - edges + walks != 2:
            raise NotPlanarEmbedding(
                f"Euler check failed on component of {comp[0]}: "
                f"V={len(comp)} E={edges} faces={walks}",
                vertices=len(comp), edges=edges, faces=walks,
            )

    chosen: Dict[int, int] = {}
    for fid in preferred:
        c = face_comp(faces[fid])
        if c in chosen:
            if strict and chosen[c] != fid:
                raise UnknownOuterFace(f"two outer faces given for the component of {comps[c][0]}")
            continue
        chosen[c] = fid
    outer = []
    for i in range(len(comps)):
        if i not in chosen:
            # longest walk, ties by lowest id
            chosen[i] = min(per_comp[i], key=lambda f: (-len(f), f.id)).id
        outer.append(chosen[i])

    return PlaneGraph(vertices, rotation, faces, tuple(outer), comps)


def _match_hint(faces: Tuple[Face, ...], index: Mapping, hint: Sequence[Vertex]) -> int:
    hint = list(hint)
    if len(hint) == 1:
        for f in faces:
            if hint[0] in f.incident:
                return f.id
        raise UnknownOuterFace(f"no face contains {hint[0]}", hint=hint)
    first = (hint[0], hint[1]) if hint else None
    if first not in index:
        raise UnknownOuterFace(f"hint {hint} does not start with a dart", hint=hint)
    face = faces[index[first]]
    start, n = face.darts.index(first), len(face.darts)
    if len(hint) - 1 > n:
        raise UnknownOuterFace(f"hint {hint} is longer than its face", hint=hint)
    for i in range(len(hint) - 1):
        if face.darts[(start + i) % n] != (hint[i], hint[i + 1]):
            raise UnknownOuterFace(f"hint {hint} does not follow a face walk", hint=hint)
    return face.id


def _hint_walks(hint) -> List[List[Vertex]]:
    if not hint:
        return []
    if all(isinstance(h, str) for h in hint):
        return [list(hint)]
    return [list(h) for h in hint]


def build_plane_graph(vertices: Iterable[Vertex], rotation: Mapping[Vertex, Sequence[Vertex]],
                      outer_face_hint=None) -> PlaneGraph:
    """
    Validate a rotation system and trace its faces

    Args:
        vertices: Vertex tokens (vertices only named as rotation keys are added)
        rotation: Cyclic neighbour order per vertex
        outer_face_hint: A vertex walk of the outer face, or one walk per
            component; components without a hint take their longest face

    Returns:
        PlaneGraph
    """
    verts = tuple(sorted(set(vertices) | set(rotation)))
    rot: Dict[Vertex, Tuple[Vertex, ...]] = {v: tuple(rotation.get(v, ())) for v in verts}
    known = set(verts)
    for v in verts:
        if len(set(rot[v])) != len(rot[v]):
            raise DuplicateNeighbour(f"{v} lists a neighbour twice", vertex=v)
        for w in rot[v]:
            if w == v:
                raise DuplicateNeighbour(f"{v} lists itself (loop)", vertex=v)
            if w not in known or v not in rot[w]:
                raise AsymmetricRotation(f"{v} lists {w} but not the other way round", edge=[v, w])

    faces = _trace(verts, rot)
    index = _dart_index(faces)
    preferred = [_match_hint(faces, index, walk) for walk in _hint_walks(outer_face_hint)]
    return _assemble(verts, rot, faces, preferred, strict=True)


def trace_faces(g: PlaneGraph) -> List[Face]:
    return list(g.faces)


def face_count(g: PlaneGraph) -> int:
    """Faces of the plane drawing: traced walks minus C plus 1 (so V - E + F = 1 + C)"""
    return len(g.faces) - g.num_components + 1


def euler_characteristic(g: PlaneGraph) -> int:
    return len(g.vertices) - len(g.edges) + face_count(g)


def outer_walk(g: PlaneGraph) -> BoundaryWalk:
    return BoundaryWalk(tuple(g.faces[f] for f in g.outer_faces))


def outer_vertices(g: PlaneGraph) -> FrozenSet[Vertex]:
    """Vertices incident with the outer face, isolated vertices included"""
    return frozenset().union(*(g.faces[f].incident for f in g.outer_faces))


# =============================================================================
# Restriction with outer face inheritance
# =============================================================================

def _attachments(g: PlaneGraph, keep: Set[Vertex], dropped: Set[Edge]) -> List[Tuple[Vertex, Vertex]]:
    """
    Kept vertices next to deleted material, as (kept vertex, deleted neighbour)

    Deleted vertices are explored breadth first starting from the old outer
    walk, so the corners nearest the old outer face come first.
    """
    removed = [v for v in g.vertices if v not in keep]
    removed_set = set(removed)
    seen: Set[Vertex] = set()
    queue: deque = deque()
    found: List[Tuple[Vertex, Vertex]] = []

    def explore(start: Optional[Vertex]) -> None:
        if start is not None:
            seen.add(start)
            queue.append(start)
        while queue:
            r = queue.popleft()
            for x in g.rotation[r]:
                if x in keep:
                    found.append((x, r))
                elif x not in seen:
                    seen.add(x)
                    queue.append(x)

    for u, v in outer_walk(g).darts:
        for x, y in ((u, v), (v, u)):
            if x in removed_set:
                if x not in seen:
                    seen.add(x)
                    queue.append(x)
            elif y in removed_set or edge_key(x, y) in dropped:
                found.append((x, y))
    explore(None)
    for r in removed:
        if r not in seen:
            explore(r)
    for u, v in sorted(dropped):
        if u in keep and v in keep:
            found.extend(((u, v), (v, u)))
    return found


def _corner_face_id(g: PlaneGraph, rotation: Mapping[Vertex, Tuple[Vertex, ...]],
                    index: Mapping, vertex: Vertex, removed: Vertex) -> int:
    old = g.rotation[vertex]
    kept = set(rotation[vertex])
    i = old.index(removed)
    for step in range(1, len(old) + 1):
        h = old[(i + step) % len(old)]
        if h in kept:
            return index[(vertex, h)]
    return index[vertex]


def _restrict(g: PlaneGraph, keep: Iterable[Vertex], dropped: Iterable[Edge] = ()) -> PlaneGraph:
    keep = set(keep)
    dropped = {edge_key(u, v) for u, v in dropped}
    verts = tuple(v for v in g.vertices if v in keep)
    rot = {
        v: tuple(w for w in g.rotation[v] if w in keep and edge_key(v, w) not in dropped)
        for v in verts
    }
    faces = _trace(verts, rot)
    index = _dart_index(faces)

    counts: Counter = Counter()
    for fid in g.outer_faces:
        old = g.faces[fid]
        if old.anchor is not None and old.anchor in keep:
            counts[index[old.anchor]] += 1
        for d in old.darts:
            if d in index:
                counts[index[d]] += 1
    preferred = sorted(counts, key=lambda f: (-counts[f], f))
    for w, z in _attachments(g, keep, dropped):
        preferred.append(_corner_face_id(g, rot, index, w, z))
    return _assemble(verts, rot, faces, preferred)


def corner_face(old: PlaneGraph, new: PlaneGraph, vertex: Vertex, removed: Vertex) -> Face:
    """
    Face of `new` opening into the corner of `vertex` where the deleted
    neighbour `removed` sat in `old`

    Raises:
        MissingItem: `removed` was not a neighbour of `vertex` in `old`, or
            `vertex` is not in `new`
    """
    if vertex not in new or removed not in old.rotation.get(vertex, ()):
        raise MissingItem(f"{removed} is not a former neighbour of {vertex}")
    return new.faces[_corner_face_id(old, new.rotation, _dart_index(new.faces), vertex, removed)]


def subgraph(g: PlaneGraph, vertices: Iterable[Vertex]) -> PlaneGraph:
    """Induced sub-embedding on the given vertices"""
    vertices = set(vertices)
    missing = vertices - set(g.vertices)
    if missing:
        raise MissingItem(f"unknown vertices {sorted(missing)}")
    return _restrict(g, vertices)


def components(g: PlaneGraph) -> List[PlaneGraph]:
    if g.num_components <= 1:
        return [g]
    return [_restrict(g, comp) for comp in g.component_vertices]


def remove(g: PlaneGraph, item: Union[Vertex, Sequence[Vertex]]) -> PlaneGraph:
    """Delete a vertex (a token) or an edge (a pair of tokens)"""
    if isinstance(item, str):
        if item not in g:
            raise MissingItem(f"no vertex {item}", item=item)
        return _restrict(g, set(g.vertices) - {item})
    u, v = item
    if not g.has_edge(u, v):
        raise MissingItem(f"no edge {u}{v}", item=[u, v])
    return _restrict(g, g.vertices, [(u, v)])


def reroot_outer_face(g: PlaneGraph, f: Union[Face, int]) -> PlaneGraph:
    fid = f.id if isinstance(f, Face) else f
    known = isinstance(fid, int) and 0 <= fid < len(g.faces)
    if not known or (isinstance(f, Face) and g.faces[fid] != f):
        raise UnknownFace(f"face {fid} is not a face of this graph", face=fid if isinstance(fid, int) else None)
    outer = list(g.outer_faces)
    outer[g.face_component(g.faces[fid])] = fid
    return PlaneGraph(g.vertices, g.rotation, g.faces, tuple(outer), g.component_vertices)


def relabel(g: PlaneGraph, mapping: Mapping[Vertex, Vertex]) -> PlaneGraph:
    """Rename vertices; unmapped vertices keep their names"""
    name = lambda v: mapping.get(v, v)
    rotation = {name(v): tuple(name(w) for w in g.rotation[v]) for v in g.vertices}
    hints = []
    for fid in g.outer_faces:
        face = g.faces[fid]
        hints.append([name(face.anchor)] if face.anchor is not None else [name(u) for u in face.vertices])
    return build_plane_graph(rotation, rotation, hints)


# =============================================================================
# Structural queries
# =============================================================================

def cut_vertices(g: PlaneGraph) -> List[Vertex]:
    return sorted(nx.articulation_points(g.nx_graph))


def find_chords(g: PlaneGraph, c: Optional[BoundaryWalk] = None) -> List[Edge]:
    """
    Edges joining non-consecutive vertices of the outer cycle

    Raises:
        WalkNotCycle: the walk repeats a vertex or spans several components
    """
    c = c if c is not None else outer_walk(g)
    if not c.is_cycle:
        raise WalkNotCycle("outer walk is not a cycle", walk=list(c.vertices))
    on_cycle = set(c.vertices)
    return [e for e in g.edges if e[0] in on_cycle and e[1] in on_cycle and e not in c.edges]


def enumerate_triangles(g: PlaneGraph) -> List[Tuple[Vertex, Vertex, Vertex]]:
    triangles = []
    for clique in nx.enumerate_all_cliques(g.nx_graph):
        if len(clique) > 3:
            break
        if len(clique) == 3:
            triangles.append(tuple(sorted(clique)))
    return sorted(triangles)


# =============================================================================
# Splits
# =============================================================================

def split_at_cut_vertex(g: PlaneGraph, u: Vertex) -> Tuple[PlaneGraph, PlaneGraph]:
    """
    Split at a cut vertex

    G1 is u with the part of g - u holding the smallest vertex of u's
    component; G2 is u with everything else.
    """
    if u not in g or u not in cut_vertices(g):
        raise NotACutVertex(f"{u} is not a cut vertex", vertex=u)
    rest = g.nx_graph.subgraph(v for v in g.component_of(u) if v != u)
    first = min((sorted(c) for c in nx.connected_components(rest)), key=lambda c: c[0])
    side1 = set(first) | {u}
    side2 = (set(g.vertices) - side1) | {u}
    return _restrict(g, side1), _restrict(g, side2)


def _fan_around(g: PlaneGraph, p: Vertex, q: Vertex) -> Tuple[List[Vertex], List[Vertex]]:
    """
    Neighbours of p on either side of the edge pq, within the stretch of the
    rotation at p between the two outer corners that enclose q
    """
    around = g.rotation[p]
    n = len(around)
    corners = [b for (_, x), (_, b) in _corners(g.outer_face_of(p)) if x == p]
    qi = around.index(q)
    # nearest outer corner before q in rotation order
    start = min(corners, key=lambda b: (qi - around.index(b)) % n)
    before, after = [], []
    i = around.index(start)
    while around[i] != q:
        before.append(around[i])
        i = (i + 1) % n
    i = (i + 1) % n
    while around[i] not in corners and around[i] != start:
        after.append(around[i])
        i = (i + 1) % n
    return before, after


def _corners(face: Face):
    darts = face.darts
    for i, d in enumerate(darts):
        yield d, darts[(i + 1) % len(darts)]


def split_at_chord(g: PlaneGraph, vi: Vertex, vj: Vertex) -> Tuple[PlaneGraph, PlaneGraph]:
    """
    Split along an edge whose ends lie on the outer walk but which is not
    itself on the walk

    Both parts keep the edge vivj on their outer walks. G1 is the side holding
    the smallest vertex outside the chord; parts hanging from vi or vj outside
    the chord's stretch go with G1.
    """
    if not g.has_edge(vi, vj):
        raise NotAChord(f"{vi}{vj} is not an edge", edge=[vi, vj])
    face = g.outer_face_of(vi)
    if vj not in face.incident or vi not in face.incident:
        raise NotAChord(f"{vi}{vj} does not join two outer vertices", edge=[vi, vj])
    if edge_key(vi, vj) in BoundaryWalk((face,)).edges:
        raise NotAChord(f"{vi}{vj} lies on the outer walk", edge=[vi, vj])

    at_p_before, at_p_after = _fan_around(g, vi, vj)
    at_q_before, at_q_after = _fan_around(g, vj, vi)
    # the stretch before q at p faces the stretch after p at q
    side_a_edges = {(vi, x) for x in at_p_before} | {(vj, x) for x in at_q_after}
    side_b_edges = {(vi, x) for x in at_p_after} | {(vj, x) for x in at_q_before}

    rest = g.nx_graph.subgraph(v for v in g.component_of(vi) if v not in (vi, vj))
    side_a: Set[Vertex] = set()
    side_b: Set[Vertex] = set()
    loose: Set[Vertex] = set()
    for comp in nx.connected_components(rest):
        touches_a = any((end, x) in side_a_edges for x in comp for end in (vi, vj))
        touches_b = any((end, x) in side_b_edges for x in comp for end in (vi, vj))
        if touches_a and touches_b:
            raise NotAChord(f"{vi}{vj} does not separate the graph", edge=[vi, vj])
        (side_a if touches_a else side_b if touches_b else loose).update(comp)
    if not side_a or not side_b:
        raise NotAChord(f"{vi}{vj} does not separate the graph", edge=[vi, vj])

    first, second = (side_a, side_b) if min(side_a) < min(side_b) else (side_b, side_a)
    others = set(g.vertices) - set(g.component_of(vi))
    g1 = _restrict(g, first | loose | {vi, vj})
    g2 = _restrict(g, second | others | {vi, vj})
    logger.debug(f"split at chord {vi}{vj}: {len(g1.vertices)} + {len(g2.vertices)} vertices")
    return g1, g2


if __name__ == "__main__":
    print("Testing plane graph tracing...")
    tri = build_plane_graph(["v0", "v1", "v2"], {"v0": ["v1", "v2"], "v1": ["v2", "v0"], "v2": ["v0", "v1"]})
    print(f"Triangle faces: {len(tri.faces)}, outer walk {outer_walk(tri).vertices}")

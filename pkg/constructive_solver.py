#!/usr/bin/env python3
"""
Constructive list colouring of plane graphs

extend_precoloured extends a colouring of a path of length at most one on the
outer walk to the whole graph, for lists of size 4 inside, 3 on the outer
walk, at most 2 shared colours per edge and no offensive triangle (three lists
sharing exactly two colours). The recursion peels the graph the way a minimal
counterexample argument does:

    - several components: each on its own
    - a cut vertex: the path side first, then the other side with the cut vertex pinned
    - a chord of the outer cycle: the path side first, then the other side with both ends pinned
    - a chordless outer cycle v0 v1 ... with v0 v1 the path: colour one or two of
      v2, v3 and delete them, or delete the edge v1 v2

colour_with_clique handles offensive triangles when some clique meets all of
them: colour the clique first, then take one clique vertex out and reroot the
embedding so that its neighbours sit on the outer walk.
"""

import logging
from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import networkx as nx

from assignments import (
    Colour,
    ListAssignment,
    SeparationSpec,
    offensive_triangles,
    require_lists,
    validate_list_profile,
)
from errors import (
    DoesNotHitAllOffensiveTriangles,
    HypothesisViolated,
    InternalContradiction,
    NotAClique,
)
from exact_solver import Colouring, check, solve_list
from plane_graph import (
    BoundaryWalk,
    PlaneGraph,
    Vertex,
    components,
    corner_face,
    cut_vertices,
    edge_key,
    find_chords,
    outer_vertices,
    outer_walk,
    remove,
    reroot_outer_face,
    split_at_chord,
    split_at_cut_vertex,
    subgraph,
)

logger = logging.getLogger(__name__)

Lists = Dict[Vertex, frozenset]
Path = Tuple[Tuple[Vertex, Colour], ...]

INTERIOR_SIZE = 4
OUTER_SIZE = 3
MAX_OVERLAP = 2
EXACT_CUTOFF = 4


@dataclass(frozen=True)
class PrecolouredPath:
    vertices: Tuple[Vertex, ...] = ()
    colours: Tuple[Colour, ...] = ()

    @classmethod
    def of(cls, pins: Iterable[Tuple[Vertex, Colour]]) -> "PrecolouredPath":
        pins = list(pins)
        return cls(tuple(v for v, _ in pins), tuple(c for _, c in pins))

    @property
    def pins(self) -> Path:
        return tuple(zip(self.vertices, self.colours))

    def __len__(self) -> int:
        return len(self.vertices)


@dataclass(frozen=True)
class ExtensionInstance:
    g: PlaneGraph
    P: PrecolouredPath
    L: ListAssignment


@dataclass(frozen=True)
class HittingClique:
    vertices: Tuple[Vertex, ...] = ()

    def __len__(self) -> int:
        return len(self.vertices)


# =============================================================================
# Hypotheses
# =============================================================================

def _walk_edges(g: PlaneGraph, v: Vertex) -> frozenset:
    return BoundaryWalk((g.outer_face_of(v),)).edges


def _failures(g: PlaneGraph, lists: Mapping[Vertex, frozenset], path: Path) -> List[str]:
    """Every way (g, lists, path) falls short of the extension hypotheses"""
    failed = []
    if len(path) > 2:
        failed.append("path has more than two vertices")
    pinned = dict(path)
    outer = outer_vertices(g)
    for v, c in path:
        if v not in g:
            failed.append(f"path vertex {v} is not in the graph")
        elif v not in outer:
            failed.append(f"path vertex {v} is not on the outer walk")
        elif c not in lists[v]:
            failed.append(f"colour {c} of {v} is not in its list")
    if len(path) == 2 and not failed:
        (p, cp), (q, cq) = path
        if not g.has_edge(p, q) or edge_key(p, q) not in _walk_edges(g, p):
            failed.append(f"path {p}{q} is not an edge of the outer walk")
        if cp == cq:
            failed.append(f"path {p}{q} is not properly coloured")
    for v in g.vertices:
        if v in pinned:
            continue
        need = OUTER_SIZE if v in outer else INTERIOR_SIZE
        if len(lists[v]) < need:
            failed.append(f"list of {v} has {len(lists[v])} colours, needs {need}")
    # a pinned vertex keeps only its colour
    effective = {v: frozenset((pinned[v],)) if v in pinned and pinned[v] in lists[v] else lists[v]
                 for v in g.vertices}
    for u, v in g.edges:
        if len(effective[u] & effective[v]) > MAX_OVERLAP:
            failed.append(f"lists of {u} and {v} share more than {MAX_OVERLAP} colours")
    for t in offensive_triangles(g, ListAssignment(effective)):
        failed.append(f"offensive triangle {'-'.join(t)}")
    return failed


def hypothesis_failures(inst: ExtensionInstance) -> List[str]:
    require_lists(inst.g, inst.L)
    return _failures(inst.g, {v: inst.L[v] for v in inst.g.vertices}, inst.P.pins)


# =============================================================================
# Recursion
# =============================================================================

def _exact(g: PlaneGraph, lists: Lists, path: Path) -> Colouring:
    pinned = dict(path)
    fixed = ListAssignment({v: frozenset((pinned[v],)) if v in pinned else lists[v] for v in g.vertices})
    outcome = solve_list(g, fixed)
    if not outcome.colourable:
        raise InternalContradiction(f"base case on {len(g.vertices)} vertices has no colouring",
                                    vertices=list(g.vertices))
    return dict(outcome.witness)


def _walk_neighbours(g: PlaneGraph, v: Vertex) -> List[Vertex]:
    darts = g.outer_face_of(v).darts
    return sorted({y for x, y in darts if x == v} | {x for x, y in darts if y == v})


def _normalise_path(g: PlaneGraph, lists: Lists, path: Path) -> Path:
    if not path:
        v0 = min(outer_vertices(g))
        path = ((v0, min(lists[v0])),)
    if len(path) == 1:
        v0, c0 = path[0]
        v1 = _walk_neighbours(g, v0)[0]
        c1 = min(c for c in lists[v1] if c != c0)
        path = ((v0, c0), (v1, c1))
        logger.debug(f"path extended to {v0}={c0}, {v1}={c1}")
    return path


def _trim(g: PlaneGraph, lists: Lists, path: Path) -> Lists:
    """Cut lists to exactly 1 on the path, 3 on the outer walk and 4 inside"""
    pinned = dict(path)
    outer = outer_vertices(g)
    trimmed: Lists = {}
    for v in g.vertices:
        if v in pinned:
            trimmed[v] = frozenset((pinned[v],))
            continue
        size = OUTER_SIZE if v in outer else INTERIOR_SIZE
        keep = sorted(pinned[x] for x in g.neighbours(v) if x in pinned and pinned[x] in lists[v])
        keep += [c for c in sorted(lists[v]) if c not in keep]
        trimmed[v] = frozenset(keep[:size])
    return trimmed


def _strip(lists: Lists, g: PlaneGraph, coloured: Mapping[Vertex, Colour]) -> Lists:
    """Remove each coloured vertex's colour from its surviving neighbours"""
    out = dict(lists)
    for v, c in coloured.items():
        for w in g.neighbours(v):
            if w not in coloured:
                out[w] = out[w] - {c}
    return out


def _extend(g: PlaneGraph, lists: Mapping[Vertex, frozenset], path: Path, depth: int = 0) -> Colouring:
    lists = {v: lists[v] for v in g.vertices}
    failed = _failures(g, lists, path)
    if failed:
        raise InternalContradiction(f"sub-instance breaks the hypotheses: {failed[0]}", failures=failed, depth=depth)
    if not g.vertices:
        return {}

    if g.num_components > 1:
        phi: Colouring = {}
        for part in components(g):
            phi.update(_extend(part, lists, tuple((v, c) for v, c in path if v in part), depth + 1))
        return phi

    if len(g.vertices) <= EXACT_CUTOFF:
        return _exact(g, lists, path)

    path = _normalise_path(g, lists, path)
    lists = _trim(g, lists, path)
    on_path = {v for v, _ in path}

    cuts = cut_vertices(g)
    if cuts:
        u = cuts[0]
        g1, g2 = split_at_cut_vertex(g, u)
        near, far = (g1, g2) if on_path <= set(g1.vertices) else (g2, g1)
        logger.debug(f"{'  ' * depth}cut vertex {u}: {len(near.vertices)} + {len(far.vertices)} vertices")
        phi = _extend(near, lists, path, depth + 1)
        phi.update(_extend(far, lists, ((u, phi[u]),), depth + 1))
        return phi

    chords = find_chords(g)
    if chords:
        p, q = chords[0]
        g1, g2 = split_at_chord(g, p, q)
        near, far = (g1, g2) if on_path <= set(g1.vertices) else (g2, g1)
        logger.debug(f"{'  ' * depth}chord {p}{q}: {len(near.vertices)} + {len(far.vertices)} vertices")
        phi = _extend(near, lists, path, depth + 1)
        phi.update(_extend(far, lists, ((p, phi[p]), (q, phi[q])), depth + 1))
        return phi

    return _reduce_cycle(g, lists, path, depth)


def _reduce_cycle(g: PlaneGraph, lists: Lists, path: Path, depth: int) -> Colouring:
    cycle = list(outer_walk(g).vertices)
    k = len(cycle)
    (p, cp), (q, cq) = path
    if cycle[(cycle.index(p) + 1) % k] == q:
        start, two = cycle.index(p), cq
    else:
        start, two = cycle.index(q), cp
    v = lambda i: cycle[(start + i) % k]
    v1, v2, v3, v4 = v(1), v(2), v(3), v(4)
    pad = "  " * depth

    if two not in lists[v2]:
        logger.debug(f"{pad}{two} missing at {v2}: drop edge {v1}{v2}")
        return _extend(remove(g, (v1, v2)), lists, path, depth + 1)

    a, b = sorted(lists[v2] - {two})
    spare = [c for c in (a, b) if c not in lists[v3]]
    if spare:
        c = spare[0]
        logger.debug(f"{pad}{v2} := {c} ({c} not available at {v3})")
        return _colour_and_delete(g, lists, path, {v2: c}, depth)

    if k < 4:
        raise InternalContradiction(f"outer cycle of length {k} cannot hold {a},{b} at {v3}")
    (d,) = lists[v3] - {a, b}
    if d not in lists[v4]:
        logger.debug(f"{pad}{v3} := {d} ({d} not available at {v4})")
        return _colour_and_delete(g, lists, path, {v3: d}, depth)

    free = [c for c in (a, b) if c not in lists[v4]]
    if not free:
        raise InternalContradiction(f"{v3} and {v4} share more than {MAX_OVERLAP} colours")
    at_v3 = free[0]
    at_v2 = b if at_v3 == a else a
    logger.debug(f"{pad}{v3} := {at_v3}, {v2} := {at_v2}")
    return _colour_and_delete(g, lists, path, {v2: at_v2, v3: at_v3}, depth)


def _colour_and_delete(g: PlaneGraph, lists: Lists, path: Path, coloured: Dict[Vertex, Colour], depth: int) -> Colouring:
    reduced = _strip(lists, g, coloured)
    rest = g
    for v in coloured:
        rest = remove(rest, v)
    phi = _extend(rest, reduced, path, depth + 1)
    phi.update(coloured)
    return phi


# =============================================================================
# Public entry points
# =============================================================================

def _finish(g: PlaneGraph, L: ListAssignment, phi: Colouring) -> Colouring:
    report = check(g, L, phi)
    if not report.proper:
        raise InternalContradiction("constructed colouring is not proper", report=report.model_dump())
    return {v: phi[v] for v in g.vertices}


def extend_precoloured(inst: ExtensionInstance) -> Colouring:
    """
    Extend the colouring of the path to the whole graph

    Raises:
        HypothesisViolated: the instance breaks a hypothesis (the first failure is
            in the message, all of them in `details['failures']`)
    """
    failed = hypothesis_failures(inst)
    if failed:
        raise HypothesisViolated(failed[0], failures=failed)
    logger.info(f"🔄 Extending a {len(inst.P)}-vertex path to {len(inst.g.vertices)} vertices")
    phi = _extend(inst.g, {v: inst.L[v] for v in inst.g.vertices}, inst.P.pins)
    return _finish(inst.g, inst.L, phi)


def _require_42(g: PlaneGraph, L: ListAssignment) -> None:
    report = validate_list_profile(g, L, SeparationSpec.of(4, 2))
    if not report.valid:
        problems = [f"list of {s.vertex} has {s.size} colours" for s in report.short_lists]
        problems += [f"lists of {e.edge[0]} and {e.edge[1]} share {e.size} colours" for e in report.heavy_edges]
        raise HypothesisViolated(f"not a (4,2) list assignment: {problems[0]}", failures=problems)


def colour_no_offensive(g: PlaneGraph, L: ListAssignment) -> Colouring:
    """Colour a graph with a (4,2) list assignment and no offensive triangle"""
    _require_42(g, L)
    bad = offensive_triangles(g, L)
    if bad:
        raise HypothesisViolated(f"offensive triangle {'-'.join(bad[0])}",
                                 failures=[f"offensive triangle {'-'.join(t)}" for t in bad])
    if not g.vertices:
        return {}
    v0 = min(outer_vertices(g))
    path = PrecolouredPath.of([(v0, min(L[v0]))])
    return extend_precoloured(ExtensionInstance(g, path, L))


def _colour_clique(L: ListAssignment, clique: Sequence[Vertex]) -> Colouring:
    phi: Colouring = {}
    for h in sorted(clique):
        phi[h] = next(c for c in L.sorted(h) if c not in phi.values())
    return phi


def _around_clique(g: PlaneGraph, lists: Lists, clique: Sequence[Vertex], phi: Colouring) -> Colouring:
    """
    Colour g given colours on a clique of at most three vertices

    The smallest clique vertex is deleted; every piece touching it is rerooted
    so that the deleted vertex's neighbours lie on its outer walk.
    """
    first, *rest = sorted(clique)
    reduced = _strip(lists, g, {first: phi[first]})
    for h in rest:
        reduced[h] = frozenset((phi[h],))
    remainder = remove(g, first)
    out: Colouring = {first: phi[first]}
    for part in components(remainder):
        anchors = [w for w in g.neighbours(first) if w in part]
        if anchors:
            part = reroot_outer_face(part, corner_face(g, part, anchors[0], first))
        pins = tuple((h, phi[h]) for h in rest if h in part)
        if len(pins) == 2 and edge_key(*rest) not in _walk_edges(part, rest[0]):
            sides = split_at_chord(part, rest[0], rest[1])
            logger.debug(f"clique edge {rest[0]}{rest[1]} splits the rest")
        else:
            sides = (part,)
        for side in sides:
            out.update(_extend(side, reduced, pins))
    return out


def _faces_of_k4(g: PlaneGraph, clique: Sequence[Vertex], phi: Colouring, lists: Lists) -> Colouring:
    """Colour each region cut out by an embedded K4 with its triangle precoloured"""
    k4 = subgraph(g, clique)
    regions: Dict[int, set] = {f.id: set() for f in k4.faces}
    loose: List[List[Vertex]] = []
    rest = g.nx_graph.subgraph(v for v in g.vertices if v not in clique)
    for part in sorted((sorted(c) for c in nx.connected_components(rest)), key=lambda c: c[0]):
        attachment = next(((h, x) for x in part for h in sorted(clique) if g.has_edge(h, x)), None)
        if attachment is None:
            loose.append(part)
            continue
        h, x = attachment
        regions[corner_face(g, k4, h, x).id].update(part)

    out: Colouring = dict(phi)
    for fid, inside in sorted(regions.items()):
        triangle = sorted(k4.faces[fid].incident)
        region = subgraph(g, set(triangle) | inside)
        logger.debug(f"K4 face {'-'.join(triangle)} holds {len(inside)} vertices")
        out.update(_around_clique(region, lists, triangle, phi))
    for part in loose:
        out.update(_extend(subgraph(g, part), lists, ()))
    return out


def colour_with_clique(g: PlaneGraph, L: ListAssignment, H: HittingClique) -> Colouring:
    """
    Colour a (4,2) instance whose offensive triangles all meet the clique H

    Raises:
        NotAClique: H is not a clique of at most four vertices of g
        DoesNotHitAllOffensiveTriangles: some offensive triangle avoids H
        HypothesisViolated: L is not a (4,2) list assignment
    """
    clique = sorted(set(H.vertices))
    if any(h not in g for h in clique) or len(clique) > 4:
        raise NotAClique(f"{clique} is not a clique of size at most 4 in the graph", vertices=clique)
    for i, u in enumerate(clique):
        for w in clique[i + 1:]:
            if not g.has_edge(u, w):
                raise NotAClique(f"{u} and {w} are not adjacent", vertices=clique)
    _require_42(g, L)
    missed = [t for t in offensive_triangles(g, L) if not set(t) & set(clique)]
    if missed:
        raise DoesNotHitAllOffensiveTriangles(
            f"offensive triangle {'-'.join(missed[0])} avoids the clique",
            triangles=[list(t) for t in missed])
    if not clique:
        return colour_no_offensive(g, L)

    logger.info(f"🔄 Colouring around clique {'-'.join(clique)}")
    lists = {v: L[v] for v in g.vertices}
    phi = _colour_clique(L, clique)
    if len(clique) == 4:
        result = _faces_of_k4(g, clique, phi, lists)
    else:
        result = _around_clique(g, lists, clique, phi)
    return _finish(g, L, result)


def find_hitting_clique(g: PlaneGraph, L: ListAssignment) -> Optional[HittingClique]:
    """Smallest clique (first in token order) meeting every offensive triangle"""
    bad = [set(t) for t in offensive_triangles(g, L)]
    if not bad:
        return HittingClique(())
    cliques = []
    for clique in nx.enumerate_all_cliques(g.nx_graph):
        if len(clique) > 4:
            break
        cliques.append(tuple(sorted(clique)))
    for clique in sorted(cliques, key=lambda c: (len(c), c)):
        if all(t & set(clique) for t in bad):
            return HittingClique(clique)
    return None

#!/usr/bin/env python3
"""
Seeded random instances

Plane graphs are grown one vertex at a time: the new vertex goes into a random
face and is joined to up to three corners of that face, which keeps the rotation
system planar without ever running a planarity test. Lists are then chosen
greedily against the (ell, k) profile. Both generators are pure functions of
their arguments and seed.
"""

import logging
import random
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx

from assignments import Colour, ListAssignment, SeparationSpec
from errors import BadParameters, RetriesExhausted
from plane_graph import Face, PlaneGraph, Vertex, build_plane_graph, enumerate_triangles
from settings import DEFAULT_RETRY_BUDGET

logger = logging.getLogger(__name__)

MAX_JOINS = 3


def _corners(face: Face) -> List[Tuple[Vertex, Optional[Vertex]]]:
    """(vertex, predecessor on the walk) for every corner of the face"""
    if face.anchor is not None:
        return [(face.anchor, None)]
    n = len(face.darts)
    return [(face.darts[i][0], face.darts[i - 1][0]) for i in range(n)]


def _pick_corners(rng: random.Random, face: Face, rotation: Dict[Vertex, List[Vertex]],
                  joins: int, triangle_free: bool) -> List[Tuple[Vertex, Optional[Vertex]]]:
    corners = list(enumerate(_corners(face)))
    rng.shuffle(corners)
    chosen: List[Tuple[int, Tuple[Vertex, Optional[Vertex]]]] = []
    for i, (w, pred) in corners:
        if len(chosen) == joins:
            break
        if any(w == c[1][0] for c in chosen):
            continue
        if triangle_free and any(c[1][0] in rotation[w] for c in chosen):
            continue
        chosen.append((i, (w, pred)))
    return [c for _, c in sorted(chosen)]


def _insert(rotation: Dict[Vertex, List[Vertex]], x: Vertex, corners: Sequence[Tuple[Vertex, Optional[Vertex]]]) -> None:
    for w, pred in corners:
        around = rotation[w]
        # x sits between pred and its old successor
        around.insert(around.index(pred) + 1 if pred is not None else 0, x)
    rotation[x] = [w for w, _ in reversed(corners)]


def _outer_hints(rng: random.Random, g: PlaneGraph) -> List[List[Vertex]]:
    hints = []
    for comp in range(g.num_components):
        faces = [f for f in g.faces if g.face_component(f) == comp]
        face = rng.choice(faces)
        hints.append([face.anchor] if face.anchor is not None else list(face.vertices))
    return hints


def gen_random_plane(n: int, seed: int, triangle_free: bool = False, deletions: int = 0) -> PlaneGraph:
    """
    Random plane graph on v0 .. v{n-1}

    Args:
        n: Vertex count, at least 1
        seed: Random seed
        triangle_free: Join at most two pairwise non-adjacent corners
        deletions: Random edges deleted after growing

    Raises:
        BadParameters: n < 1 or deletions < 0
    """
    if n < 1 or deletions < 0:
        raise BadParameters(f"need n >= 1 and deletions >= 0, got n={n} deletions={deletions}", n=n, deletions=deletions)
    rng = random.Random(seed)
    rotation: Dict[Vertex, List[Vertex]] = {"v0": []}
    limit = 2 if triangle_free else MAX_JOINS

    for i in range(1, n):
        g = build_plane_graph(rotation, rotation)
        face = rng.choice(g.faces)
        joins = rng.randint(1, limit)
        corners = _pick_corners(rng, face, rotation, joins, triangle_free)
        _insert(rotation, f"v{i}", corners)

    edges = sorted({tuple(sorted((u, w))) for u in rotation for w in rotation[u]})
    for u, w in rng.sample(edges, min(deletions, len(edges))):
        rotation[u].remove(w)
        rotation[w].remove(u)

    g = build_plane_graph(rotation, rotation)
    g = build_plane_graph(rotation, rotation, _outer_hints(rng, g))
    logger.debug(f"generated plane graph n={n} seed={seed}: {len(g.edges)} edges, {len(g.faces)} faces")
    return g


def _fits(colour: Colour, chosen: List[Colour], v: Vertex, lists: Dict[Vertex, set],
          g: PlaneGraph, k: int, triangles: Dict[Vertex, List[Tuple[Vertex, Vertex]]],
          forbid_offensive: bool) -> bool:
    for w in g.neighbours(v):
        other = lists.get(w)
        if other is None or colour not in other:
            continue
        if sum(1 for c in chosen if c in other) + 1 > k:
            return False
    if forbid_offensive:
        for a, b in triangles.get(v, ()):
            if a not in lists or b not in lists:
                continue
            common = lists[a] & lists[b]
            if colour in common and sum(1 for c in chosen if c in common) + 1 >= 2:
                return False
    return True


def gen_random_assignment(g: PlaneGraph, spec: SeparationSpec, palette: Optional[int] = None, seed: int = 0,
                          forbid_offensive: bool = False, retry_budget: int = DEFAULT_RETRY_BUDGET) -> ListAssignment:
    """
    Random lists of exactly spec.ell colours from "1" .. str(palette) with
    adjacent overlaps at most spec.k

    With forbid_offensive every triangle ends up sharing at most one colour
    across its three lists.

    Raises:
        BadParameters: palette smaller than spec.ell
        RetriesExhausted: some vertex could not be given a list
    """
    size = palette if palette is not None else 6 * spec.ell
    if size < spec.ell:
        raise BadParameters(f"palette of {size} colours cannot fill lists of {spec.ell}", palette=size, ell=spec.ell)
    if not g.vertices:
        return ListAssignment({})

    rng = random.Random(seed)
    colours = [str(c) for c in range(1, size + 1)]
    triangles: Dict[Vertex, List[Tuple[Vertex, Vertex]]] = {}
    if forbid_offensive:
        for t in enumerate_triangles(g):
            for i, v in enumerate(t):
                triangles.setdefault(v, []).append(tuple(x for j, x in enumerate(t) if j != i))

    order = list(nx.coloring.strategy_smallest_last(g.nx_graph, {}))
    lists: Dict[Vertex, set] = {}
    for v in order:
        for _ in range(retry_budget + 1):
            rng.shuffle(colours)
            chosen: List[Colour] = []
            for c in colours:
                if _fits(c, chosen, v, lists, g, spec.k, triangles, forbid_offensive):
                    chosen.append(c)
                    if len(chosen) == spec.ell:
                        break
            if len(chosen) == spec.ell:
                lists[v] = set(chosen)
                break
            logger.debug(f"🔄 retrying list for {v}")
        else:
            raise RetriesExhausted(f"no admissible {spec} list for {v} after {retry_budget} retries",
                                   vertex=v, retry_budget=retry_budget)
    return ListAssignment.from_lists(lists)

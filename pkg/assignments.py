#!/usr/bin/env python3
"""
Colour lists and correspondence matchings

Colours are opaque string tokens compared lexicographically, so "10" sorts
before "7". Matchings are stored once per edge in canonical orientation
(smaller endpoint first) and flipped on lookup.
"""

import logging
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Mapping, NamedTuple, Optional, Sequence, Set, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field

from errors import MatchingOnNonEdge, MissingList, PinNotInList
from plane_graph import Edge, PlaneGraph, Vertex, edge_key, enumerate_triangles

logger = logging.getLogger(__name__)

Colour = str
Pair = Tuple[Colour, Colour]


class SeparationSpec(BaseModel):
    """Profile (ell, k): lists of size >= ell, adjacent overlap <= k"""

    model_config = ConfigDict(frozen=True)

    ell: int = Field(ge=1)
    k: int = Field(ge=0)

    @classmethod
    def of(cls, ell: int, k: int) -> "SeparationSpec":
        return cls(ell=ell, k=k)

    def __str__(self) -> str:
        return f"({self.ell},{self.k})"


@dataclass(frozen=True)
class ListAssignment:
    lists: Mapping[Vertex, FrozenSet[Colour]]

    @classmethod
    def from_lists(cls, lists: Mapping[Vertex, Iterable[Colour]]) -> "ListAssignment":
        return cls({v: frozenset(cs) for v, cs in lists.items()})

    def __getitem__(self, v: Vertex) -> FrozenSet[Colour]:
        return self.lists[v]

    def __contains__(self, v: object) -> bool:
        return v in self.lists

    def get(self, v: Vertex, default: FrozenSet[Colour] = frozenset()) -> FrozenSet[Colour]:
        return self.lists.get(v, default)

    def sorted(self, v: Vertex) -> List[Colour]:
        return sorted(self.lists[v])

    @property
    def vertices(self) -> List[Vertex]:
        return sorted(self.lists)

    @property
    def empty_vertices(self) -> List[Vertex]:
        """Vertices whose list was emptied by restriction"""
        return sorted(v for v, cs in self.lists.items() if not cs)

    def restricted_to(self, vertices: Iterable[Vertex]) -> "ListAssignment":
        return ListAssignment({v: self.lists[v] for v in vertices})

    def with_lists(self, updates: Mapping[Vertex, Iterable[Colour]]) -> "ListAssignment":
        merged = dict(self.lists)
        merged.update({v: frozenset(cs) for v, cs in updates.items()})
        return ListAssignment(merged)

    def to_dict(self) -> Dict[Vertex, List[Colour]]:
        return {v: self.sorted(v) for v in self.vertices}


@dataclass(frozen=True)
class CorrespondenceAssignment:
    base: ListAssignment
    # canonical edge (u, v), u < v  ->  pairs (colour at u, colour at v)
    matchings: Mapping[Edge, FrozenSet[Pair]]

    @classmethod
    def build(cls, base: ListAssignment, matchings: Mapping[Tuple[Vertex, Vertex], Iterable[Pair]]) -> "CorrespondenceAssignment":
        canonical: Dict[Edge, Set[Pair]] = {}
        for (u, v), pairs in matchings.items():
            key = edge_key(u, v)
            oriented = {(cu, cv) if key == (u, v) else (cv, cu) for cu, cv in pairs}
            canonical.setdefault(key, set()).update(oriented)
        return cls(base, {e: frozenset(ps) for e, ps in canonical.items()})

    def matching(self, u: Vertex, v: Vertex) -> FrozenSet[Pair]:
        """Pairs oriented as (colour at u, colour at v)"""
        key = edge_key(u, v)
        pairs = self.matchings.get(key, frozenset())
        if key == (u, v):
            return pairs
        return frozenset((b, a) for a, b in pairs)

    def forbids(self, u: Vertex, cu: Colour, v: Vertex, cv: Colour) -> bool:
        return (cu, cv) in self.matching(u, v)

    def without_pair(self, u: Vertex, v: Vertex, pair: Pair) -> "CorrespondenceAssignment":
        key = edge_key(u, v)
        oriented = pair if key == (u, v) else (pair[1], pair[0])
        updated = dict(self.matchings)
        updated[key] = self.matchings.get(key, frozenset()) - {oriented}
        return CorrespondenceAssignment(self.base, updated)

    def without_edge(self, u: Vertex, v: Vertex) -> "CorrespondenceAssignment":
        return CorrespondenceAssignment(
            self.base, {e: ps for e, ps in self.matchings.items() if e != edge_key(u, v)})

    def with_base(self, base: ListAssignment) -> "CorrespondenceAssignment":
        return CorrespondenceAssignment(base, self.matchings)

    def relabel(self, mapping: Mapping[Vertex, Vertex]) -> "CorrespondenceAssignment":
        name = lambda v: mapping.get(v, v)
        base = ListAssignment({name(v): cs for v, cs in self.base.lists.items()})
        return CorrespondenceAssignment.build(
            base, {(name(u), name(v)): ps for (u, v), ps in self.matchings.items()})

    def to_dict(self) -> Dict[str, List[List[Colour]]]:
        return {f"{u}|{v}": [list(p) for p in sorted(ps)] for (u, v), ps in sorted(self.matchings.items())}


# =============================================================================
# Reports
# =============================================================================

class ShortList(BaseModel):
    vertex: Vertex
    size: int


class HeavyEdge(BaseModel):
    edge: Tuple[Vertex, Vertex]
    size: int


class MalformedMatching(BaseModel):
    edge: Tuple[Vertex, Vertex]
    reason: str


class ProfileReport(BaseModel):
    semantics: str
    spec: SeparationSpec
    valid: bool
    short_lists: List[ShortList] = []
    heavy_edges: List[HeavyEdge] = []
    malformed: List[MalformedMatching] = []
    min_list_size: Optional[int] = None
    max_edge_overlap: int = 0


def require_lists(g: PlaneGraph, lists: ListAssignment) -> None:
    missing = [v for v in g.vertices if v not in lists]
    if missing:
        raise MissingList(f"no list for {', '.join(missing[:5])}", vertices=missing)


def _short_lists(g: PlaneGraph, lists: ListAssignment, spec: SeparationSpec) -> List[ShortList]:
    return [ShortList(vertex=v, size=len(lists[v])) for v in g.vertices if len(lists[v]) < spec.ell]


def validate_list_profile(g: PlaneGraph, L: ListAssignment, spec: SeparationSpec) -> ProfileReport:
    require_lists(g, L)
    short = _short_lists(g, L, spec)
    overlaps = {e: len(L[e[0]] & L[e[1]]) for e in g.edges}
    heavy = [HeavyEdge(edge=e, size=s) for e, s in overlaps.items() if s > spec.k]
    report = ProfileReport(
        semantics="list",
        spec=spec,
        valid=not short and not heavy,
        short_lists=short,
        heavy_edges=heavy,
        min_list_size=min((len(L[v]) for v in g.vertices), default=None),
        max_edge_overlap=max(overlaps.values(), default=0),
    )
    logger.debug(f"list profile {spec}: valid={report.valid}")
    return report


def malformed_pairs(A: CorrespondenceAssignment, u: Vertex, v: Vertex) -> List[str]:
    reasons = []
    pairs = A.matching(u, v)
    lefts = [a for a, _ in pairs]
    rights = [b for _, b in pairs]
    if len(set(lefts)) != len(lefts):
        reasons.append(f"colour repeated on {u}")
    if len(set(rights)) != len(rights):
        reasons.append(f"colour repeated on {v}")
    stray = sorted({a for a in lefts if a not in A.base.get(u)} | {b for b in rights if b not in A.base.get(v)})
    if stray:
        reasons.append(f"colours outside the lists: {', '.join(stray)}")
    return reasons


def check_matchings_on_edges(g: PlaneGraph, A: CorrespondenceAssignment) -> None:
    stray = [e for e in A.matchings if not g.has_edge(*e)]
    if stray:
        u, v = stray[0]
        raise MatchingOnNonEdge(f"matching given for non-edge {u}|{v}", edges=[list(e) for e in stray])


def validate_corr_profile(g: PlaneGraph, A: CorrespondenceAssignment, spec: SeparationSpec) -> ProfileReport:
    require_lists(g, A.base)
    check_matchings_on_edges(g, A)
    short = _short_lists(g, A.base, spec)
    sizes = {e: len(A.matchings.get(e, ())) for e in g.edges}
    heavy = [HeavyEdge(edge=e, size=s) for e, s in sizes.items() if s > spec.k]
    malformed = [
        MalformedMatching(edge=e, reason=reason)
        for e in sorted(A.matchings)
        for reason in malformed_pairs(A, *e)
    ]
    return ProfileReport(
        semantics="correspondence",
        spec=spec,
        valid=not short and not heavy and not malformed,
        short_lists=short,
        heavy_edges=heavy,
        malformed=malformed,
        min_list_size=min((len(A.base[v]) for v in g.vertices), default=None),
        max_edge_overlap=max(sizes.values(), default=0),
    )


# =============================================================================
# Triangles and restrictions
# =============================================================================

def offensive_triangles(g: PlaneGraph, L: ListAssignment) -> List[Tuple[Vertex, Vertex, Vertex]]:
    """Triangles whose three lists share exactly two colours"""
    return [t for t in enumerate_triangles(g) if len(L.get(t[0]) & L.get(t[1]) & L.get(t[2])) == 2]


class Remove(NamedTuple):
    vertex: Vertex
    colour: Colour


class Pin(NamedTuple):
    vertex: Vertex
    colour: Colour


def restrict(L: ListAssignment, edits: Sequence[Union[Remove, Pin]]) -> ListAssignment:
    """
    Apply colour removals and pins in order

    Removals may empty a list; such vertices show up in `empty_vertices`.

    Raises:
        PinNotInList: a pin names a colour missing from the current list
    """
    lists: Dict[Vertex, FrozenSet[Colour]] = dict(L.lists)
    for edit in edits:
        current = lists.get(edit.vertex)
        if isinstance(edit, Pin):
            if current is None or edit.colour not in current:
                raise PinNotInList(f"cannot pin {edit.vertex} to {edit.colour}", vertex=edit.vertex, colour=edit.colour)
            lists[edit.vertex] = frozenset((edit.colour,))
        elif current is not None:
            lists[edit.vertex] = current - {edit.colour}
    result = ListAssignment(lists)
    if result.empty_vertices:
        logger.debug(f"restriction emptied lists of {result.empty_vertices}")
    return result


def identity_correspondence(g: PlaneGraph, L: ListAssignment) -> CorrespondenceAssignment:
    """Match each shared colour with itself on every edge"""
    matchings = {(u, v): frozenset((c, c) for c in L.get(u) & L.get(v)) for u, v in g.edges}
    return CorrespondenceAssignment(L, matchings)


def is_identity_submatching(A: CorrespondenceAssignment) -> bool:
    """Every matched pair is (c, c) with c in both lists"""
    return all(
        a == b and a in A.base.get(u) and b in A.base.get(v)
        for (u, v), pairs in A.matchings.items()
        for a, b in pairs
    )

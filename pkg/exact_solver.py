#!/usr/bin/env python3
"""
Exact solver

Backtracking with forward checking for list colouring and correspondence
colouring. After every assignment the free vertices are split into connected
pieces of the constraint graph and each piece is searched on its own, which
keeps the 114-vertex counterexample at desk scale: once both hubs carry a
colour it falls apart into sixteen 7-vertex gadgets.

Both semantics run on the same engine: list colouring is correspondence
colouring under the identity matching.
"""

import logging
import time
from fractions import Fraction
from typing import Dict, FrozenSet, Iterator, List, Literal, Mapping, Optional, Sequence, Set, Tuple, Union

from pydantic import BaseModel, model_validator

from assignments import (
    Colour,
    CorrespondenceAssignment,
    ListAssignment,
    check_matchings_on_edges,
    identity_correspondence,
    require_lists,
)
from errors import LimitExceeded, PartialColouring
from plane_graph import PlaneGraph, Vertex
from settings import DEFAULT_ENUM_LIMIT, DEFAULT_NODE_BUDGET

logger = logging.getLogger(__name__)

Colouring = Dict[Vertex, Colour]
Status = Literal["colourable", "not-colourable", "budget-exceeded"]


class SearchOutcome(BaseModel):
    status: Status
    witness: Optional[Dict[Vertex, Colour]] = None
    nodes: int = 0
    semantics: str = "list"

    @model_validator(mode="after")
    def _witness_iff_colourable(self) -> "SearchOutcome":
        if (self.witness is not None) != (self.status == "colourable"):
            raise ValueError("witness must be present exactly when colourable")
        return self

    @property
    def colourable(self) -> bool:
        return self.status == "colourable"


class Violation(BaseModel):
    edge: Tuple[Vertex, Vertex]
    colours: Tuple[Colour, Colour]


class CheckReport(BaseModel):
    semantics: str
    proper: bool
    violations: List[Violation] = []
    outside_list: List[Vertex] = []


class _BudgetExceeded(Exception):
    pass


class _Search:
    """
    Forward checking search over a conflict relation

    conflicts[(u, v)][cu] is the set of colours v may not take once u has cu.
    """

    def __init__(self, domains: Mapping[Vertex, Sequence[Colour]],
                 conflicts: Mapping[Tuple[Vertex, Vertex], Mapping[Colour, FrozenSet[Colour]]],
                 budget: int):
        self.domains = {v: tuple(sorted(cs)) for v, cs in domains.items()}
        self.conflicts = conflicts
        self.adjacency: Dict[Vertex, List[Vertex]] = {v: [] for v in self.domains}
        for u, v in conflicts:
            self.adjacency[u].append(v)
        for v in self.adjacency:
            self.adjacency[v].sort()
        self.budget = budget
        self.nodes = 0

    def pieces(self, free: Set[Vertex]) -> List[List[Vertex]]:
        seen: Set[Vertex] = set()
        out = []
        for start in sorted(free):
            if start in seen:
                continue
            seen.add(start)
            piece, stack = [start], [start]
            while stack:
                x = stack.pop()
                for y in self.adjacency[x]:
                    if y in free and y not in seen:
                        seen.add(y)
                        piece.append(y)
                        stack.append(y)
            out.append(piece)
        # small pieces first so failures surface early
        return sorted(out, key=lambda p: (len(p), min(p)))

    def solve(self, free: Set[Vertex], domains: Dict[Vertex, Tuple[Colour, ...]]) -> Optional[Colouring]:
        result: Colouring = {}
        for piece in self.pieces(free):
            found = self._solve_piece(set(piece), domains)
            if found is None:
                return None
            result.update(found)
        return result

    def _forward(self, v: Vertex, c: Colour, free: Set[Vertex],
                 domains: Dict[Vertex, Tuple[Colour, ...]]) -> Optional[Dict[Vertex, Tuple[Colour, ...]]]:
        updated = dict(domains)
        for w in self.adjacency[v]:
            if w not in free:
                continue
            banned = self.conflicts[(v, w)].get(c)
            if not banned:
                continue
            left = tuple(x for x in updated[w] if x not in banned)
            if not left:
                return None
            updated[w] = left
        return updated

    def _solve_piece(self, piece: Set[Vertex], domains: Dict[Vertex, Tuple[Colour, ...]]) -> Optional[Colouring]:
        # smallest ratio of colours left to free neighbours, then token order
        v = min(piece, key=lambda x: (Fraction(len(domains[x]), 1 + sum(1 for y in self.adjacency[x] if y in piece)), x))
        rest = piece - {v}
        for c in domains[v]:
            self.nodes += 1
            if self.nodes > self.budget:
                raise _BudgetExceeded()
            updated = self._forward(v, c, rest, domains)
            if updated is None:
                continue
            found = self.solve(rest, updated)
            if found is not None:
                found[v] = c
                return found
        return None

    def enumerate(self, order: Sequence[Vertex], limit: int) -> Iterator[Colouring]:
        """All colourings, lexicographic in (vertex order, colour order)"""
        assignment: Colouring = {}
        produced = 0

        def walk(i: int, domains: Dict[Vertex, Tuple[Colour, ...]]) -> Iterator[Colouring]:
            nonlocal produced
            if i == len(order):
                produced += 1
                if produced > limit:
                    raise LimitExceeded(f"more than {limit} colourings", limit=limit)
                yield dict(assignment)
                return
            v = order[i]
            free = set(order[i + 1:])
            for c in domains[v]:
                self.nodes += 1
                updated = self._forward(v, c, free, domains)
                if updated is None:
                    continue
                assignment[v] = c
                yield from walk(i + 1, updated)
                del assignment[v]

        if any(not self.domains[v] for v in order):
            return
        yield from walk(0, dict(self.domains))


def _conflicts(g: PlaneGraph, A: CorrespondenceAssignment) -> Dict[Tuple[Vertex, Vertex], Dict[Colour, FrozenSet[Colour]]]:
    out: Dict[Tuple[Vertex, Vertex], Dict[Colour, FrozenSet[Colour]]] = {}
    for u, v in g.edges:
        pairs = A.matching(u, v)
        if not pairs:
            continue
        forward: Dict[Colour, Set[Colour]] = {}
        backward: Dict[Colour, Set[Colour]] = {}
        for cu, cv in pairs:
            forward.setdefault(cu, set()).add(cv)
            backward.setdefault(cv, set()).add(cu)
        out[(u, v)] = {c: frozenset(s) for c, s in forward.items()}
        out[(v, u)] = {c: frozenset(s) for c, s in backward.items()}
    return out


def _run(g: PlaneGraph, A: CorrespondenceAssignment, semantics: str, budget: Optional[int]) -> SearchOutcome:
    budget = budget or DEFAULT_NODE_BUDGET
    search = _Search({v: A.base[v] for v in g.vertices}, _conflicts(g, A), budget)
    started = time.time()
    try:
        if any(not search.domains[v] for v in g.vertices):
            witness = None
        else:
            witness = search.solve(set(g.vertices), dict(search.domains))
    except _BudgetExceeded:
        logger.warning(f"⚠️ Node budget of {budget} exhausted")
        return SearchOutcome(status="budget-exceeded", nodes=search.nodes, semantics=semantics)
    status = "colourable" if witness is not None else "not-colourable"
    logger.debug(f"{semantics} search: {status} after {search.nodes} nodes in {time.time() - started:.3f}s")
    if witness is not None:
        witness = {v: witness[v] for v in g.vertices}
    return SearchOutcome(status=status, witness=witness, nodes=search.nodes, semantics=semantics)


def solve_list(g: PlaneGraph, L: ListAssignment, budget: Optional[int] = None) -> SearchOutcome:
    require_lists(g, L)
    return _run(g, identity_correspondence(g, L), "list", budget)


def solve_corr(g: PlaneGraph, A: CorrespondenceAssignment, budget: Optional[int] = None) -> SearchOutcome:
    require_lists(g, A.base)
    check_matchings_on_edges(g, A)
    return _run(g, A, "correspondence", budget)


def enumerate_corr(g: PlaneGraph, A: CorrespondenceAssignment, limit: int = DEFAULT_ENUM_LIMIT) -> List[Colouring]:
    """
    Every proper colouring, in lexicographic (vertex, colour) order

    Raises:
        LimitExceeded: more than `limit` colourings exist
    """
    require_lists(g, A.base)
    check_matchings_on_edges(g, A)
    search = _Search({v: A.base[v] for v in g.vertices}, _conflicts(g, A), budget=0)
    return list(search.enumerate(list(g.vertices), limit))


def enumerate_list(g: PlaneGraph, L: ListAssignment, limit: int = DEFAULT_ENUM_LIMIT) -> List[Colouring]:
    require_lists(g, L)
    return enumerate_corr(g, identity_correspondence(g, L), limit)


def check(g: PlaneGraph, assignment: Union[ListAssignment, CorrespondenceAssignment], phi: Mapping[Vertex, Colour]) -> CheckReport:
    """
    Check a total colouring under list or correspondence semantics

    Raises:
        PartialColouring: some vertex of g has no colour
    """
    uncoloured = [v for v in g.vertices if v not in phi]
    if uncoloured:
        raise PartialColouring(f"no colour for {', '.join(uncoloured[:5])}", vertices=uncoloured)
    if isinstance(assignment, CorrespondenceAssignment):
        semantics, lists = "correspondence", assignment.base
        forbidden = lambda u, v: assignment.forbids(u, phi[u], v, phi[v])
    else:
        semantics, lists = "list", assignment
        forbidden = lambda u, v: phi[u] == phi[v]
    violations = [Violation(edge=(u, v), colours=(phi[u], phi[v])) for u, v in g.edges if forbidden(u, v)]
    outside = [v for v in g.vertices if phi[v] not in lists.get(v)]
    return CheckReport(semantics=semantics, proper=not violations and not outside,
                       violations=violations, outside_list=outside)

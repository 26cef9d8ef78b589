#!/usr/bin/env python3
"""
Counterexample gadgets

Gadget H(a, b) is a 9-vertex plane graph with a correspondence assignment in
which v1 and v2 have the single colours a and b and nothing is left for v5.
Sixteen copies, one per (a, b) in {7,8,9,10} x {11,12,13,14}, glued along
u1 = every v1 and u2 = every v2, give a 114-vertex plane graph with a (4,2)
correspondence assignment and no colouring. Its matchings all pair a colour
with itself, so the same lists also form a (4,3) list assignment without a
list colouring.
"""

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Tuple

from pydantic import BaseModel

from assignments import (
    Colour,
    CorrespondenceAssignment,
    ListAssignment,
    SeparationSpec,
    is_identity_submatching,
    validate_corr_profile,
    validate_list_profile,
)
from errors import BadParameters, VerificationFailed
from exact_solver import enumerate_corr, solve_corr, solve_list
from plane_graph import PlaneGraph, Vertex, build_plane_graph, face_count, relabel, remove, subgraph
from settings import DEFAULT_ENUM_LIMIT, DEFAULT_NODE_BUDGET

logger = logging.getLogger(__name__)

# Counter-clockwise rotations read off the drawing: v1 left, v2 right, v3 top,
# v4 bottom, v5 in the middle with v8, v9 above it and v6, v7 below.
H_ROTATION: Dict[str, Tuple[str, ...]] = {
    "v1": ("v3", "v8", "v5", "v6", "v4"),
    "v2": ("v4", "v7", "v5", "v9", "v3"),
    "v3": ("v2", "v9", "v8", "v1"),
    "v4": ("v1", "v6", "v7", "v2"),
    "v5": ("v6", "v1", "v8", "v9", "v2", "v7"),
    "v6": ("v1", "v5", "v7", "v4"),
    "v7": ("v4", "v6", "v5", "v2"),
    "v8": ("v1", "v3", "v9", "v5"),
    "v9": ("v5", "v8", "v3", "v2"),
}
H_OUTER = ("v1", "v3", "v2", "v4")

# matchings besides those at v1 and v2, as shared colours
H_MATCHINGS: Dict[Tuple[str, str], Tuple[str, ...]] = {
    ("v4", "v6"): ("3", "4"),
    ("v4", "v7"): ("3", "4"),
    ("v6", "v7"): ("3", "4"),
    ("v3", "v8"): ("1", "2"),
    ("v3", "v9"): ("1", "2"),
    ("v8", "v9"): ("1", "2"),
    ("v5", "v6"): ("5",),
    ("v5", "v7"): ("5",),
    ("v5", "v8"): ("6",),
    ("v5", "v9"): ("6",),
}

HUB_COLOURS = (("7", "8", "9", "10"), ("11", "12", "13", "14"))
RESERVED = {"1", "2", "3", "4", "5", "6"}
# v1 <-> v2, v6 <-> v7, v8 <-> v9 maps H(a, b) onto H(b, a)
H_MIRROR = {"v1": "v2", "v2": "v1", "v6": "v7", "v7": "v6", "v8": "v9", "v9": "v8"}


def _h_lists(a: Colour, b: Colour) -> Dict[str, Tuple[Colour, ...]]:
    return {
        "v1": (a,),
        "v2": (b,),
        "v3": (a, b, "1", "2"),
        "v4": (a, b, "3", "4"),
        "v5": (a, b, "5", "6"),
        "v6": (a, "3", "4", "5"),
        "v7": (b, "3", "4", "5"),
        "v8": (a, "1", "2", "6"),
        "v9": (b, "1", "2", "6"),
    }


def _h_matchings(a: Colour, b: Colour) -> Dict[Tuple[str, str], Tuple[Colour, ...]]:
    shared = dict(H_MATCHINGS)
    for hub, colour in (("v1", a), ("v2", b)):
        for w in H_ROTATION[hub]:
            shared[(hub, w)] = (colour,)
    return shared


@dataclass(frozen=True)
class GadgetInstance:
    graph: PlaneGraph
    assignment: CorrespondenceAssignment
    hubs: Tuple[Vertex, Vertex]
    # (a, b) -> vertices of that copy other than the hubs
    copies: Dict[Tuple[Colour, Colour], Tuple[Vertex, ...]] = field(default_factory=dict)

    def copy_name(self, a: Colour, b: Colour) -> str:
        return f"H[{a},{b}]"


def build_gadget_h(a: Colour = "7", b: Colour = "11") -> GadgetInstance:
    """
    Gadget H with v1 pinned to a and v2 pinned to b

    Raises:
        BadParameters: a == b, or either colour is one of the tokens 1 to 6
    """
    a, b = str(a), str(b)
    if a == b or a in RESERVED or b in RESERVED:
        raise BadParameters(f"hub colours must differ and avoid 1-6, got {a} and {b}", a=a, b=b)
    graph = build_plane_graph(H_ROTATION, H_ROTATION, list(H_OUTER[:2]))
    base = ListAssignment.from_lists(_h_lists(a, b))
    pairs = {e: [(c, c) for c in shared] for e, shared in _h_matchings(a, b).items()}
    inner = tuple(v for v in graph.vertices if v not in ("v1", "v2"))
    return GadgetInstance(graph, CorrespondenceAssignment.build(base, pairs), ("v1", "v2"), {(a, b): inner})


def build_counterexample_g42() -> GadgetInstance:
    """Sixteen copies of H glued at u1 and u2, fanned out between the hubs"""
    u1, u2 = "u1", "u2"
    order = [(a, b) for a in HUB_COLOURS[0] for b in HUB_COLOURS[1]]
    rotation: Dict[str, List[str]] = {u1: [], u2: []}
    lists: Dict[str, Tuple[Colour, ...]] = {u1: HUB_COLOURS[0], u2: HUB_COLOURS[1]}
    pairs: Dict[Tuple[str, str], List[Tuple[Colour, Colour]]] = {}
    copies: Dict[Tuple[Colour, Colour], Tuple[str, ...]] = {}

    for a, b in order:
        prefix = f"H[{a},{b}]."
        name = lambda v: u1 if v == "v1" else u2 if v == "v2" else prefix + v
        for v, around in H_ROTATION.items():
            if v not in ("v1", "v2"):
                rotation[name(v)] = [name(w) for w in around]
        rotation[u1].extend(name(w) for w in H_ROTATION["v1"])
        h_lists = _h_lists(a, b)
        for v in H_ROTATION:
            if v not in ("v1", "v2"):
                lists[name(v)] = h_lists[v]
        for (x, y), shared in _h_matchings(a, b).items():
            pairs[(name(x), name(y))] = [(c, c) for c in shared]
        copies[(a, b)] = tuple(sorted(prefix + v for v in H_ROTATION if v not in ("v1", "v2")))

    # u2 sees the copies in the opposite order so consecutive copies bound a quadrilateral face
    for a, b in reversed(order):
        prefix = f"H[{a},{b}]."
        rotation[u2].extend(prefix + w for w in H_ROTATION["v2"])

    first = f"H[{order[0][0]},{order[0][1]}].v3"
    graph = build_plane_graph(rotation, rotation, [u1, first])
    base = ListAssignment.from_lists(lists)
    inst = GadgetInstance(graph, CorrespondenceAssignment.build(base, pairs), (u1, u2), copies)
    logger.info(f"✅ Built counterexample: {len(graph.vertices)} vertices, {len(graph.edges)} edges, "
                f"{face_count(graph)} faces")
    return inst


def without_edge(inst: GadgetInstance, u: Vertex, v: Vertex) -> GadgetInstance:
    """Copy of the instance with one edge and its matching deleted"""
    return GadgetInstance(remove(inst.graph, (u, v)), inst.assignment.without_edge(u, v), inst.hubs, inst.copies)


def mirror_gadget(inst: GadgetInstance) -> Tuple[PlaneGraph, CorrespondenceAssignment]:
    """Relabel H(a, b) by swapping v1/v2, v6/v7, v8/v9"""
    return relabel(inst.graph, H_MIRROR), inst.assignment.relabel(H_MIRROR)


# =============================================================================
# Reports
# =============================================================================

class CopyEntry(BaseModel):
    hub_colours: Tuple[Colour, Colour]
    copy_name: str
    colourings: int
    search_space: int
    status: str


class CounterexampleReport(BaseModel):
    entries: List[CopyEntry]
    whole_graph_status: str
    whole_graph_nodes: int
    vertices: int
    edges: int
    faces: int
    elapsed_seconds: float
    overall_status: str


class Not43Report(BaseModel):
    list_profile_valid: bool
    max_edge_intersection: int
    identity_submatching: bool
    list_solver_status: str
    list_solver_nodes: int
    corr_profile_valid: bool
    overall_status: str


class GadgetReport(BaseModel):
    hub_colours: Tuple[Colour, Colour]
    colourings: int
    search_space: int
    faces: int
    elapsed_seconds: float
    overall_status: str


class ForcingReport(BaseModel):
    """What every colouring of H - v5 looks like with the hubs pinned"""

    colourings: int
    v3_colours: List[Colour]
    v4_colours: List[Colour]
    five_on_v6_or_v7: bool
    six_on_v8_or_v9: bool
    colours_left_for_v5: List[Colour]
    overall_status: str


def _search_space(lists: ListAssignment, vertices: Sequence[Vertex]) -> int:
    size = 1
    for v in vertices:
        size *= len(lists[v])
    return size


def _pinned_copy(inst: GadgetInstance, hub_colours: Tuple[Colour, Colour]) -> Tuple[PlaneGraph, CorrespondenceAssignment]:
    inner = inst.copies[hub_colours]
    part = subgraph(inst.graph, set(inner) | set(inst.hubs))
    lists = {v: inst.assignment.base[v] for v in part.vertices}
    for hub, colour in zip(inst.hubs, hub_colours):
        lists[hub] = frozenset((colour,))
    matchings = {e: ps for e, ps in inst.assignment.matchings.items() if part.has_edge(*e)}
    return part, CorrespondenceAssignment(ListAssignment(lists), matchings)


class CounterexampleVerifier:
    """
    Exhaustive checks of the glued counterexample

    One entry per hub colouring: the copy whose (a, b) equals the hub colours
    must have no colouring.
    """

    def __init__(self, inst: GadgetInstance, workers: int = 1, enum_limit: int = DEFAULT_ENUM_LIMIT,
                 budget: int = DEFAULT_NODE_BUDGET):
        self.inst = inst
        self.workers = workers
        self.enum_limit = enum_limit
        self.budget = budget

    def check_copy(self, hub_colours: Tuple[Colour, Colour]) -> CopyEntry:
        part, assignment = _pinned_copy(self.inst, hub_colours)
        count = len(enumerate_corr(part, assignment, self.enum_limit))
        entry = CopyEntry(
            hub_colours=hub_colours,
            copy_name=self.inst.copy_name(*hub_colours),
            colourings=count,
            search_space=_search_space(assignment.base, self.inst.copies[hub_colours]),
            status="PASS" if count == 0 else "FAIL",
        )
        if count:
            logger.error(f"❌ {entry.copy_name} has {count} colourings with hubs {hub_colours}")
        return entry

    def run_validation(self) -> CounterexampleReport:
        logger.info("🔍 Verifying the counterexample copy by copy...")
        started = time.time()
        base = self.inst.assignment.base
        u1, u2 = self.inst.hubs
        hub_pairs = [(c1, c2) for c1 in sorted(base[u1]) for c2 in sorted(base[u2])]
        missing = [p for p in hub_pairs if p not in self.inst.copies]
        if missing:
            raise VerificationFailed(f"no copy for hub colours {missing[0]}", missing=[list(p) for p in missing])

        if self.workers > 1:
            with ThreadPoolExecutor(max_workers=self.workers) as pool:
                entries = list(pool.map(self.check_copy, hub_pairs))
        else:
            entries = [self.check_copy(p) for p in hub_pairs]
        entries.sort(key=lambda e: e.hub_colours)

        whole = solve_corr(self.inst.graph, self.inst.assignment, budget=self.budget)
        ok = all(e.status == "PASS" for e in entries) and whole.status == "not-colourable"
        report = CounterexampleReport(
            entries=entries,
            whole_graph_status=whole.status,
            whole_graph_nodes=whole.nodes,
            vertices=len(self.inst.graph.vertices),
            edges=len(self.inst.graph.edges),
            faces=face_count(self.inst.graph),
            elapsed_seconds=round(time.time() - started, 3),
            overall_status="PASS" if ok else "FAIL",
        )
        logger.info(f"{'✅' if ok else '❌'} Counterexample verification {report.overall_status} "
                    f"in {report.elapsed_seconds}s")
        return report


def verify_counterexample(inst: GadgetInstance, workers: int = 1, enum_limit: int = DEFAULT_ENUM_LIMIT,
                          budget: int = DEFAULT_NODE_BUDGET) -> CounterexampleReport:
    """
    Raises:
        VerificationFailed: some copy is colourable or the whole graph is not
            shown uncolourable; the report is in `details['report']`
    """
    report = CounterexampleVerifier(inst, workers, enum_limit, budget).run_validation()
    if report.overall_status != "PASS":
        bad = [e.copy_name for e in report.entries if e.status != "PASS"]
        raise VerificationFailed(
            f"colourable copies: {', '.join(bad) or 'none'}; whole graph: {report.whole_graph_status}",
            report=report.model_dump())
    return report


def verify_not_43_choosable(inst: GadgetInstance, budget: int = DEFAULT_NODE_BUDGET) -> Not43Report:
    """
    Raises:
        VerificationFailed: one of the three checks fails
    """
    g, A = inst.graph, inst.assignment
    lists_report = validate_list_profile(g, A.base, SeparationSpec.of(4, 3))
    corr_report = validate_corr_profile(g, A, SeparationSpec.of(4, 2))
    identity = is_identity_submatching(A)
    outcome = solve_list(g, A.base, budget=budget)
    ok = lists_report.valid and identity and outcome.status == "not-colourable"
    report = Not43Report(
        list_profile_valid=lists_report.valid,
        max_edge_intersection=lists_report.max_edge_overlap,
        identity_submatching=identity,
        list_solver_status=outcome.status,
        list_solver_nodes=outcome.nodes,
        corr_profile_valid=corr_report.valid,
        overall_status="PASS" if ok else "FAIL",
    )
    if not ok:
        raise VerificationFailed("lists do not witness a non-(4,3)-choosable graph", report=report.model_dump())
    logger.info(f"✅ (4,3) list check passed after {outcome.nodes} search nodes")
    return report


def verify_gadget_h(a: Colour = "7", b: Colour = "11", enum_limit: int = DEFAULT_ENUM_LIMIT) -> GadgetReport:
    """Count every colouring of H(a, b); there must be none"""
    started = time.time()
    inst = build_gadget_h(a, b)
    count = len(enumerate_corr(inst.graph, inst.assignment, enum_limit))
    report = GadgetReport(
        hub_colours=(str(a), str(b)),
        colourings=count,
        search_space=_search_space(inst.assignment.base, inst.copies[(str(a), str(b))]),
        faces=face_count(inst.graph),
        elapsed_seconds=round(time.time() - started, 3),
        overall_status="PASS" if count == 0 else "FAIL",
    )
    if count:
        raise VerificationFailed(f"H({a},{b}) has {count} colourings", report=report.model_dump())
    return report


def explain_gadget(inst: GadgetInstance, enum_limit: int = DEFAULT_ENUM_LIMIT) -> ForcingReport:
    """Enumerate H - v5 and show that the neighbours of v5 use up its list"""
    g = subgraph(inst.graph, [v for v in inst.graph.vertices if v != "v5"])
    matchings = {e: ps for e, ps in inst.assignment.matchings.items() if g.has_edge(*e)}
    rest = CorrespondenceAssignment(inst.assignment.base.restricted_to(g.vertices), matchings)
    colourings = enumerate_corr(g, rest, enum_limit)

    left = set()
    for phi in colourings:
        for c in inst.assignment.base["v5"]:
            if not any(inst.assignment.forbids("v5", c, w, phi[w]) for w in inst.graph.neighbours("v5")):
                left.add(c)
    five = all("5" in (phi["v6"], phi["v7"]) for phi in colourings)
    six = all("6" in (phi["v8"], phi["v9"]) for phi in colourings)
    v3 = sorted({phi["v3"] for phi in colourings})
    v4 = sorted({phi["v4"] for phi in colourings})
    ok = five and six and not left and set(v3) <= {"1", "2"} and set(v4) <= {"3", "4"}
    return ForcingReport(
        colourings=len(colourings),
        v3_colours=v3,
        v4_colours=v4,
        five_on_v6_or_v7=five,
        six_on_v8_or_v9=six,
        colours_left_for_v5=sorted(left),
        overall_status="PASS" if ok else "FAIL",
    )


if __name__ == "__main__":
    print("Testing gadget H...")
    print(verify_gadget_h().model_dump())

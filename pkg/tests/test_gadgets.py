import pytest

from assignments import SeparationSpec, validate_corr_profile
from conftest import cyclic
from errors import BadParameters, VerificationFailed
from gadgets import (
    build_gadget_h,
    explain_gadget,
    mirror_gadget,
    verify_counterexample,
    verify_gadget_h,
    verify_not_43_choosable,
    without_edge,
)
from plane_graph import euler_characteristic, face_count, outer_walk


def test_gadget_h_shape(gadget_h):
    g = gadget_h.graph
    assert len(g.vertices) == 9
    assert len(g.edges) == 20
    assert face_count(g) == 13
    assert gadget_h.assignment.base["v1"] == frozenset({"7"})
    assert gadget_h.assignment.base["v5"] == frozenset({"7", "11", "5", "6"})
    assert gadget_h.copies == {("7", "11"): ("v3", "v4", "v5", "v6", "v7", "v8", "v9")}


@pytest.mark.parametrize("a,b", [("7", "7"), ("3", "11"), ("7", "6")])
def test_gadget_h_bad_parameters(a, b):
    with pytest.raises(BadParameters):
        build_gadget_h(a, b)


def test_gadget_h_has_no_colouring():
    report = verify_gadget_h("7", "11")
    assert report.colourings == 0
    assert report.search_space == 4 ** 7
    assert report.faces == 13
    assert report.overall_status == "PASS"


def test_forcing_argument(gadget_h):
    report = explain_gadget(gadget_h)
    assert report.colourings == 36
    assert report.v3_colours == ["1", "2"]
    assert report.v4_colours == ["3", "4"]
    assert report.five_on_v6_or_v7
    assert report.six_on_v8_or_v9
    assert report.colours_left_for_v5 == []
    assert report.overall_status == "PASS"


def test_mirror_swaps_hub_colours(gadget_h):
    g, A = mirror_gadget(gadget_h)
    other = build_gadget_h("11", "7")
    assert set(g.edges) == set(other.graph.edges)
    assert dict(A.base.lists) == dict(other.assignment.base.lists)
    assert dict(A.matchings) == dict(other.assignment.matchings)


def test_counterexample_shape(g42):
    g = g42.graph
    assert len(g.vertices) == 114
    assert len(g.edges) == 320
    assert face_count(g) == 208
    assert euler_characteristic(g) == 2
    assert len(g42.copies) == 16
    assert cyclic(outer_walk(g).vertices, "u1") == ["u1", "H[7,11].v3", "u2", "H[10,14].v4"]


def test_counterexample_is_a_42_correspondence_assignment(g42):
    assert validate_corr_profile(g42.graph, g42.assignment, SeparationSpec.of(4, 2)).valid


@pytest.mark.slow
def test_verify_counterexample(g42):
    report = verify_counterexample(g42)
    assert len(report.entries) == 16
    assert [e.hub_colours for e in report.entries] == sorted(g42.copies)
    assert all(e.colourings == 0 and e.status == "PASS" for e in report.entries)
    assert all(e.search_space == 4 ** 7 for e in report.entries)
    assert report.whole_graph_status == "not-colourable"
    assert report.overall_status == "PASS"


@pytest.mark.slow
def test_verify_counterexample_with_workers(g42):
    sequential = verify_counterexample(g42)
    threaded = verify_counterexample(g42, workers=4)
    assert [e.model_dump() for e in threaded.entries] == [e.model_dump() for e in sequential.entries]


@pytest.mark.slow
def test_tampered_counterexample_fails(g42):
    tampered = without_edge(g42, "H[7,11].v6", "H[7,11].v7")
    with pytest.raises(VerificationFailed) as info:
        verify_counterexample(tampered)
    report = info.value.details["report"]
    failing = [e for e in report["entries"] if e["status"] == "FAIL"]
    assert [e["copy_name"] for e in failing] == ["H[7,11]"]
    assert report["whole_graph_status"] == "colourable"


@pytest.mark.slow
def test_not_43_choosable(g42):
    report = verify_not_43_choosable(g42)
    assert report.list_profile_valid
    assert report.max_edge_intersection == 3
    assert report.identity_submatching
    assert report.list_solver_status == "not-colourable"

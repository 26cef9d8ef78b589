import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from assignments import ListAssignment  # noqa: E402
from gadgets import build_counterexample_g42, build_gadget_h  # noqa: E402
from plane_graph import build_plane_graph  # noqa: E402


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: exhaustive checks over larger corpora")


@pytest.fixture(scope="session")
def gadget_h():
    return build_gadget_h("7", "11")


@pytest.fixture(scope="session")
def g42():
    return build_counterexample_g42()


@pytest.fixture
def triangle():
    rotation = {"v0": ["v1", "v2"], "v1": ["v2", "v0"], "v2": ["v0", "v1"]}
    return build_plane_graph(rotation, rotation)


@pytest.fixture
def square_with_diagonal():
    # a(0,0) b(1,0) c(1,1) d(0,1), diagonal ac
    rotation = {"a": ["b", "c", "d"], "b": ["c", "a"], "c": ["d", "a", "b"], "d": ["c", "a"]}
    return build_plane_graph(rotation, rotation)


@pytest.fixture
def path3():
    rotation = {"a": ["b"], "b": ["a", "c"], "c": ["b"]}
    return build_plane_graph(rotation, rotation)


@pytest.fixture
def k4_instance():
    """
    K4 on a, b, c with d inside, e in the face abd and f outside below ab.
    abd is the only offensive triangle.
    """
    rotation = {
        "a": ["b", "e", "d", "c", "f"],
        "b": ["c", "d", "e", "a", "f"],
        "c": ["a", "d", "b"],
        "d": ["c", "a", "e", "b"],
        "e": ["d", "a", "b"],
        "f": ["b", "a"],
    }
    lists = ListAssignment.from_lists({
        "a": ["A", "B", "1", "2"],
        "b": ["A", "B", "3", "4"],
        "c": ["7", "8", "9", "10"],
        "d": ["A", "B", "5", "6"],
        "e": ["11", "12", "13", "14"],
        "f": ["15", "16", "17", "18"],
    })
    return build_plane_graph(rotation, rotation), lists


def cyclic(seq, start):
    """Rotate a cyclic sequence so it begins at `start`"""
    seq = list(seq)
    i = seq.index(start)
    return seq[i:] + seq[:i]

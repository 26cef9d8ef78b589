#!/usr/bin/env python3
"""
JSON file formats

Graph:           {"vertices": [...], "rotation": {"v": ["u1", "u2", ...]}, "outer": ["v", "u", ...]}
Lists:           {"v": ["1", "2", "a", "b"], ...}
Correspondence:  {"u|v": [["cu", "cv"], ...], ...}   with u < v in token order
Bundle:          {"graph": <graph or file>, "lists": <lists or file>,
                  "correspondence": <correspondence or file>, "spec": [ell, k],
                  "path": {"vertices": [...], "colours": [...]}}

Any bundle member given as a string is read as a file path relative to the
bundle's own directory.
"""

import json
import logging
import os
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Tuple, Union

from pydantic import BaseModel, RootModel, ValidationError, model_validator

from assignments import Colour, CorrespondenceAssignment, ListAssignment, SeparationSpec
from constructive_solver import PrecolouredPath
from errors import ConsistencyError, ParseError
from plane_graph import PlaneGraph, Vertex, build_plane_graph, edge_key

logger = logging.getLogger(__name__)

Walk = List[Vertex]


class GraphDocument(BaseModel):
    vertices: List[Vertex]
    rotation: Dict[Vertex, List[Vertex]]
    outer: Union[List[Walk], Walk] = []

    def to_graph(self) -> PlaneGraph:
        known = set(self.vertices)
        for v, around in self.rotation.items():
            stray = [w for w in [v, *around] if w not in known]
            if stray:
                raise ConsistencyError(f"rotation names unknown vertex {stray[0]}", vertex=stray[0])
        return build_plane_graph(self.vertices, self.rotation, self.outer or None)

    @classmethod
    def from_graph(cls, g: PlaneGraph) -> "GraphDocument":
        walks = []
        for fid in g.outer_faces:
            face = g.faces[fid]
            walks.append([face.anchor] if face.anchor is not None else list(face.vertices))
        outer: Union[List[Walk], Walk] = walks[0] if len(walks) == 1 else walks
        return cls(vertices=list(g.vertices), rotation={v: list(g.rotation[v]) for v in g.vertices}, outer=outer)


class ListsDocument(RootModel[Dict[Vertex, List[Colour]]]):
    pass


class CorrespondenceDocument(RootModel[Dict[str, List[Tuple[Colour, Colour]]]]):
    pass


class PathDocument(BaseModel):
    vertices: List[Vertex] = []
    colours: List[Colour] = []

    @model_validator(mode="after")
    def _paired(self) -> "PathDocument":
        if len(self.vertices) != len(self.colours):
            raise ValueError("path needs one colour per vertex")
        if len(self.vertices) > 2:
            raise ValueError("path has at most two vertices")
        return self


class InstanceBundle(BaseModel):
    graph: Union[GraphDocument, str]
    lists: Union[ListsDocument, str]
    correspondence: Optional[Union[CorrespondenceDocument, str]] = None
    spec: Optional[Tuple[int, int]] = None
    path: Optional[PathDocument] = None


@dataclass(frozen=True)
class Instance:
    graph: PlaneGraph
    lists: ListAssignment
    correspondence: Optional[CorrespondenceAssignment] = None
    spec: Optional[SeparationSpec] = None
    path: PrecolouredPath = PrecolouredPath()


def _location(err: ValidationError, prefix: str = "") -> str:
    first = err.errors()[0]
    loc = ".".join(str(part) for part in first.get("loc", ()))
    return f"{prefix}{loc}" if loc else prefix.rstrip(".") or "<root>"


def _loads(text: str, source: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"{source}: {e.msg}", location=f"{source}:{e.lineno}:{e.colno}")


def _read(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as f:
            return f.read()
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e.strerror}", location=path)


def _validate(model, data: Any, source: str):
    try:
        return model.model_validate(data)
    except ValidationError as e:
        location = _location(e, f"{source}:")
        raise ParseError(f"{location}: {e.errors()[0]['msg']}", location=location)


def _resolve(member, model, base_dir: str):
    if not isinstance(member, str):
        return member
    path = os.path.join(base_dir, member)
    return _validate(model, _loads(_read(path), path), path)


def _lists(doc: ListsDocument, g: PlaneGraph) -> ListAssignment:
    lists = doc.root
    unknown = sorted(v for v in lists if v not in g)
    if unknown:
        raise ConsistencyError(f"list given for unknown vertex {unknown[0]}", vertices=unknown)
    missing = [v for v in g.vertices if v not in lists]
    if missing:
        raise ConsistencyError(f"no list for vertex {missing[0]}", vertices=missing)
    return ListAssignment.from_lists(lists)


def _split_key(key: str) -> Tuple[Vertex, Vertex]:
    parts = key.split("|")
    if len(parts) != 2 or not all(parts):
        raise ConsistencyError(f"matching key {key!r} is not of the form u|v", key=key)
    return parts[0], parts[1]


def _correspondence(doc: CorrespondenceDocument, g: PlaneGraph, lists: ListAssignment) -> CorrespondenceAssignment:
    matchings = {}
    for key, pairs in doc.root.items():
        u, v = _split_key(key)
        if (u, v) != edge_key(u, v):
            raise ConsistencyError(f"matching key {key!r} must list the smaller token first", key=key)
        if u not in g or v not in g:
            raise ConsistencyError(f"matching names unknown vertex in {key!r}", key=key)
        if not g.has_edge(u, v):
            raise ConsistencyError(f"matching given for non-edge {key}", key=key)
        matchings[(u, v)] = [tuple(p) for p in pairs]
    return CorrespondenceAssignment.build(lists, matchings)


def _path(doc: Optional[PathDocument], g: PlaneGraph) -> PrecolouredPath:
    if doc is None:
        return PrecolouredPath()
    stray = [v for v in doc.vertices if v not in g]
    if stray:
        raise ConsistencyError(f"path names unknown vertex {stray[0]}", vertex=stray[0])
    return PrecolouredPath(tuple(doc.vertices), tuple(doc.colours))


def parse_bundle(text: str, base_dir: str = ".", source: str = "<bundle>") -> Instance:
    """
    Raises:
        ParseError: malformed JSON or a document of the wrong shape
        ConsistencyError: files disagree about vertices or edges
    """
    bundle: InstanceBundle = _validate(InstanceBundle, _loads(text, source), source)
    g = _resolve(bundle.graph, GraphDocument, base_dir).to_graph()
    lists = _lists(_resolve(bundle.lists, ListsDocument, base_dir), g)
    corr = None
    if bundle.correspondence is not None:
        corr = _correspondence(_resolve(bundle.correspondence, CorrespondenceDocument, base_dir), g, lists)
    spec = None
    if bundle.spec is not None:
        try:
            spec = SeparationSpec.of(*bundle.spec)
        except ValidationError as e:
            raise ParseError(f"bad spec {list(bundle.spec)}: {e.errors()[0]['msg']}", location=f"{source}:spec")
    inst = Instance(g, lists, corr, spec, _path(bundle.path, g))
    logger.debug(f"parsed {source}: {len(g.vertices)} vertices, correspondence={'yes' if corr else 'no'}")
    return inst


def load_bundle(path: str) -> Instance:
    return parse_bundle(_read(path), os.path.dirname(path) or ".", path)


def serialize_bundle(inst: Instance) -> Dict[str, Any]:
    """Inline bundle document; parse_bundle reads it back to an equal instance"""
    doc: Dict[str, Any] = {
        "graph": GraphDocument.from_graph(inst.graph).model_dump(),
        "lists": inst.lists.to_dict(),
    }
    if inst.correspondence is not None:
        doc["correspondence"] = inst.correspondence.to_dict()
    if inst.spec is not None:
        doc["spec"] = [inst.spec.ell, inst.spec.k]
    if len(inst.path):
        doc["path"] = {"vertices": list(inst.path.vertices), "colours": list(inst.path.colours)}
    return doc


def dumps(doc: Any) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False)

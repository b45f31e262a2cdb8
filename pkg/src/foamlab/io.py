"""JSON documents for webs and foams."""

from __future__ import annotations

import json
from typing import Any

import jsonschema

from .foams import Facet, FoamPresentation, Seam, SingularPoint
from .webs import Edge, TaitColoring, Web, WebError


class SchemaError(ValueError):
    """A document does not match the web or foam schema."""


WEB_SCHEMA = {
    "type": "object",
    "required": ["vertices", "edges"],
    "additionalProperties": False,
    "properties": {
        "name": {"type": "string"},
        "vertices": {"type": "array", "items": {"type": "string"}},
        "edges": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["id", "ends"],
                "additionalProperties": False,
                "properties": {
                    "id": {"type": "string"},
                    "ends": {"type": "array", "items": {"type": "string"},
                             "minItems": 0, "maxItems": 2},
                },
            },
        },
    },
}

FOAM_SCHEMA = {
    "type": "object",
    "required": ["facets"],
    "additionalProperties": False,
    "properties": {
        "name": {"type": "string"},
        "facets": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["id", "chi"],
                "additionalProperties": False,
                "properties": {
                    "id": {"type": "string"},
                    "chi": {"type": "integer"},
                    "dots": {"type": "integer", "minimum": 0},
                },
            },
        },
        "seams": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["id", "germs"],
                "additionalProperties": False,
                "properties": {
                    "id": {"type": "string"},
                    "germs": {"type": "array", "items": {"type": "string"}},
                    "circle": {"type": "boolean"},
                    "ends": {"type": "array", "items": {"type": "string"}},
                },
            },
        },
        "singular": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["id", "link", "edgeToFacet", "adornment"],
                "additionalProperties": False,
                "properties": {
                    "id": {"type": "string"},
                    "link": WEB_SCHEMA,
                    "edgeToFacet": {"type": "object", "additionalProperties": {"type": "string"}},
                    "adornment": {"type": "object",
                                  "additionalProperties": {"enum": [1, 2, 3]}},
                    "vertexToSeam": {"type": "object",
                                     "additionalProperties": {"type": "string"}},
                },
            },
        },
    },
}


def _validate(doc: Any, schema: dict, what: str) -> None:
    try:
        jsonschema.validate(doc, schema)
    except jsonschema.ValidationError as exc:
        path = "/".join(str(p) for p in exc.absolute_path)
        raise SchemaError(f"{what} document invalid at '{path}': {exc.message}") from None


def web_to_doc(web: Web) -> dict:
    return {
        "name": web.name,
        "vertices": list(web.vertices),
        "edges": [{"id": e.id, "ends": list(e.ends)} for e in web.edges],
    }


def web_from_doc(doc: Any) -> Web:
    _validate(doc, WEB_SCHEMA, "web")
    edges = []
    for e in doc["edges"]:
        if len(e["ends"]) == 1:
            raise SchemaError(f"edge {e['id']!r} must list 0 or 2 ends")
        edges.append(Edge(e["id"], tuple(e["ends"])))
    try:
        return Web(tuple(doc["vertices"]), tuple(edges), doc.get("name", ""))
    except WebError as exc:
        raise SchemaError(str(exc)) from None


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2) + "\n"


def dump_web(web: Web) -> str:
    return dumps(web_to_doc(web))


def load_web(text: str) -> Web:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"not JSON: {exc}") from None
    return web_from_doc(doc)


def foam_to_doc(foam: FoamPresentation) -> dict:
    singular = []
    for p in foam.singular:
        item = {
            "id": p.id,
            "link": web_to_doc(p.link),
            "edgeToFacet": dict(sorted(p.edge_to_facet.items())),
            "adornment": p.adornment.as_dict(),
        }
        if p.vertex_to_seam is not None:
            item["vertexToSeam"] = dict(sorted(p.vertex_to_seam.items()))
        singular.append(item)
    return {
        "name": foam.name,
        "facets": [{"id": f.id, "chi": f.chi, "dots": f.dots} for f in foam.facets],
        "seams": [{"id": s.id, "germs": list(s.germs), "circle": s.is_circle,
                   "ends": list(s.ends)} for s in foam.seams],
        "singular": singular,
    }


def foam_from_doc(doc: Any) -> FoamPresentation:
    _validate(doc, FOAM_SCHEMA, "foam")
    facets = tuple(Facet(f["id"], f["chi"], f.get("dots", 0)) for f in doc["facets"])
    seams = []
    for s in doc.get("seams", []):
        ends = tuple(s.get("ends", []))
        if s.get("circle", False) and ends:
            raise SchemaError(f"seam circle {s['id']!r} cannot have ends")
        seams.append(Seam(s["id"], tuple(s["germs"]), ends))
    points = []
    for p in doc.get("singular", []):
        link = web_from_doc(p["link"])
        try:
            adornment = TaitColoring.from_mapping(link, p["adornment"])
        except WebError as exc:
            raise SchemaError(f"singular point {p['id']!r}: {exc}") from None
        points.append(SingularPoint(p["id"], link, dict(p["edgeToFacet"]), adornment,
                                    p.get("vertexToSeam")))
    return FoamPresentation(facets, tuple(seams), tuple(points), doc.get("name", ""))


def dump_foam(foam: FoamPresentation) -> str:
    return dumps(foam_to_doc(foam))


def load_foam(text: str) -> FoamPresentation:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"not JSON: {exc}") from None
    return foam_from_doc(doc)

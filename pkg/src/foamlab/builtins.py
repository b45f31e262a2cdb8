"""Named webs and foams with fixed labelings."""

from __future__ import annotations

from .foams import (
    FoamPresentation, build_closed_surface, build_double_cone, build_theta_foam,
)
from .webs import Web, WebError, enumerate_tait_colorings, kempe_partition


def _circle() -> Web:
    return Web.from_edges([("c", ())], "circle", vertices=())


def _theta() -> Web:
    return Web.from_edges([("a", ("u", "v")), ("b", ("u", "v")), ("c", ("u", "v"))], "theta")


def _k4() -> Web:
    pairs = [("0", "1"), ("0", "2"), ("0", "3"), ("1", "2"), ("1", "3"), ("2", "3")]
    return Web.from_edges([(f"e{a}{b}", (f"v{a}", f"v{b}")) for a, b in pairs], "k4")


def _cube() -> Web:
    # outer square o0..o3, inner square i0..i3, spokes s0..s3
    edges = []
    for k in range(4):
        n = (k + 1) % 4
        edges.append((f"o{k}{n}", (f"o{k}", f"o{n}")))
        edges.append((f"i{k}{n}", (f"i{k}", f"i{n}")))
        edges.append((f"s{k}", (f"o{k}", f"i{k}")))
    return Web.from_edges(sorted(edges), "cube")


def _dodecahedron() -> Web:
    # outer pentagon 0-4, middle 10-cycle 5-14, inner pentagon 15-19
    pairs = []
    for i in range(5):
        pairs.append((i, (i + 1) % 5))
        pairs.append((i, 5 + 2 * i))
        pairs.append((5 + 2 * i + 1, 15 + i))
        pairs.append((15 + i, 15 + (i + 1) % 5))
    for k in range(10):
        pairs.append((5 + k, 5 + (k + 1) % 10))
    pairs = sorted(tuple(sorted(p)) for p in pairs)
    edges = [(f"e{n:02d}", (f"v{a:02d}", f"v{b:02d}")) for n, (a, b) in enumerate(pairs)]
    return Web.from_edges(edges, "dodecahedron", vertices=[f"v{k:02d}" for k in range(20)])


def _empty() -> Web:
    return Web((), (), "empty")


_WEBS = {
    "empty": _empty,
    "circle": _circle,
    "theta": _theta,
    "k4": _k4,
    "cube": _cube,
    "dodecahedron": _dodecahedron,
    # the square web of the inhomogeneous counterexample is the cube drawn as
    # a square inside a square
    "square": _cube,
}


def builtin_web(name: str) -> Web:
    try:
        web = _WEBS[name]()
    except KeyError:
        raise WebError(f"unknown builtin web {name!r}; choose from {sorted(_WEBS)}") from None
    if name == "square":
        web = Web(web.vertices, web.edges, "square")
    return web


def builtin_web_names() -> list[str]:
    return sorted(_WEBS)


# facet ids of the two dotted facets in the counterexample: adjacent edges of
# the outer square
SQUARE_FOAM_DOTS = {"o01": 2, "o12": 1}


def square_foam() -> FoamPresentation:
    web = builtin_web("square")
    c = enumerate_tait_colorings(web)[0]
    foam = build_double_cone(web, c, c, SQUARE_FOAM_DOTS, check_homogeneous=False)
    return FoamPresentation(foam.facets, foam.seams, foam.singular, "square-foam")


def dodecahedron_cone(kappa: int = 0, dots=None) -> FoamPresentation:
    web = builtin_web("dodecahedron")
    rep = kempe_partition(web).classes[kappa][0]
    foam = build_double_cone(web, rep, rep, dots or {})
    return FoamPresentation(foam.facets, foam.seams, foam.singular, "dodecahedron-cone")


def _cube_cone() -> FoamPresentation:
    web = builtin_web("cube")
    c = enumerate_tait_colorings(web)[0]
    foam = build_double_cone(web, c, c, {}, check_homogeneous=False)
    return FoamPresentation(foam.facets, foam.seams, foam.singular, "cube-cone")


def _k4_cone() -> FoamPresentation:
    web = builtin_web("k4")
    c = enumerate_tait_colorings(web)[0]
    foam = build_double_cone(web, c, c, {"e01": 1, "e02": 1, "e03": 1})
    return FoamPresentation(foam.facets, foam.seams, foam.singular, "k4-cone")


_FOAMS = {
    "sphere": lambda: build_closed_surface(0, 0),
    "sphere-2dots": lambda: build_closed_surface(0, 2),
    "torus": lambda: build_closed_surface(1, 0),
    "theta-foam": lambda: build_theta_foam(0, 1, 2),
    "k4-cone": _k4_cone,
    "cube-cone": _cube_cone,
    "dodecahedron-cone": lambda: dodecahedron_cone(0, {"e00": 1, "e01": 1, "e02": 1}),
    "square-foam": square_foam,
}


def builtin_foam(name: str) -> FoamPresentation:
    try:
        return _FOAMS[name]()
    except KeyError:
        raise WebError(f"unknown builtin foam {name!r}; choose from {sorted(_FOAMS)}") from None


def builtin_foam_names() -> list[str]:
    return sorted(_FOAMS)

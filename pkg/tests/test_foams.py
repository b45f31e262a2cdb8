import itertools
import random

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from foamlab.builtins import builtin_foam, builtin_foam_names, builtin_web, square_foam
from foamlab.foams import (
    EvaluationIntegrityError, Facet, FoamError, FoamPresentation, Seam, SingularPoint,
    bicolored_euler, build_closed_surface, build_double_cone, build_theta_foam,
    colored_term, enumerate_admissible_colorings, evaluate, foam_degree, validate_foam,
)
from foamlab.gf2 import FACTORS, SymPoly
from foamlab.io import dump_foam, load_foam
from foamlab.webs import (
    PAIRS, TaitColoring, Web, bicolored_counts, bicolored_subgraph, coloring_degree, kempe_class,
    kempe_move, kempe_partition,
)

X = sympy.symbols("X1 X2 X3")


def two_thetas() -> Web:
    return Web.from_edges([("a", ("u", "v")), ("b", ("u", "v")), ("c", ("u", "v")),
                           ("d", ("x", "y")), ("e", ("x", "y")), ("f", ("x", "y"))], "2theta")


def cone_over(name_or_web, kappa=0, dots=None):
    web = builtin_web(name_or_web) if isinstance(name_or_web, str) else name_or_web
    rep = kempe_partition(web).classes[kappa][0]
    return web, build_double_cone(web, rep, rep, dots or {})


# -- independent oracle for double cones ------------------------------------

def zz(expr):
    return sympy.Poly(expr, *X, domain="ZZ")


def mod2_zero(poly) -> bool:
    return all(int(c) % 2 == 0 for c in poly.coeffs()) or poly.is_zero


def double_cone_oracle(web, kappa, dots):
    """Numerator and denominator over Z of sum_c prod X^dots / prod (Xi+Xj)^d_ij(c),
    summed over the colorings of the adorned class; valid mod 2."""
    cls = kempe_partition(web).classes[kappa]
    terms = []
    for c in cls:
        num = sympy.Integer(1)
        for e, n in dots.items():
            num *= X[c[e] - 1] ** n
        den = [bicolored_counts(web, c)[(i + 1, j + 1)] for i, j in FACTORS]
        terms.append((num, den))
    top = [max(d[k] for _, d in terms) for k in range(3)]
    total = sympy.Integer(0)
    for num, den in terms:
        extra = sympy.Integer(1)
        for k, (i, j) in enumerate(FACTORS):
            extra *= (X[i] + X[j]) ** (top[k] - den[k])
        total += num * extra
    denom = sympy.Integer(1)
    for k, (i, j) in enumerate(FACTORS):
        denom *= (X[i] + X[j]) ** top[k]
    return zz(sympy.expand(total)), zz(sympy.expand(denom))


def sym_to_zz(s: SymPoly):
    e1, e2, e3 = X[0] + X[1] + X[2], X[0] * X[1] + X[0] * X[2] + X[1] * X[2], X[0] * X[1] * X[2]
    expr = sum((e1 ** a * e2 ** b * e3 ** c for a, b, c in s.terms), sympy.Integer(0))
    return zz(sympy.expand(expr))


@pytest.mark.parametrize("web,dots", [
    ("theta", {}), ("theta", {"a": 1, "b": 2}), ("theta", {"a": 2, "b": 1, "c": 1}),
    ("k4", {"e01": 1, "e02": 1, "e03": 1}), ("k4", {"e01": 2, "e02": 1, "e12": 3}),
    ("k4", {"e01": 2, "e23": 2}),
])
def test_double_cone_evaluation_against_oracle(web, dots):
    w, foam = cone_over(web, 0, dots)
    value = evaluate(foam).value
    num, den = double_cone_oracle(w, 0, dots)
    # value == num/den in characteristic 2  <=>  value*den - num == 0 mod 2
    assert mod2_zero(sym_to_zz(value) * den - num)


@pytest.mark.parametrize("web", ["theta", "k4", "dodecahedron"])
def test_bicolored_euler_is_twice_cycle_count(web):
    w, foam = cone_over(web)
    cls = set(kempe_partition(w).classes[0])
    for col in enumerate_admissible_colorings(foam):
        c = next(c for c in cls if all(c[e] == col[e] for e in w.edge_ids))
        for pair in PAIRS:
            assert bicolored_euler(foam, col, pair) == 2 * bicolored_subgraph(w, c, pair).count == 2


def test_bicolored_euler_disconnected_link():
    w, foam = cone_over(two_thetas())
    for col in enumerate_admissible_colorings(foam):
        for pair in PAIRS:
            assert bicolored_euler(foam, col, pair) == 4


# -- validation --------------------------------------------------------------

def test_theta_foam_is_valid():
    foam = build_theta_foam(0, 1, 2)
    assert validate_foam(foam) == [] and foam.seam_chi == 0 and not foam.singular


def test_cube_cone_is_invalid():
    codes = {d.code for d in validate_foam(builtin_foam("cube-cone"))}
    assert "inhomogeneous-class" in codes
    with pytest.raises(FoamError):
        evaluate(builtin_foam("cube-cone"))
    cube = builtin_web("cube")
    c = kempe_partition(cube).classes[0][0]
    with pytest.raises(FoamError):
        build_double_cone(cube, c, c)


def _codes(foam):
    return {d.code for d in validate_foam(foam)}


def test_diagnostic_codes():
    f = (Facet("a", 1), Facet("b", 1), Facet("c", 1))
    assert "seam-germs" in _codes(FoamPresentation(f, (Seam("s", ("a", "b")),)))
    assert "duplicate-facet" in _codes(FoamPresentation(f + (Facet("a", 2),)))
    assert "negative-dots" in _codes(FoamPresentation((Facet("a", 2, -1),)))
    assert "unknown-facet" in _codes(FoamPresentation(f, (Seam("s", ("a", "b", "z")),)))
    assert "duplicate-seam" in _codes(FoamPresentation(f, (Seam("s", ("a", "b", "c")),) * 2))
    assert "seam-ends" in _codes(FoamPresentation(f, (Seam("s", ("a", "b", "c"), ("p",)),)))
    assert "unknown-point" in _codes(FoamPresentation(f, (Seam("s", ("a", "b", "c"), ("p", "q")),)))


def test_singular_point_diagnostics():
    web, foam = cone_over("theta")
    top, bottom = foam.singular
    broken = SingularPoint("top", top.link, {"a": "a", "b": "b"}, top.adornment)
    assert "link-map" in _codes(FoamPresentation(foam.facets, foam.seams, (broken, bottom)))
    wrong = SingularPoint("top", top.link, top.edge_to_facet, top.adornment,
                          {"u": "s:u", "v": "s:u"})
    swapped = FoamPresentation(foam.facets, (foam.seams[0], Seam("s:v", ("a", "b", "b"),
                                                                 ("top", "bottom"))),
                               (wrong, bottom))
    assert "link-germs" in _codes(swapped)
    fewer = FoamPresentation(foam.facets, foam.seams[:1], foam.singular)
    assert "seam-count" in _codes(fewer)
    loop = Web.from_edges([("l", ("p", "p")), ("m", ("p", "q")), ("n", ("q", "q"))])
    bad = SingularPoint("top", loop, {"l": "a", "m": "b", "n": "c"},
                        TaitColoring.from_mapping(loop, {"l": 1, "m": 2, "n": 3}))
    assert "link-uncolorable" in _codes(FoamPresentation(foam.facets, foam.seams, (bad, bottom)))


# -- colorings ---------------------------------------------------------------

def test_theta_foam_colorings():
    assert len(enumerate_admissible_colorings(build_theta_foam(0, 0, 0))) == 6


def test_k4_cone_colorings():
    assert len(enumerate_admissible_colorings(cone_over("k4")[1])) == 6


def test_dodecahedron_cones(dodecahedron):
    kp = kempe_partition(dodecahedron)
    a, b = kp.classes[0][0], kp.classes[3][0]
    same = build_double_cone(dodecahedron, a, a)
    assert len(same.facets) == 30 and len(same.singular) == 2 and same.seam_chi == -18
    assert len(enumerate_admissible_colorings(same)) == 6
    cross = build_double_cone(dodecahedron, a, b)
    assert enumerate_admissible_colorings(cross) == []
    assert evaluate(cross).value == SymPoly()


# -- degree ------------------------------------------------------------------

def test_degree_examples(dodecahedron):
    assert foam_degree(build_theta_foam(0, 1, 2)) == 0
    assert foam_degree(build_closed_surface(0, 0)) == -4
    rep = kempe_partition(dodecahedron).classes[0][0]
    foam = build_double_cone(dodecahedron, rep, rep, {"e00": 1, "e01": 1, "e02": 1})
    assert foam_degree(foam) == 0


def _check_coloring_identities(foam):
    d = foam_degree(foam)
    correction = sum(coloring_degree(p.link, p.adornment) - 3 for p in foam.singular)
    for col in enumerate_admissible_colorings(foam):
        term = colored_term(foam, col)
        chis = term.chis
        assert all(x % 2 == 0 for x in chis)
        assert sum(chis) == 3 * foam.seam_chi + 2 * sum(f.chi for f in foam.facets) + correction
        # each colored term P/Q has degree 2 #dots - sum chi = d(F)
        assert 2 * foam.total_dots - sum(chis) == d


@pytest.mark.parametrize("foam", [
    build_theta_foam(2, 0, 1), build_closed_surface(0, 3), build_closed_surface(1, 1),
    build_closed_surface(2, 0), cone_over("k4", 0, {"e01": 2})[1], cone_over(two_thetas())[1],
])
def test_degree_identity_per_coloring(foam):
    _check_coloring_identities(foam)


def test_balancing_relation():
    for web in (builtin_web("k4"), two_thetas(), builtin_web("theta")):
        rep = kempe_partition(web).classes[0][0]
        foam = build_double_cone(web, rep, rep, {web.edge_ids[0]: 1})
        cols = {tuple(sorted(c.as_dict().items())): c for c in enumerate_admissible_colorings(foam)}
        for col in cols.values():
            c = [x for x in kempe_class(web, rep) if all(x[e] == col[e] for e in web.edge_ids)][0]
            for comp in bicolored_subgraph(web, c, (1, 2)).components:
                moved = kempe_move(web, c, (1, 2), comp).as_dict()
                other = cols[tuple(sorted(moved.items()))]
                before = bicolored_euler(foam, col, (1, 3)) + bicolored_euler(foam, col, (2, 3))
                after = bicolored_euler(foam, other, (1, 3)) + bicolored_euler(foam, other, (2, 3))
                assert before == after


# -- evaluation --------------------------------------------------------------

@pytest.mark.parametrize("k,l,m", list(itertools.product(range(3), repeat=3)))
def test_theta_table(k, l, m):
    value = evaluate(build_theta_foam(k, l, m)).value
    assert value == (SymPoly.one() if {k, l, m} == {0, 1, 2} else SymPoly())


@pytest.mark.parametrize("genus,dots,expected", [
    (0, 0, "0"), (0, 1, "0"), (0, 2, "1"), (0, 3, "E1"), (1, 0, "1"), (1, 1, "E1"),
])
def test_closed_surfaces(genus, dots, expected):
    assert evaluate(build_closed_surface(genus, dots)).value.render() == expected


def test_torus_has_three_unit_terms():
    rep = evaluate(build_closed_surface(1, 0))
    assert len(rep.terms) == 3 and all(t.fraction.render() == "1" for t in rep.terms)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 4), st.integers(0, 4), st.integers(0, 4))
def test_theta_foam_is_symmetrized_monomial(k, l, m):
    # <Theta(k,l,m)> = sum over permutations of X^(k,l,m) / Delta
    value = evaluate(build_theta_foam(k, l, m)).value
    num = sum((X[a] ** k * X[b] ** l * X[c] ** m for a, b, c in itertools.permutations(range(3))),
              sympy.Integer(0))
    delta = (X[0] + X[1]) * (X[0] + X[2]) * (X[1] + X[2])
    assert mod2_zero(sym_to_zz(value) * zz(sympy.expand(delta)) - zz(sympy.expand(num)))


def test_odd_euler_characteristic_rejected():
    with pytest.raises(FoamError):
        evaluate(FoamPresentation((Facet("f", 1),)))


def fake_three_spheres() -> FoamPresentation:
    """Valid as data but not a real foam: three spheres sharing a seam circle."""
    facets = (Facet("f0", 2, 2), Facet("f1", 2, 1), Facet("f2", 2, 0))
    return FoamPresentation(facets, (Seam("s", ("f0", "f1", "f2")),), (), "fake")


def test_integrity_error_on_non_polynomial():
    foam = fake_three_spheres()
    assert validate_foam(foam) == []
    with pytest.raises(EvaluationIntegrityError) as info:
        evaluate(foam)
    assert info.value.fraction.render() == "(1)/((X1+X2)*(X1+X3)*(X2+X3))"
    assert evaluate(foam, mode="raw").raw == info.value.fraction


def test_square_foam_raw_is_not_polynomial():
    rep = evaluate(square_foam(), mode="raw")
    assert not rep.is_polynomial and rep.value is None and rep.degree is None
    assert rep.raw.render() == ("(X1^2 + X1*X2 + X1*X3 + X2^2 + X2*X3 + X3^2 + 1)"
                                "/((X1+X2)*(X1+X3)*(X2+X3))")
    assert rep.raw.numerator.is_symmetric()
    with pytest.raises(FoamError):
        evaluate(square_foam())


# -- relabeling --------------------------------------------------------------

def relabel(foam: FoamPresentation, rnd: random.Random) -> FoamPresentation:
    fids = [f.id for f in foam.facets]
    new = [f"F{k}" for k in range(len(fids))]
    rnd.shuffle(new)
    fmap = dict(zip(fids, new))
    smap = {s.id: f"S{k}" for k, s in enumerate(foam.seams)}
    facets = [Facet(fmap[f.id], f.chi, f.dots) for f in foam.facets]
    rnd.shuffle(facets)
    seams = [Seam(smap[s.id], tuple(fmap[g] for g in s.germs), s.ends) for s in foam.seams]
    rnd.shuffle(seams)
    points = [SingularPoint(p.id, p.link, {e: fmap[f] for e, f in p.edge_to_facet.items()},
                            p.adornment,
                            None if p.vertex_to_seam is None
                            else {v: smap[s] for v, s in p.vertex_to_seam.items()})
              for p in foam.singular]
    return FoamPresentation(tuple(facets), tuple(seams), tuple(points), foam.name)


@pytest.mark.parametrize("seed", range(6))
def test_relabeling_invariance(seed):
    rnd = random.Random(seed)
    for foam in (cone_over("k4", 0, {"e01": 2, "e13": 1})[1], build_theta_foam(0, 2, 1),
                 square_foam()):
        mode = "raw" if foam.name == "square-foam" else "homogeneous"
        a, b = evaluate(foam, mode=mode), evaluate(relabel(foam, rnd), mode=mode)
        assert a.raw == b.raw and a.value == b.value


# -- builtins and serialization ---------------------------------------------

@pytest.mark.parametrize("name", builtin_foam_names())
def test_foam_json_round_trip(name):
    foam = builtin_foam(name)
    text = dump_foam(foam)
    again = load_foam(text)
    assert dump_foam(again) == text
    if name not in ("cube-cone", "square-foam"):
        assert evaluate(again).value == evaluate(foam).value

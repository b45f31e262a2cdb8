import itertools

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from foamlab.gf2 import (
    FACTORS, PHI_0, PHI_E, IDENTITY, BaseChange, Gf2Fraction, Gf2Poly, NotSymmetricError,
    SymPoly, apply_base_change, epoly_compose, epoly_divmod, epoly_mul, epoly_render,
    fraction_sum, symmetrize, to_symmetric,
)

X1, X2, X3 = sympy.symbols("X1 X2 X3")
GENS = (X1, X2, X3)


def P(*monomials):
    return Gf2Poly.from_terms(monomials)


def to_sympy(p: Gf2Poly) -> sympy.Poly:
    """Integer polynomial with the same monomials (coefficients 1)."""
    expr = sum((X1 ** a * X2 ** b * X3 ** c for a, b, c in p.terms), sympy.Integer(0))
    return sympy.Poly(expr, *GENS, domain="ZZ")


def mod2(q: sympy.Poly) -> Gf2Poly:
    return Gf2Poly.from_terms(m for m, c in q.terms() if int(c) % 2)


monomials = st.tuples(*[st.integers(0, 3)] * 3)
polys = st.frozensets(monomials, max_size=6).map(Gf2Poly)


# -- polynomial arithmetic ---------------------------------------------------

def test_char_two_cancellation():
    s = Gf2Poly.linear(1, 2)
    assert not (s + s)


def test_product_of_linear_factors():
    prod = Gf2Poly.linear(1, 2) * Gf2Poly.linear(1, 3) * Gf2Poly.linear(2, 3)
    assert prod == P((2, 1, 0), (2, 0, 1), (1, 2, 0), (1, 0, 2), (0, 2, 1), (0, 1, 2))


@given(polys)
def test_multiplicative_identity(p):
    assert p * Gf2Poly.one() == p


@settings(max_examples=80)
@given(polys, polys)
def test_arithmetic_against_sympy(p, q):
    assert p + q == mod2(to_sympy(p) + to_sympy(q))
    assert p * q == mod2(to_sympy(p) * to_sympy(q))


@settings(max_examples=80)
@given(polys, st.sampled_from(FACTORS))
def test_divmod_linear(p, ij):
    i, j = ij
    q, r = p.divmod_linear(i, j)
    assert q * Gf2Poly.linear(i + 1, j + 1) + r == p
    # remainder is free of X_{i+1}
    assert all(m[i] == 0 for m in r.terms)


def test_render_is_graded_lex():
    assert P((0, 0, 0), (2, 1, 0), (0, 0, 1)).render() == "X1^2*X2 + X3 + 1"
    assert Gf2Poly().render() == "0"


def test_degrees_count_two_per_variable():
    assert P((1, 1, 0)).degrees() == {4}
    assert P((1, 0, 0), (0, 0, 0)).degrees() == {2, 0}


# -- fractions ---------------------------------------------------------------

def test_circle_colorings_sum_to_zero():
    # sum over i of 1/((Xi+Xj)(Xi+Xk))
    terms = [Gf2Fraction.make(Gf2Poly.one(), (1, 1, 0)),
             Gf2Fraction.make(Gf2Poly.one(), (1, 0, 1)),
             Gf2Fraction.make(Gf2Poly.one(), (0, 1, 1))]
    assert fraction_sum(terms) == Gf2Fraction(Gf2Poly())


def test_two_dot_sphere_sum_is_one():
    terms = [Gf2Fraction.make(P((2, 0, 0)), (1, 1, 0)),
             Gf2Fraction.make(P((0, 2, 0)), (1, 0, 1)),
             Gf2Fraction.make(P((0, 0, 2)), (0, 1, 1))]
    assert fraction_sum(terms) == Gf2Fraction(Gf2Poly.one())


def test_single_reduced_fraction_is_fixed():
    f = Gf2Fraction.make(P((1, 0, 0)), (1, 0, 0))
    assert fraction_sum([f]) == f and f.reduced() == f


def test_reduction_cancels_factor():
    num = Gf2Poly.linear(1, 2) * P((0, 0, 1))
    assert Gf2Fraction.make(num, (2, 0, 0)) == Gf2Fraction(P((0, 0, 1)), (1, 0, 0))


fractions = st.builds(lambda p, d: Gf2Fraction(p, d), polys,
                      st.tuples(*[st.integers(0, 2)] * 3))


def _cross_value(f: Gf2Fraction) -> sympy.Expr:
    den = sympy.Integer(1)
    for k, (i, j) in enumerate(FACTORS):
        den *= (GENS[i] + GENS[j]) ** f.denominator[k]
    return to_sympy(f.numerator).as_expr(), den


@settings(max_examples=60, deadline=None)
@given(fractions)
def test_reduction_confluent_and_equivalent(f):
    r = f.reduced()
    assert r.reduced() == r
    # same element of the fraction field: a/b == c/d iff a*d == b*c mod 2
    a, b = _cross_value(f)
    c, d = _cross_value(r)
    assert not mod2(sympy.Poly(a * d - b * c, *GENS, domain="ZZ"))


@settings(max_examples=40, deadline=None)
@given(st.lists(fractions, min_size=1, max_size=4), st.randoms())
def test_sum_order_independent(fs, rnd):
    shuffled = list(fs)
    rnd.shuffle(shuffled)
    assert fraction_sum(fs) == fraction_sum(shuffled)


def test_fraction_render():
    f = Gf2Fraction.make(Gf2Poly.one(), (1, 1, 1))
    assert f.render() == "(1)/((X1+X2)*(X1+X3)*(X2+X3))"


# -- symmetric rewriting -----------------------------------------------------

def test_elementary_rewrites():
    assert to_symmetric(P((1, 0, 0), (0, 1, 0), (0, 0, 1))) == SymPoly.e(1)
    assert to_symmetric(P((1, 1, 1))) == SymPoly.e(3)


def _weighted_e_monomials(total):
    return [(a, b, c) for a in range(total + 1) for b in range(total + 1) for c in range(total + 1)
            if a + 2 * b + 3 * c == total]


def brute_force_symmetric(p: Gf2Poly) -> SymPoly:
    """Solve for E-coefficients over GF(2) by exhausting the (tiny) solution space."""
    (deg,) = {sum(m) for m in p.terms}
    basis = _weighted_e_monomials(deg)
    images = [SymPoly(frozenset({m})).expand() for m in basis]
    cols = sorted({m for img in images for m in img.terms} | set(p.terms))
    mat = sympy.Matrix([[1 if m in img.terms else 0 for img in images] for m in cols])
    rhs = sympy.Matrix([1 if m in p.terms else 0 for m in cols])
    for coeffs in itertools.product((0, 1), repeat=len(basis)):
        v = sympy.Matrix(coeffs)
        if all(x % 2 == 0 for x in (mat * v - rhs)):
            return SymPoly(frozenset(m for m, c in zip(basis, coeffs) if c))
    raise AssertionError("no solution")


def test_symmetrized_012():
    p = symmetrize((0, 1, 2))
    expected = SymPoly.e(1) * SymPoly.e(2) + SymPoly.e(3)
    assert to_symmetric(p) == expected == brute_force_symmetric(p)


@pytest.mark.parametrize("m", [(0, 0, 1), (0, 1, 1), (0, 0, 2), (1, 1, 2), (0, 1, 3), (0, 2, 2)])
def test_symmetrized_monomials_against_oracle(m):
    p = symmetrize(m)
    assert to_symmetric(p) == brute_force_symmetric(p)


sympolys = st.frozensets(st.tuples(*[st.integers(0, 2)] * 3), max_size=5).map(SymPoly)


@settings(max_examples=60, deadline=None)
@given(sympolys)
def test_rewrite_round_trip(s):
    assert to_symmetric(s.expand()) == s
    assert s.expand().is_symmetric()


def test_non_symmetric_raises():
    with pytest.raises(NotSymmetricError):
        to_symmetric(P((1, 0, 0)))


def test_sympoly_degrees_and_render():
    s = SymPoly.e(1) * SymPoly.e(1) * SymPoly.e(1) + SymPoly.e(3)
    assert s.render() == "E1^3 + E3"
    assert s.degrees() == {6} and s.is_homogeneous()


# -- GF(2)[E] and base changes ----------------------------------------------

E = 0b10


@settings(max_examples=60)
@given(st.integers(0, 2 ** 10), st.integers(1, 2 ** 6))
def test_epoly_divmod(a, b):
    q, r = epoly_divmod(a, b)
    assert epoly_mul(q, b) ^ r == a
    assert r == 0 or r.bit_length() < b.bit_length()


def test_epoly_compose_and_render():
    assert epoly_compose(0b101, 0) == 1          # E^2 + 1 at E = 0
    assert epoly_compose(0b101, 1) == 0          # 1 + 1
    assert epoly_compose(0b10, 0b100) == 0b100   # E -> E^2
    assert epoly_render(0b101) == "E^2 + 1"


def test_phi_E():
    s = SymPoly.e(3) * SymPoly.e(3) + SymPoly.e(1) * SymPoly.e(2)
    assert apply_base_change(s, PHI_E) == epoly_mul(E, E)


def test_phi_0():
    assert apply_base_change(SymPoly.one() + SymPoly.e(1), PHI_0) == 1
    assert apply_base_change(SymPoly.e(2), PHI_0) == 0


def test_identity_base_change():
    s = SymPoly.e(2)
    assert apply_base_change(s, IDENTITY) is s


def test_custom_base_change():
    psi = BaseChange("custom", (E, 0, 1))  # E1 -> E, E2 -> 0, E3 -> 1
    assert apply_base_change(SymPoly.e(1) * SymPoly.e(3), psi) == E
    assert apply_base_change(SymPoly.e(2), psi) == 0


@pytest.mark.parametrize("text,kind", [("id", "identity"), ("E", "phiE"), ("0", "phi0")])
def test_parse_base_change(text, kind):
    assert BaseChange.parse(text).kind == kind


def test_parse_base_change_rejects():
    with pytest.raises(ValueError):
        BaseChange.parse("E2")

"""Exact arithmetic in characteristic two.

Polynomials in X1, X2, X3 are sets of exponent triples (every coefficient is
1), fractions only ever have the three linear factors ``Xi + Xj`` in the
denominator, symmetric polynomials are rewritten in the elementary basis
E1, E2, E3.  Univariate polynomials over GF(2) in E are plain Python ints
used as bit vectors (bit ``k`` is the coefficient of ``E**k``).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from typing import Iterable

Monomial = tuple[int, int, int]

# index of the factor (Xi + Xj) in a denominator exponent triple
FACTORS = ((0, 1), (0, 2), (1, 2))


class NotSymmetricError(ValueError):
    """Raised when a polynomial expected to be symmetric is not."""


def _glex_key(m: Monomial):
    return (sum(m), m)


@dataclass(frozen=True)
class Gf2Poly:
    """Polynomial over GF(2) in X1, X2, X3; X_i has degree 2."""

    terms: frozenset = frozenset()

    @classmethod
    def from_terms(cls, terms: Iterable[Monomial]) -> "Gf2Poly":
        acc: set = set()
        for t in terms:
            acc ^= {tuple(t)}
        return cls(frozenset(acc))

    @classmethod
    def one(cls) -> "Gf2Poly":
        return cls(frozenset({(0, 0, 0)}))

    @classmethod
    def var(cls, i: int) -> "Gf2Poly":
        """X_i for i in 1..3."""
        m = [0, 0, 0]
        m[i - 1] = 1
        return cls(frozenset({tuple(m)}))

    @classmethod
    def linear(cls, i: int, j: int) -> "Gf2Poly":
        return cls.var(i) + cls.var(j)

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other: "Gf2Poly") -> "Gf2Poly":
        return Gf2Poly(self.terms ^ other.terms)

    __sub__ = __add__

    def __mul__(self, other: "Gf2Poly") -> "Gf2Poly":
        acc: set = set()
        for a in self.terms:
            for b in other.terms:
                acc ^= {(a[0] + b[0], a[1] + b[1], a[2] + b[2])}
        return Gf2Poly(frozenset(acc))

    def __pow__(self, n: int) -> "Gf2Poly":
        if n < 0:
            raise ValueError("negative power")
        out, base = Gf2Poly.one(), self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def degrees(self) -> set[int]:
        """Set of (grading) degrees of the monomials, 2 per variable."""
        return {2 * sum(m) for m in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def permute(self, perm: tuple[int, int, int]) -> "Gf2Poly":
        """Substitute X_{k+1} -> X_{perm[k]+1}."""
        out = set()
        for m in self.terms:
            n = [0, 0, 0]
            for k in range(3):
                n[perm[k]] = m[k]
            out.add(tuple(n))
        return Gf2Poly(frozenset(out))

    def is_symmetric(self) -> bool:
        return all(self.permute(p) == self for p in ((1, 0, 2), (0, 2, 1)))

    def divmod_linear(self, i: int, j: int) -> tuple["Gf2Poly", "Gf2Poly"]:
        """Divide by (X_{i+1} + X_{j+1}), 0-based indices, monic in X_{i+1}."""
        rem = set(self.terms)
        quo: set = set()
        while True:
            top = [m for m in rem if m[i] > 0]
            if not top:
                break
            m = max(top, key=lambda t: (t[i], t))
            q = list(m)
            q[i] -= 1
            q = tuple(q)
            quo ^= {q}
            shifted = list(q)
            shifted[j] += 1
            rem ^= {m}
            rem ^= {tuple(shifted)}
        return Gf2Poly(frozenset(quo)), Gf2Poly(frozenset(rem))

    def render(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=_glex_key, reverse=True):
            parts.append(_render_monomial(m, "X"))
        return " + ".join(parts)

    def __str__(self):
        return self.render()


def _render_monomial(m, letter: str) -> str:
    factors = []
    for k, a in enumerate(m):
        if a == 1:
            factors.append(f"{letter}{k + 1}")
        elif a > 1:
            factors.append(f"{letter}{k + 1}^{a}")
    return "*".join(factors) if factors else "1"


def X(i: int) -> Gf2Poly:
    return Gf2Poly.var(i)


@dataclass(frozen=True)
class Gf2Fraction:
    """numerator / ((X1+X2)^n12 (X1+X3)^n13 (X2+X3)^n23), kept reduced."""

    numerator: Gf2Poly
    denominator: tuple[int, int, int] = (0, 0, 0)

    @classmethod
    def make(cls, numerator: Gf2Poly, denominator=(0, 0, 0)) -> "Gf2Fraction":
        return cls(numerator, tuple(denominator)).reduced()

    @classmethod
    def from_exponents(cls, numerator: Gf2Poly, exponents) -> "Gf2Fraction":
        """numerator * prod (Xi+Xj)^(-e) for signed exponents ``e``."""
        num = numerator
        den = [0, 0, 0]
        for k, e in enumerate(exponents):
            i, j = FACTORS[k]
            if e < 0:
                num = num * Gf2Poly.linear(i + 1, j + 1) ** (-e)
            else:
                den[k] = e
        return cls.make(num, den)

    def reduced(self) -> "Gf2Fraction":
        num = self.numerator
        den = list(self.denominator)
        if not num:
            return Gf2Fraction(num, (0, 0, 0))
        for k, (i, j) in enumerate(FACTORS):
            while den[k] > 0:
                q, r = num.divmod_linear(i, j)
                if r:
                    break
                num = q
                den[k] -= 1
        return Gf2Fraction(num, tuple(den))

    def is_polynomial(self) -> bool:
        return self.denominator == (0, 0, 0)

    def __add__(self, other: "Gf2Fraction") -> "Gf2Fraction":
        return fraction_sum([self, other])

    def render(self) -> str:
        num = self.numerator.render()
        if self.is_polynomial():
            return num
        dens = []
        for k, e in enumerate(self.denominator):
            if e:
                i, j = FACTORS[k]
                base = f"(X{i + 1}+X{j + 1})"
                dens.append(base if e == 1 else f"{base}^{e}")
        return f"({num})/({'*'.join(dens)})"

    def __str__(self):
        return self.render()


def fraction_sum(fractions: Iterable[Gf2Fraction]) -> Gf2Fraction:
    """Common-denominator sum, reduced."""
    fractions = list(fractions)
    if not fractions:
        return Gf2Fraction(Gf2Poly())
    common = [max(f.denominator[k] for f in fractions) for k in range(3)]
    total: set = set()
    for f in fractions:
        num = f.numerator
        for k, (i, j) in enumerate(FACTORS):
            extra = common[k] - f.denominator[k]
            if extra:
                num = num * Gf2Poly.linear(i + 1, j + 1) ** extra
        total ^= num.terms
    return Gf2Fraction.make(Gf2Poly(frozenset(total)), common)


# -- symmetric polynomials ---------------------------------------------------

@dataclass(frozen=True)
class SymPoly:
    """Polynomial in E1, E2, E3 over GF(2) (degrees 2, 4, 6)."""

    terms: frozenset = frozenset()

    @classmethod
    def one(cls) -> "SymPoly":
        return cls(frozenset({(0, 0, 0)}))

    @classmethod
    def e(cls, i: int) -> "SymPoly":
        m = [0, 0, 0]
        m[i - 1] = 1
        return cls(frozenset({tuple(m)}))

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other: "SymPoly") -> "SymPoly":
        return SymPoly(self.terms ^ other.terms)

    def __mul__(self, other: "SymPoly") -> "SymPoly":
        acc: set = set()
        for a in self.terms:
            for b in other.terms:
                acc ^= {(a[0] + b[0], a[1] + b[1], a[2] + b[2])}
        return SymPoly(frozenset(acc))

    def degrees(self) -> set[int]:
        return {2 * b1 + 4 * b2 + 6 * b3 for b1, b2, b3 in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def expand(self) -> Gf2Poly:
        acc: set = set()
        for m in self.terms:
            acc ^= _expand_monomial(m).terms
        return Gf2Poly(frozenset(acc))

    def render(self) -> str:
        if not self.terms:
            return "0"
        key = lambda m: (2 * m[0] + 4 * m[1] + 6 * m[2], m)
        return " + ".join(_render_monomial(m, "E")
                          for m in sorted(self.terms, key=key, reverse=True))

    def __str__(self):
        return self.render()


_ELEMENTARY = (
    Gf2Poly.from_terms([(1, 0, 0), (0, 1, 0), (0, 0, 1)]),
    Gf2Poly.from_terms([(1, 1, 0), (1, 0, 1), (0, 1, 1)]),
    Gf2Poly.from_terms([(1, 1, 1)]),
)


@lru_cache(maxsize=None)
def _expand_monomial(m: Monomial) -> Gf2Poly:
    out = Gf2Poly.one()
    for k, a in enumerate(m):
        out = out * _ELEMENTARY[k] ** a
    return out


def to_symmetric(p: Gf2Poly) -> SymPoly:
    """Rewrite a symmetric polynomial in E1, E2, E3.

    Leading-term reduction in lex order: the leading monomial
    X1^a X2^b X3^c of a symmetric polynomial has a >= b >= c and is the
    leading monomial of E1^(a-b) E2^(b-c) E3^c.
    """
    if not p.is_symmetric():
        raise NotSymmetricError(f"not symmetric: {p.render()}")
    rem = set(p.terms)
    out: set = set()
    while rem:
        a, b, c = max(rem)
        m = (a - b, b - c, c)
        out ^= {m}
        rem ^= _expand_monomial(m).terms
    return SymPoly(frozenset(out))


def symmetrize(m: Monomial) -> Gf2Poly:
    """Sum of the distinct permutations of a monomial's exponents."""
    return Gf2Poly(frozenset(set(permutations(m))))


# -- GF(2)[E] as int bit vectors ---------------------------------------------

E_DEGREE = 6


def epoly_mul(a: int, b: int) -> int:
    out = 0
    while b:
        if b & 1:
            out ^= a
        a <<= 1
        b >>= 1
    return out


def epoly_divmod(a: int, b: int) -> tuple[int, int]:
    if b == 0:
        raise ZeroDivisionError("division by zero polynomial")
    q = 0
    db = b.bit_length()
    while a and a.bit_length() >= db:
        shift = a.bit_length() - db
        q ^= 1 << shift
        a ^= b << shift
    return q, a


def epoly_degree(a: int) -> int:
    """Degree in E (-1 for zero)."""
    return a.bit_length() - 1


def epoly_compose(a: int, g: int) -> int:
    """a(g(E)) by Horner's rule."""
    out = 0
    for k in range(a.bit_length() - 1, -1, -1):
        out = epoly_mul(out, g) ^ ((a >> k) & 1)
    return out


def epoly_render(a: int, var: str = "E") -> str:
    if a == 0:
        return "0"
    parts = []
    for k in range(a.bit_length() - 1, -1, -1):
        if (a >> k) & 1:
            parts.append("1" if k == 0 else var if k == 1 else f"{var}^{k}")
    return " + ".join(parts)


# -- base change -------------------------------------------------------------

@dataclass(frozen=True)
class BaseChange:
    """Ring map out of R = GF(2)[E1,E2,E3].

    ``identity`` keeps SymPoly values, ``phiE`` lands in GF(2)[E]
    (E1, E2 -> 0, E3 -> E), ``phi0`` in GF(2).  ``custom`` sends E_k to the
    GF(2)[E] element ``images[k-1]``.
    """

    kind: str = "identity"
    images: tuple[int, int, int] | None = None

    def __post_init__(self):
        if self.kind not in ("identity", "phiE", "phi0", "custom"):
            raise ValueError(f"unknown base change {self.kind!r}")
        if self.kind == "custom" and (self.images is None or len(self.images) != 3):
            raise ValueError("custom base change needs three images")

    @property
    def target(self) -> str:
        return {"identity": "R", "phiE": "E", "phi0": "k", "custom": "E"}[self.kind]

    @property
    def label(self) -> str:
        return {"identity": "id", "phiE": "E", "phi0": "0"}.get(self.kind, "custom")

    @classmethod
    def parse(cls, text: str) -> "BaseChange":
        key = {"id": "identity", "identity": "identity", "E": "phiE", "phiE": "phiE",
               "0": "phi0", "phi0": "phi0"}.get(text)
        if key is None:
            raise ValueError(f"unknown base change {text!r}")
        return cls(key)


IDENTITY = BaseChange("identity")
PHI_E = BaseChange("phiE")
PHI_0 = BaseChange("phi0")


def apply_base_change(s: SymPoly, phi: BaseChange):
    if phi.kind == "identity":
        return s
    if phi.kind == "phi0":
        return 1 if (0, 0, 0) in s.terms else 0
    images = (0, 0, 0b10) if phi.kind == "phiE" else phi.images
    out = 0
    for m in s.terms:
        term = 1
        for k, a in enumerate(m):
            for _ in range(a):
                term = epoly_mul(term, images[k])
        out ^= term
    return out


def render_element(x, target: str) -> str:
    if target == "R":
        return x.render()
    if target == "E":
        return epoly_render(x)
    return str(x)

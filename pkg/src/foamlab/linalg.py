"""Graded matrices over R, GF(2)[E] and GF(2); ranks and Smith normal form."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence

from .gf2 import (
    E_DEGREE, BaseChange, SymPoly, apply_base_change, epoly_compose,
    epoly_degree, epoly_divmod, epoly_mul,
)


class InvalidMatrixError(ValueError):
    """Entries violate the row/column degree contract."""


@dataclass(frozen=True)
class Laurent:
    """Laurent polynomial in q with integer coefficients."""

    coeffs: tuple[tuple[int, int], ...] = ()

    @classmethod
    def from_degrees(cls, degrees) -> "Laurent":
        return cls.from_dict(Counter(degrees))

    @classmethod
    def from_dict(cls, d) -> "Laurent":
        return cls(tuple(sorted((k, v) for k, v in d.items() if v)))

    def as_dict(self) -> dict[int, int]:
        return dict(self.coeffs)

    def __add__(self, other):
        d = Counter(self.as_dict())
        d.update(other.as_dict())
        return Laurent.from_dict(d)

    def __mul__(self, other):
        if isinstance(other, int):
            return Laurent.from_dict({k: v * other for k, v in self.coeffs})
        d: Counter = Counter()
        for a, x in self.coeffs:
            for b, y in other.coeffs:
                d[a + b] += x * y
        return Laurent.from_dict(d)

    __rmul__ = __mul__

    def shift(self, s: int) -> "Laurent":
        return Laurent(tuple((k + s, v) for k, v in self.coeffs))

    def centered(self) -> "Laurent":
        """Shift so that the lowest and highest exponents are opposite.

        When min + max is odd the shift rounds towards -infinity.
        """
        if not self.coeffs:
            return self
        lo, hi = self.coeffs[0][0], self.coeffs[-1][0]
        return self.shift(-((lo + hi) // 2))

    def render(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k, v in reversed(self.coeffs):
            mono = "1" if k == 0 else "q" if k == 1 else f"q^{k}"
            if mono == "1":
                parts.append(str(v))
            else:
                parts.append(mono if v == 1 else f"{v}{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __str__(self):
        return self.render()


def quantum_integer(n: int) -> Laurent:
    """[n] = q^(n-1) + q^(n-3) + ... + q^(1-n)."""
    return Laurent.from_degrees(range(1 - n, n, 2))


# -- ring helpers ------------------------------------------------------------

def _is_zero(x, ring: str) -> bool:
    if ring == "R":
        return not x.terms
    return x == 0


def element_degrees(x, ring: str) -> set[int]:
    if ring == "R":
        return x.degrees()
    if ring == "E":
        return {E_DEGREE * k for k in range(x.bit_length()) if (x >> k) & 1}
    return {0} if x else set()


@dataclass(frozen=True)
class GradedMatrix:
    """Matrix whose nonzero entry (r, c) is homogeneous of degree
    ``row_degrees[r] + col_degrees[c]``.

    ``ring`` is ``"R"`` (SymPoly entries), ``"E"`` (GF(2)[E] as int bit
    vectors) or ``"k"`` (0/1).
    """

    entries: tuple[tuple, ...]
    row_degrees: tuple[int, ...]
    col_degrees: tuple[int, ...]
    ring: str = "k"
    _checked: bool = field(default=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(tuple(r) for r in self.entries))
        object.__setattr__(self, "row_degrees", tuple(self.row_degrees))
        object.__setattr__(self, "col_degrees", tuple(self.col_degrees))
        if self.ring not in ("R", "E", "k"):
            raise InvalidMatrixError(f"unknown ring {self.ring!r}")
        if len(self.entries) != len(self.row_degrees):
            raise InvalidMatrixError("row count does not match row degrees")
        for row in self.entries:
            if len(row) != len(self.col_degrees):
                raise InvalidMatrixError("column count does not match column degrees")

    @classmethod
    def ungraded(cls, entries: Sequence[Sequence], ring: str = "k") -> "GradedMatrix":
        """All-degree-zero wrapper; only valid for scalar-like entries."""
        entries = [list(r) for r in entries]
        ncols = len(entries[0]) if entries else 0
        return cls(entries, [0] * len(entries), [0] * ncols, ring)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.row_degrees), len(self.col_degrees)

    def check_degrees(self) -> None:
        for r, row in enumerate(self.entries):
            for c, x in enumerate(row):
                if _is_zero(x, self.ring):
                    continue
                want = self.row_degrees[r] + self.col_degrees[c]
                if element_degrees(x, self.ring) != {want}:
                    raise InvalidMatrixError(
                        f"entry ({r},{c}) is not homogeneous of degree {want}")

    def base_change(self, phi: BaseChange) -> "GradedMatrix":
        if self.ring != "R":
            raise InvalidMatrixError("base change applies to matrices over R")
        entries = [[apply_base_change(x, phi) for x in row] for row in self.entries]
        return GradedMatrix(entries, self.row_degrees, self.col_degrees, phi.target)

    def specialize(self, g: int, target: str = "E") -> "GradedMatrix":
        """Substitute E -> g(E) in a matrix over GF(2)[E].

        With ``target="k"`` the image must be a constant (g in {0, 1}) and
        degrees are no longer tracked.
        """
        if self.ring != "E":
            raise InvalidMatrixError("specialize applies to matrices over GF(2)[E]")
        entries = [[epoly_compose(x, g) for x in row] for row in self.entries]
        if target == "k":
            if g not in (0, 1):
                raise ValueError("a GF(2)-valued specialization sends E to 0 or 1")
            return GradedMatrix.ungraded(entries, "k") if entries else self
        return GradedMatrix(entries, self.row_degrees, self.col_degrees, "E")

    def submatrix(self, rows, cols) -> "GradedMatrix":
        return GradedMatrix(
            [[self.entries[r][c] for c in cols] for r in rows],
            [self.row_degrees[r] for r in rows],
            [self.col_degrees[c] for c in cols],
            self.ring,
        )

    def is_identity(self) -> bool:
        n, m = self.shape
        if n != m:
            return False
        one = SymPoly.one() if self.ring == "R" else 1
        zero = SymPoly() if self.ring == "R" else 0
        return all(self.entries[r][c] == (one if r == c else zero)
                   for r in range(n) for c in range(m))


# -- GF(2) -------------------------------------------------------------------

def gf2_row_reduce(rows: Sequence[Sequence[int]]) -> list[int]:
    """Pivot columns of a 0/1 matrix by Gaussian elimination."""
    packed = [sum(1 << c for c, x in enumerate(r) if x & 1) for r in rows]
    ncols = len(rows[0]) if rows else 0
    pivots = []
    work = packed[:]
    rank = 0
    for c in range(ncols):
        bit = 1 << c
        piv = next((k for k in range(rank, len(work)) if work[k] & bit), None)
        if piv is None:
            continue
        work[rank], work[piv] = work[piv], work[rank]
        for k in range(len(work)):
            if k != rank and work[k] & bit:
                work[k] ^= work[rank]
        pivots.append(c)
        rank += 1
    return pivots


# -- GF(2)[E] ----------------------------------------------------------------

def smith_normal_form(rows: Sequence[Sequence[int]]) -> list[int]:
    """Invariant factors of a matrix over GF(2)[E].

    Pivots on an entry of minimal degree, clears its row and column with
    Euclidean division and repeats until the pivot divides everything in
    the remaining block.  Returns the nonzero diagonal, each dividing the
    next.
    """
    a = [list(r) for r in rows]
    n = len(a)
    m = len(a[0]) if a else 0
    factors = []
    t = 0
    while t < min(n, m):
        nonzero = [(epoly_degree(a[i][j]), i, j) for i in range(t, n)
                   for j in range(t, m) if a[i][j]]
        if not nonzero:
            break
        _, pi, pj = min(nonzero)
        a[t], a[pi] = a[pi], a[t]
        for row in a:
            row[t], row[pj] = row[pj], row[t]
        while True:
            done = True
            p = a[t][t]
            for i in range(t + 1, n):
                if a[i][t]:
                    q, r = epoly_divmod(a[i][t], p)
                    a[i] = [x ^ epoly_mul(q, y) for x, y in zip(a[i], a[t])]
                    if r:
                        done = False
            for j in range(t + 1, m):
                if a[t][j]:
                    q, r = epoly_divmod(a[t][j], p)
                    for row in a:
                        row[j] ^= epoly_mul(q, row[t])
                    if r:
                        done = False
            if not done:
                # a smaller remainder appeared in row/column t: re-pivot on it
                cand = [(epoly_degree(a[i][t]), i, t) for i in range(t, n) if a[i][t]]
                cand += [(epoly_degree(a[t][j]), t, j) for j in range(t, m) if a[t][j]]
                _, pi, pj = min(cand)
                a[t], a[pi] = a[pi], a[t]
                for row in a:
                    row[t], row[pj] = row[pj], row[t]
                continue
            p = a[t][t]
            bad = next(((i, j) for i in range(t + 1, n) for j in range(t + 1, m)
                        if epoly_divmod(a[i][j], p)[1]), None)
            if bad is None:
                break
            # fold the offending row into row t and restart the clearing
            i, _ = bad
            a[t] = [x ^ y for x, y in zip(a[t], a[i])]
        factors.append(a[t][t])
        t += 1
    return factors


def epoly_pivot_columns(rows: Sequence[Sequence[int]]) -> list[int]:
    """Pivot columns over the fraction field GF(2)(E), fraction-free."""
    work = [list(r) for r in rows]
    ncols = len(work[0]) if work else 0
    pivots = []
    rank = 0
    for c in range(ncols):
        piv = next((k for k in range(rank, len(work)) if work[k][c]), None)
        if piv is None:
            continue
        work[rank], work[piv] = work[piv], work[rank]
        p = work[rank][c]
        for k in range(len(work)):
            if k != rank and work[k][c]:
                f = work[k][c]
                work[k] = [epoly_mul(p, x) ^ epoly_mul(f, y)
                           for x, y in zip(work[k], work[rank])]
        pivots.append(c)
        rank += 1
    return pivots


# -- R ----------------------------------------------------------------------

def sympoly_pivot_columns(rows: Sequence[Sequence[SymPoly]]) -> list[int]:
    """Pivot columns over Frac(R) by fraction-free elimination.

    Entries grow; this is intended for the small Gram matrices in scope.
    """
    work = [list(r) for r in rows]
    ncols = len(work[0]) if work else 0
    pivots = []
    rank = 0
    for c in range(ncols):
        piv = next((k for k in range(rank, len(work)) if work[k][c]), None)
        if piv is None:
            continue
        work[rank], work[piv] = work[piv], work[rank]
        p = work[rank][c]
        for k in range(len(work)):
            if k != rank and work[k][c]:
                f = work[k][c]
                if p == SymPoly.one():
                    work[k] = [x + f * y for x, y in zip(work[k], work[rank])]
                else:
                    work[k] = [p * x + f * y for x, y in zip(work[k], work[rank])]
        pivots.append(c)
        rank += 1
    return pivots


@dataclass(frozen=True)
class RankReport:
    rank: int
    pivot_columns: tuple[int, ...]
    graded_rank: Laurent
    graded_rank_centered: Laurent
    degree_multiset: tuple[int, ...]
    invariant_factors: tuple | None
    unimodular: bool


def _pivots(m: GradedMatrix) -> list[int]:
    rows = [list(r) for r in m.entries]
    if m.ring == "k":
        return gf2_row_reduce(rows)
    if m.ring == "E":
        return epoly_pivot_columns(rows)
    return sympoly_pivot_columns(rows)


def is_unit_determinant(m: GradedMatrix) -> bool:
    """Whether a square graded matrix is invertible over its ring.

    Over GF(2)[E] this reads off the Smith form.  Over R the determinant is
    homogeneous of degree sum(row) + sum(col); a nonzero unit needs degree
    zero, and then only degree-zero (scalar) entries can contribute, so the
    determinant equals the GF(2) determinant of the constant parts.
    """
    n, k = m.shape
    if n != k:
        return False
    if n == 0:
        return True
    if m.ring == "k":
        return len(gf2_row_reduce(m.entries)) == n
    if m.ring == "E":
        f = smith_normal_form(m.entries)
        return len(f) == n and all(x == 1 for x in f)
    m.check_degrees()
    if sum(m.row_degrees) + sum(m.col_degrees) != 0:
        return False
    consts = [[1 if (0, 0, 0) in x.terms else 0 for x in row] for row in m.entries]
    return len(gf2_row_reduce(consts)) == n


def graded_rank(m: GradedMatrix, phi: BaseChange | None = None,
                check: bool = True) -> RankReport:
    """Rank, graded rank (over pivot columns) and invariant factors.

    ``phi`` is applied first when given (the matrix must then be over R).
    """
    if phi is not None and phi.kind != "identity":
        m = m.base_change(phi)
    if check:
        m.check_degrees()
    pivots = _pivots(m)
    degrees = tuple(sorted((m.col_degrees[c] for c in pivots), reverse=True))
    factors = None
    if m.ring == "E":
        factors = tuple(smith_normal_form(m.entries))
        unimodular = len(factors) == min(m.shape) == m.shape[0] == m.shape[1] \
            and all(f == 1 for f in factors)
    elif m.ring == "k":
        factors = tuple(1 for _ in pivots)
        unimodular = m.shape[0] == m.shape[1] == len(pivots)
    else:
        unimodular = is_unit_determinant(m)
    gr = Laurent.from_degrees(degrees)
    return RankReport(
        rank=len(pivots),
        pivot_columns=tuple(pivots),
        graded_rank=gr,
        graded_rank_centered=gr.centered(),
        degree_multiset=degrees,
        invariant_factors=factors,
        unimodular=unimodular,
    )


def quotient_by_kernel(m: GradedMatrix, phi: BaseChange | None = None) -> list[int]:
    """Greedy maximal index set whose principal Gram submatrix is invertible.

    Indices are tried in column order; an index is kept when the principal
    submatrix on the kept indices stays invertible over the target ring.
    """
    if phi is not None and phi.kind != "identity":
        m = m.base_change(phi)
    n, k = m.shape
    if n != k:
        raise InvalidMatrixError("Gram matrix must be square")
    kept: list[int] = []
    for i in range(n):
        trial = kept + [i]
        if is_unit_determinant(m.submatrix(trial, trial)):
            kept = trial
    return kept

"""State spaces from finite cup/cap families via the pairing of closed foams.

For a Kempe-small web with a chosen vertex v and legs e1, e2, e3, the cups
are the cones over the web adorned with each Kempe class and dotted on the
legs by one of six dot vectors; caps are the mirror cones with the dual dot
vectors.  Capping a cup gives a double cone, whose evaluation is a pairing
entry.  When that matrix is the identity the family is a basis of the state
space and the graded rank is read off the cup degrees.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Sequence

from .foams import build_double_cone, cone_degree, evaluate, foam_degree
from .gf2 import IDENTITY, BaseChange, SymPoly, apply_base_change, epoly_render
from .linalg import GradedMatrix, Laurent, RankReport, graded_rank, quotient_by_kernel
from .webs import PreconditionError, TaitColoring, Web, WebError, is_kempe_small, kempe_partition

# dot counts on (e1, e2, e3) for the cups
X_VECTORS = ((2, 1, 0), (2, 0, 0), (1, 1, 0), (1, 0, 0), (0, 1, 0), (0, 0, 0))
# single-term cap dot vectors
Y_PRIME = ((0, 0, 0), (0, 0, 1), (0, 1, 0), (0, 0, 2), (0, 1, 1), (0, 1, 2))
# cap dot vectors as formal sums of single terms
Y_VECTORS = (
    (Y_PRIME[0],),
    (Y_PRIME[1],),
    (Y_PRIME[1], Y_PRIME[2]),
    (Y_PRIME[3], Y_PRIME[4]),
    (Y_PRIME[4],),
    (Y_PRIME[5],),
)


@dataclass(frozen=True)
class Cup:
    kempe_class: int
    x_index: int
    degree: int


@dataclass(frozen=True)
class GeneratorFamily:
    web: Web
    vertex: str | None
    legs: tuple[str, ...]
    classes: tuple[TaitColoring, ...]
    cups: tuple[Cup, ...]
    y_vectors: tuple = Y_VECTORS

    @property
    def size(self) -> int:
        return len(self.cups)

    def cap_degree(self, j: int, i: int) -> int:
        (dots,) = {sum(t) for t in self.y_vectors[i]}
        return cone_degree(self.web, self.classes[j], dots)


def build_generator_family(web: Web, vertex: str | None = None,
                           y_vectors=Y_VECTORS) -> GeneratorFamily:
    """One cup per (Kempe class, x-vector); the empty web has a single empty cup."""
    if not web.edges:
        return GeneratorFamily(web, None, (), (), (Cup(0, 0, 0),), y_vectors)
    if not web.vertices:
        raise PreconditionError("a generator family needs a vertex to put dots near")
    if not is_kempe_small(web):
        raise PreconditionError("state-space bases are only built for Kempe-small webs")
    if vertex is None:
        vertex = web.vertex_ids[0]
    legs = web.incident(vertex)
    if vertex not in web.vertices or len(set(legs)) != 3:
        raise WebError(f"bad vertex {vertex!r}")
    for terms in y_vectors:
        if len({sum(t) for t in terms}) != 1:
            raise PreconditionError("cap dot vectors must be homogeneous")
    classes = tuple(cls[0] for cls in kempe_partition(web).classes)
    cups = tuple(Cup(j, i, cone_degree(web, classes[j], sum(X_VECTORS[i])))
                 for j in range(len(classes)) for i in range(len(X_VECTORS)))
    return GeneratorFamily(web, vertex, legs, classes, cups, tuple(y_vectors))


def _dots(legs, *vectors) -> dict[str, int]:
    out: dict[str, int] = {}
    for vec in vectors:
        for e, n in zip(legs, vec):
            if n:
                out[e] = out.get(e, 0) + n
    return out


def closed_pairing(fam: GeneratorFamily, cap: tuple[int, int], cup: tuple[int, int]) -> SymPoly:
    """Evaluation of cap (j, i) composed with cup (j', i'), over R."""
    if fam.vertex is None:
        return SymPoly.one()
    (j, i), (jj, ii) = cap, cup
    total = SymPoly()
    for term in fam.y_vectors[i]:
        foam = build_double_cone(fam.web, fam.classes[j], fam.classes[jj],
                                 _dots(fam.legs, term, X_VECTORS[ii]))
        total = total + evaluate(foam).value
    return total


def _entry_task(args):
    fam, cap, cup = args
    return closed_pairing(fam, cap, cup)


def _workers() -> int:
    try:
        return max(1, int(os.environ.get("FOAMLAB_THREADS", "1")))
    except ValueError:
        return 1


def _degree_shift(fam: GeneratorFamily) -> int:
    """Shift putting cup and cap degrees on the scale where a pairing entry
    has degree row + column."""
    if fam.vertex is None:
        return 0
    rep = fam.classes[0]
    closed = foam_degree(build_double_cone(fam.web, rep, rep))
    return (closed - 2 * cone_degree(fam.web, rep, 0)) // 2


@dataclass(frozen=True)
class PairingMatrix:
    """Gram matrix over R: rows are caps (j, i), columns cups (j', i')."""

    matrix: GradedMatrix
    rows: tuple[tuple[int, int], ...]
    cols: tuple[tuple[int, int], ...]
    evaluations: int

    def is_identity(self) -> bool:
        return self.matrix.is_identity()


def pairing_matrix(fam: GeneratorFamily, workers: int | None = None) -> PairingMatrix:
    """Evaluate every cap-cup composite (over R; base change afterwards)."""
    index = tuple((c.kempe_class, c.x_index) for c in fam.cups)
    tasks = [(fam, r, c) for r in index for c in index]
    workers = _workers() if workers is None else workers
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            values = list(pool.map(_entry_task, tasks, chunksize=max(1, len(tasks) // (4 * workers))))
    else:
        values = [_entry_task(t) for t in tasks]
    n = len(index)
    entries = [values[r * n:(r + 1) * n] for r in range(n)]
    shift = _degree_shift(fam)
    if fam.vertex is None:
        rowdeg = coldeg = [0]
    else:
        coldeg = [c.degree + shift for c in fam.cups]
        rowdeg = [fam.cap_degree(j, i) + shift for j, i in index]
    m = GradedMatrix(entries, rowdeg, coldeg, "R")
    return PairingMatrix(m, index, index, len(tasks))


@dataclass(frozen=True)
class StateSpaceReport:
    web: str
    phi: BaseChange
    rank: int
    graded_rank_raw: Laurent
    graded_rank_centered: Laurent
    basis: tuple[int, ...]
    invariant_factors: tuple | None
    pairing_is_identity: bool

    def to_doc(self) -> dict:
        factors = None
        if self.invariant_factors is not None:
            factors = [epoly_render(f) if self.phi.target == "E" else str(f)
                       for f in self.invariant_factors]
        return {
            "web": self.web,
            "phi": self.phi.label,
            "rank": self.rank,
            "gradedRankRaw": self.graded_rank_raw.render(),
            "gradedRankCentered": self.graded_rank_centered.render(),
            "pairingIsIdentity": self.pairing_is_identity,
            "invariantFactors": factors,
        }


def state_space(fam: GeneratorFamily, phi: BaseChange = IDENTITY,
                pairing: PairingMatrix | None = None) -> StateSpaceReport:
    if pairing is None:
        pairing = pairing_matrix(fam)
    m = pairing.matrix if phi.kind == "identity" else pairing.matrix.base_change(phi)
    report: RankReport = graded_rank(m)
    raw = Laurent.from_degrees(fam.cups[c].degree for c in report.pivot_columns)
    return StateSpaceReport(
        web=fam.web.name,
        phi=phi,
        rank=report.rank,
        graded_rank_raw=raw,
        graded_rank_centered=raw.centered(),
        basis=tuple(quotient_by_kernel(m)),
        invariant_factors=report.invariant_factors,
        pairing_is_identity=m.is_identity(),
    )


def _matmul_r(a: Sequence[Sequence[SymPoly]], b: Sequence[Sequence[SymPoly]]):
    n, k, m = len(a), len(b), len(b[0]) if b else 0
    out = []
    for r in range(n):
        row = []
        for c in range(m):
            acc = SymPoly()
            for t in range(k):
                if a[r][t] and b[t][c]:
                    acc = acc + a[r][t] * b[t][c]
            row.append(acc)
        out.append(row)
    return out


@dataclass(frozen=True)
class IdempotentReport:
    evaluations: int
    is_identity: bool
    is_idempotent: bool
    cross_class_zero: bool
    deviations: tuple[tuple[int, int], ...]

    @property
    def passed(self) -> bool:
        return self.is_identity and self.is_idempotent and self.cross_class_zero


def verify_idempotent_identity(fam: GeneratorFamily,
                               pairing: PairingMatrix | None = None) -> IdempotentReport:
    """Check that the pairing is the identity (so the 6 x #classes terms
    x_i P_j y_i are orthogonal idempotents summing to the identity foam)."""
    if pairing is None:
        pairing = pairing_matrix(fam)
    p = pairing.matrix.entries
    n = len(p)
    one, zero = SymPoly.one(), SymPoly()
    deviations = tuple((r, c) for r in range(n) for c in range(n)
                       if p[r][c] != (one if r == c else zero))
    square = _matmul_r(p, p)
    idem = all(square[r][c] == p[r][c] for r in range(n) for c in range(n))
    cross = all(not p[r][c] for r in range(n) for c in range(n)
                if pairing.rows[r][0] != pairing.cols[c][0])
    return IdempotentReport(pairing.evaluations, not deviations, idem, cross, deviations)


@dataclass(frozen=True)
class BaseChangeComparison:
    rank_before: int
    rank_after: int
    unimodular: bool

    @property
    def drop(self) -> int:
        return self.rank_before - self.rank_after

    @property
    def surjection_is_iso(self) -> bool:
        return self.drop == 0


def compare_ranks(before: GradedMatrix, after: GradedMatrix) -> BaseChangeComparison:
    b = graded_rank(before, check=False)
    a = graded_rank(after, check=False)
    return BaseChangeComparison(b.rank, a.rank, b.unimodular)


def base_change_comparison(fam: GeneratorFamily, psi: BaseChange,
                           pairing: PairingMatrix | None = None) -> BaseChangeComparison:
    """Rank of the family's Gram matrix over R versus after ``psi``."""
    if pairing is None:
        pairing = pairing_matrix(fam)
    m = pairing.matrix
    after = m if psi.kind == "identity" else m.base_change(psi)
    return compare_ranks(m, after)


def specialization_comparison(m: GradedMatrix, g: int) -> BaseChangeComparison:
    """Rank of a Gram matrix over GF(2)[E] before and after E -> g(E)."""
    return compare_ranks(m, m.specialize(g))


def pairing_value(fam: GeneratorFamily, phi: BaseChange, cap, cup):
    return apply_base_change(closed_pairing(fam, cap, cup), phi)

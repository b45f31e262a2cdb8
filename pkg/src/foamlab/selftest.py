"""Reference checks: known values the engine must reproduce."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator

from .builtins import builtin_web, square_foam
from .foams import FoamError, build_double_cone, build_theta_foam, evaluate, validate_foam
from .gf2 import PHI_0, PHI_E, Gf2Fraction, Gf2Poly, IDENTITY
from .linalg import GradedMatrix, Laurent, graded_rank, quantum_integer
from .statespace import (
    build_generator_family, pairing_matrix, specialization_comparison, state_space,
    verify_idempotent_identity,
)
from .webs import (
    bicolored_counts, blow_up_vertex, collapse_digon, coloring_degree,
    enumerate_tait_colorings, hamiltonian_cycles_from_colorings, is_kempe_small,
    kempe_move, kempe_partition, bicolored_subgraph, vertex_connected_sum,
)

# the fraction printed for the inhomogeneous square foam
PRINTED_SQUARE_FRACTION = Gf2Fraction.make(
    Gf2Poly.from_terms([(0, 0, 0), (2, 0, 0), (0, 2, 0), (0, 3, 0), (0, 0, 2),
                        (1, 1, 0), (1, 0, 1), (0, 1, 1)]),
    (1, 1, 1),
)


# checks whose expected value is known not to be reproducible; they are
# reported with both values instead of counting as failures
KNOWN_DISCREPANCIES = {
    "square foam: printed fraction reproduced":
        "the printed numerator has a lone X2^3 term, which no evaluation over an "
        "S3-stable set of colorings can produce",
}


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""
    discrepancy: str = ""

    @property
    def status(self) -> str:
        if self.passed:
            return "PASS"
        return "DISCREPANCY" if self.discrepancy else "FAIL"


def census(web) -> tuple[int, int, tuple]:
    kp = kempe_partition(web)
    return (sum(len(c) for c in kp.classes), len(kp.classes), kp.class_degrees)


def cube_move_pair():
    """Coloring c of the cube with d = 6 and its Kempe move along the inner
    square (pair {1,2}), which has d = 4."""
    cube = builtin_web("cube")
    inner = frozenset({"i01", "i12", "i23", "i30"})
    for c in enumerate_tait_colorings(cube):
        for pair in ((1, 2), (1, 3), (2, 3)):
            if inner in bicolored_subgraph(cube, c, pair).components and \
                    coloring_degree(cube, c) == 6:
                return cube, c, pair, kempe_move(cube, c, pair, inner)
    raise AssertionError("no coloring with an inner-square bicolored cycle")


def square_foam_discrepancy() -> tuple[Gf2Fraction, Gf2Fraction]:
    """(computed, printed) raw evaluations of the inhomogeneous square foam."""
    return evaluate(square_foam(), mode="raw").raw, PRINTED_SQUARE_FRACTION


def _checks(include_dodecahedron: bool) -> Iterator[tuple[str, Callable[[], object], object]]:
    w = builtin_web
    yield "circle has 3 Tait colorings", lambda: len(enumerate_tait_colorings(w("circle"))), 3
    yield "theta has 6 Tait colorings", lambda: len(enumerate_tait_colorings(w("theta"))), 6
    yield "cube has 24 Tait colorings", lambda: len(enumerate_tait_colorings(w("cube"))), 24
    yield "dodecahedron has 60 Tait colorings", \
        lambda: len(enumerate_tait_colorings(w("dodecahedron"))), 60
    yield "empty web: one coloring, degree 0", lambda: census(w("empty")), (1, 1, (0,))
    yield "circle: one class of degree 2", lambda: census(w("circle")), (3, 1, (2,))
    yield "theta: one class of degree 3", lambda: census(w("theta")), (6, 1, (3,))
    yield "k4: one class of degree 3", lambda: census(w("k4")), (6, 1, (3,))
    yield "dodecahedron: 10 classes of degree 3", lambda: census(w("dodecahedron")), \
        (60, 10, (3,) * 10)
    yield "dodecahedron classes have size 6", \
        lambda: sorted({len(c) for c in kempe_partition(w("dodecahedron")).classes}), [6]
    yield "cube is not weakly homogeneous", \
        lambda: (len(kempe_partition(w("cube")).classes),
                 kempe_partition(w("cube")).weakly_homogeneous), (1, False)
    yield "cube Kempe move along inner square: d 2+2+2 -> 2+1+1", \
        lambda: (lambda t: (sorted(bicolored_counts(t[0], t[1]).values()),
                            sorted(bicolored_counts(t[0], t[3]).values())))(cube_move_pair()), \
        ([2, 2, 2], [1, 1, 2])
    for name in ("circle", "theta", "k4", "dodecahedron"):
        yield f"{name} is Kempe-small", (lambda n=name: is_kempe_small(w(n))), True
    yield "dodecahedron has 30 Hamiltonian cycles from colorings", \
        lambda: len(hamiltonian_cycles_from_colorings(w("dodecahedron"))), 30
    yield "theta web: 2 vertices, 3 edges", \
        lambda: (len(w("theta").vertices), len(w("theta").edges)), (2, 3)
    yield "k4 blown up stays Kempe-small", \
        lambda: is_kempe_small(blow_up_vertex(w("k4"), "v0")[0]), True
    yield "theta digon collapse: degree 3 -> circle degree 2", \
        lambda: sorted({(coloring_degree(w("theta"), c), coloring_degree(new, d))
                        for new, m in [collapse_digon(w("theta"), ("a", "b"))]
                        for c, d in m.items()}), [(3, 2)]
    yield "theta is neutral for vertex-connected sum (census)", \
        lambda: census(vertex_connected_sum(w("k4"), "v0", w("theta"), "u",
                                            [("e01", "a"), ("e02", "b"), ("e03", "c")])), \
        census(w("k4"))
    yield "connected sum with k4 blows up a vertex (census)", \
        lambda: census(vertex_connected_sum(w("theta"), "u", w("k4"), "v0",
                                            [("a", "e01"), ("b", "e02"), ("c", "e03")])), \
        census(blow_up_vertex(w("theta"), "u")[0])
    yield "theta table: <theta(k,l,m)> = 1 iff {k,l,m} = {0,1,2}", \
        lambda: all((evaluate(build_theta_foam(k, l, m)).value.render() == "1")
                    == ({k, l, m} == {0, 1, 2})
                    for k in range(3) for l in range(3) for m in range(3)), True
    yield "double cone over the cube is rejected (inhomogeneous class)", \
        lambda: any(d.code == "inhomogeneous-class" for d in validate_foam(
            build_double_cone(w("cube"), *[enumerate_tait_colorings(w("cube"))[0]] * 2,
                              check_homogeneous=False))), True
    yield "1x1 Gram (E): rank 1, invariant factor E, not unimodular", \
        lambda: (lambda r: (r.rank, r.invariant_factors, r.unimodular))(
            graded_rank(GradedMatrix([[0b10]], [3], [3], "E"))), (1, (0b10,), False)
    yield "Gram (E) drops rank 1 -> 0 under E -> 0", \
        lambda: specialization_comparison(GradedMatrix([[0b10]], [3], [3], "E"), 0).drop, 1
    yield "theta family has 6 cups", lambda: build_generator_family(w("theta")).size, 6
    yield "theta pairing is the identity (36 evaluations)", \
        lambda: verify_idempotent_identity(build_generator_family(w("theta"))).passed, True
    yield "theta state space under phi_0: rank 6, [2][3]", \
        lambda: (lambda r: (r.rank, r.graded_rank_centered))(
            state_space(build_generator_family(w("theta")), PHI_0)), \
        (6, quantum_integer(2) * quantum_integer(3))
    yield "empty web state space: rank 1, graded rank 1", \
        lambda: (lambda r: (r.rank, r.graded_rank_raw))(
            state_space(build_generator_family(w("empty")), IDENTITY)), \
        (1, Laurent.from_degrees([0]))
    yield "square foam: printed fraction reproduced", \
        lambda: square_foam_discrepancy()[0], PRINTED_SQUARE_FRACTION
    if include_dodecahedron:
        yield from _dodecahedron_checks()


def _dodecahedron_checks():
    web = builtin_web("dodecahedron")
    fam = build_generator_family(web)
    kp = kempe_partition(web)
    k0, k1 = kp.classes[0][0], kp.classes[1][0]
    yield "dodecahedron family has 60 cups", lambda: fam.size, 60
    yield "double cone C+(k)C-(k) has 6 admissible colorings", \
        lambda: len(evaluate(build_double_cone(web, k0, k0)).terms), 6
    yield "double cone C+(k)C-(k') with k != k' evaluates to 0", \
        lambda: (len(evaluate(build_double_cone(web, k0, k1)).terms),
                 evaluate(build_double_cone(web, k0, k1)).value.render()), (0, "0")
    cache = {}

    def pairing():
        if "p" not in cache:
            cache["p"] = pairing_matrix(fam)
        return cache["p"]

    yield "dodecahedron: 60 x 60 pairing is the identity", lambda: pairing().is_identity(), True
    yield "dodecahedron under phi_E: rank 60, 10[2][3]", \
        lambda: (lambda r: (r.rank, r.graded_rank_centered))(state_space(fam, PHI_E, pairing())), \
        (60, 10 * quantum_integer(2) * quantum_integer(3))


def run_checks(include_dodecahedron: bool = True) -> list[Check]:
    out = []
    for name, fn, expected in _checks(include_dodecahedron):
        try:
            got = fn()
            if name in KNOWN_DISCREPANCIES and got != expected:
                out.append(Check(name, False, f"computed {_show(got)}; printed {_show(expected)}",
                                 KNOWN_DISCREPANCIES[name]))
                continue
            out.append(Check(name, got == expected, f"got {_show(got)}"))
        except (FoamError, ValueError, ArithmeticError, AssertionError) as exc:
            out.append(Check(name, False, f"{type(exc).__name__}: {exc}"))
    return out


def _show(x) -> str:
    return x.render() if hasattr(x, "render") else repr(x)

"""Closed conical foams: presentations, admissible colorings and evaluation.

A foam is given combinatorially: facets carry an Euler characteristic and a
dot count, seams list the three facet germs around them, and every singular
point records its link web, which facet each link edge lies on and a
representative Tait coloring of the adorning Kempe class.  Nothing here
knows about an embedding.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .gf2 import (
    FACTORS, Gf2Fraction, Gf2Poly, NotSymmetricError, SymPoly, fraction_sum,
    to_symmetric,
)
from .webs import (
    COLORS, PAIRS, TaitColoring, Web, bicolored_counts, coloring_degree,
    enumerate_tait_colorings, is_tait_coloring, kempe_class,
)


class FoamError(ValueError):
    """Invalid foam data."""

    def __init__(self, message: str, diagnostics: Sequence["Diagnostic"] = ()):
        super().__init__(message)
        self.diagnostics = tuple(diagnostics)


class EvaluationIntegrityError(ArithmeticError):
    """A homogeneous evaluation failed its polynomial/symmetry/degree check."""

    def __init__(self, message: str, fraction: Gf2Fraction):
        super().__init__(f"{message}: {fraction.render()}")
        self.fraction = fraction


@dataclass(frozen=True)
class Facet:
    id: str
    chi: int
    dots: int = 0


@dataclass(frozen=True)
class Seam:
    id: str
    germs: tuple[str, ...]
    ends: tuple[str, ...] = ()

    @property
    def is_circle(self) -> bool:
        return not self.ends


@dataclass(frozen=True)
class SingularPoint:
    """Cone point with link ``link``.

    ``vertex_to_seam`` (optional) says which seam leaves the point through
    each link vertex; when present the germs are cross-checked.
    """

    id: str
    link: Web
    edge_to_facet: Mapping[str, str]
    adornment: TaitColoring
    vertex_to_seam: Mapping[str, str] | None = None

    def __hash__(self):
        return hash((self.id, self.link, self.adornment))


@dataclass(frozen=True)
class Diagnostic:
    code: str
    message: str

    def __str__(self):
        return f"{self.code}: {self.message}"


@dataclass(frozen=True)
class FoamPresentation:
    facets: tuple[Facet, ...]
    seams: tuple[Seam, ...] = ()
    singular: tuple[SingularPoint, ...] = ()
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "facets", tuple(self.facets))
        object.__setattr__(self, "seams", tuple(self.seams))
        object.__setattr__(self, "singular", tuple(self.singular))

    @property
    def facet_ids(self) -> tuple[str, ...]:
        return tuple(sorted(f.id for f in self.facets))

    def facet(self, fid: str) -> Facet:
        for f in self.facets:
            if f.id == fid:
                return f
        raise FoamError(f"unknown facet {fid!r}")

    @property
    def seam_chi(self) -> int:
        """Euler characteristic of the seam graph; seam circles count 0."""
        return len(self.singular) - sum(1 for s in self.seams if not s.is_circle)

    @property
    def total_dots(self) -> int:
        return sum(f.dots for f in self.facets)

    def with_dots(self, dots: Mapping[str, int]) -> "FoamPresentation":
        facets = tuple(Facet(f.id, f.chi, dots.get(f.id, 0)) for f in self.facets)
        return FoamPresentation(facets, self.seams, self.singular, self.name)

    def add_dots(self, dots: Mapping[str, int]) -> "FoamPresentation":
        facets = tuple(Facet(f.id, f.chi, f.dots + dots.get(f.id, 0)) for f in self.facets)
        return FoamPresentation(facets, self.seams, self.singular, self.name)


def validate_foam(foam: FoamPresentation) -> list[Diagnostic]:
    """Check a presentation; returns an empty list when it is valid."""
    out: list[Diagnostic] = []
    fids = [f.id for f in foam.facets]
    fset = set(fids)
    if len(fset) != len(fids):
        out.append(Diagnostic("duplicate-facet", "facet identifiers repeat"))
    for f in foam.facets:
        if f.dots < 0:
            out.append(Diagnostic("negative-dots", f"facet {f.id} has {f.dots} dots"))
    sids = [s.id for s in foam.seams]
    if len(set(sids)) != len(sids):
        out.append(Diagnostic("duplicate-seam", "seam identifiers repeat"))
    pids = {p.id for p in foam.singular}
    if len(pids) != len(foam.singular):
        out.append(Diagnostic("duplicate-point", "singular point identifiers repeat"))
    ends_at: dict[str, list[str]] = {p: [] for p in pids}
    for s in foam.seams:
        if len(s.germs) != 3:
            out.append(Diagnostic("seam-germs", f"seam {s.id} has {len(s.germs)} germs, expected 3"))
        for g in s.germs:
            if g not in fset:
                out.append(Diagnostic("unknown-facet", f"seam {s.id} refers to facet {g}"))
        if len(s.ends) not in (0, 2):
            out.append(Diagnostic("seam-ends", f"seam {s.id} must have 0 or 2 ends"))
        for p in s.ends:
            if p not in pids:
                out.append(Diagnostic("unknown-point", f"seam {s.id} ends at {p}"))
            else:
                ends_at[p].append(s.id)
    seams_by_id = {s.id: s for s in foam.seams}
    for p in foam.singular:
        link = p.link
        colorings = enumerate_tait_colorings(link)
        if not colorings:
            out.append(Diagnostic("link-uncolorable", f"link of {p.id} has no Tait coloring"))
            continue
        if set(p.edge_to_facet) != set(link.edge_ids):
            out.append(Diagnostic("link-map", f"edge map of {p.id} is not total on link edges"))
            continue
        for e, f in p.edge_to_facet.items():
            if f not in fset:
                out.append(Diagnostic("unknown-facet", f"link edge {e} of {p.id} maps to {f}"))
        if not is_tait_coloring(link, p.adornment):
            out.append(Diagnostic("bad-adornment", f"adornment of {p.id} is not a Tait coloring"))
            continue
        cls = kempe_class(link, p.adornment)
        if len({coloring_degree(link, c) for c in cls}) != 1:
            out.append(Diagnostic("inhomogeneous-class",
                                  f"adorned Kempe class at {p.id} is not homogeneous"))
        if len(ends_at[p.id]) != len(link.vertices):
            out.append(Diagnostic("seam-count", f"{p.id}: {len(ends_at[p.id])} seam ends "
                                                f"but {len(link.vertices)} link vertices"))
        if p.vertex_to_seam is not None:
            for v, sid in p.vertex_to_seam.items():
                s = seams_by_id.get(sid)
                if s is None or v not in link.vertices:
                    out.append(Diagnostic("link-vertex", f"{p.id}: bad vertex map {v}->{sid}"))
                    continue
                around = sorted(p.edge_to_facet[e] for e in link.incident(v))
                if around != sorted(s.germs):
                    out.append(Diagnostic("link-germs",
                                          f"{p.id}: link vertex {v} does not match seam {sid}"))
    return out


def require_valid(foam: FoamPresentation) -> None:
    diags = validate_foam(foam)
    if diags:
        raise FoamError("; ".join(map(str, diags)), diags)


# -- colorings ---------------------------------------------------------------

@dataclass(frozen=True, order=True)
class AdmissibleColoring:
    colors: tuple[int, ...]
    facets: tuple[str, ...] = field(compare=False)

    def __getitem__(self, fid: str) -> int:
        return self.colors[self.facets.index(fid)]

    def as_dict(self) -> dict[str, int]:
        return dict(zip(self.facets, self.colors))


def induced_link_coloring(point: SingularPoint, coloring: Mapping[str, int]) -> TaitColoring:
    return TaitColoring.from_mapping(
        point.link, {e: coloring[f] for e, f in point.edge_to_facet.items()})


class _ColoringContext:
    """Per-foam data reused across evaluation calls (class sets of links)."""

    def __init__(self, foam: FoamPresentation):
        self.foam = foam
        self.classes = {p.id: kempe_class(p.link, p.adornment) for p in foam.singular}


def enumerate_admissible_colorings(foam: FoamPresentation) -> list[AdmissibleColoring]:
    """Backtrack over facets in sorted order with seam constraints, then keep
    the colorings whose link colorings lie in the adorned classes."""
    return _enumerate(foam, _ColoringContext(foam))


def _enumerate(foam: FoamPresentation, ctx: _ColoringContext) -> list[AdmissibleColoring]:
    ids = foam.facet_ids
    seams_of: dict[str, list[tuple[str, ...]]] = {f: [] for f in ids}
    for s in foam.seams:
        if len(set(s.germs)) < 3:
            return []
        for g in s.germs:
            seams_of[g].append(s.germs)
    color: dict[str, int] = {}
    found: list[dict[str, int]] = []

    def ok(f: str) -> bool:
        for germs in seams_of[f]:
            seen = [color[g] for g in germs if g in color]
            if len(seen) != len(set(seen)):
                return False
        return True

    def backtrack(k: int) -> None:
        if k == len(ids):
            found.append(dict(color))
            return
        f = ids[k]
        for c in COLORS:
            color[f] = c
            if ok(f):
                backtrack(k + 1)
            del color[f]

    backtrack(0)
    out = []
    for col in found:
        if all(induced_link_coloring(p, col) in ctx.classes[p.id] for p in foam.singular):
            out.append(AdmissibleColoring(tuple(col[f] for f in ids), ids))
    out.sort()
    return out


def _link_counts(foam: FoamPresentation, col: Mapping[str, int]) -> list[dict]:
    return [bicolored_counts(p.link, induced_link_coloring(p, col)) for p in foam.singular]


def bicolored_euler(foam: FoamPresentation, coloring: AdmissibleColoring, pair) -> int:
    """Euler characteristic of the smoothed bicolored surface for ``pair``."""
    i, j = sorted(pair)
    return _bicolored_euler_all(foam, coloring.as_dict())[(i, j)]


def _bicolored_euler_all(foam: FoamPresentation, col: Mapping[str, int],
                         link_counts: list[dict] | None = None) -> dict:
    if link_counts is None:
        link_counts = _link_counts(foam, col)
    chis = {}
    for pair in PAIRS:
        chi = foam.seam_chi
        chi += sum(f.chi for f in foam.facets if col[f.id] in pair)
        chi += sum(cnt[pair] - 1 for cnt in link_counts)
        if chi % 2:
            raise FoamError(f"odd Euler characteristic {chi} for pair {pair}; "
                            "the presentation is inconsistent")
        chis[pair] = chi
    return chis


def foam_degree(foam: FoamPresentation) -> int:
    """2 #dots - 3 chi(s) - 2 sum chi(f) - sum (d(kappa) - 3)."""
    correction = 0
    for p in foam.singular:
        correction += coloring_degree(p.link, p.adornment) - 3
    return (2 * foam.total_dots - 3 * foam.seam_chi
            - 2 * sum(f.chi for f in foam.facets) - correction)


@dataclass(frozen=True)
class ColoredTerm:
    coloring: AdmissibleColoring
    fraction: Gf2Fraction
    chis: tuple[int, int, int]


@dataclass(frozen=True)
class EvaluationReport:
    value: SymPoly | None
    raw: Gf2Fraction
    terms: tuple[ColoredTerm, ...]
    degree: int | None
    homogeneous: bool

    @property
    def is_polynomial(self) -> bool:
        return self.raw.is_polynomial()


def colored_term(foam: FoamPresentation, coloring: AdmissibleColoring) -> ColoredTerm:
    col = coloring.as_dict()
    chis = _bicolored_euler_all(foam, col)
    num = [0, 0, 0]
    for f in foam.facets:
        num[col[f.id] - 1] += f.dots
    exps = [chis[(i + 1, j + 1)] // 2 for i, j in FACTORS]
    frac = Gf2Fraction.from_exponents(Gf2Poly(frozenset({tuple(num)})), exps)
    return ColoredTerm(coloring, frac, tuple(chis[p] for p in PAIRS))


def is_homogeneous_foam(foam: FoamPresentation) -> bool:
    return all(len({coloring_degree(p.link, c) for c in kempe_class(p.link, p.adornment)}) == 1
               for p in foam.singular)


def evaluate(foam: FoamPresentation, mode: str = "homogeneous",
             validate: bool = True) -> EvaluationReport:
    """Sum of P(F,c)/Q(F,c) over admissible colorings.

    In ``homogeneous`` mode the sum must be a symmetric polynomial of degree
    d(F) (zero when d(F) < 0) and is returned in the E-basis; otherwise
    :class:`EvaluationIntegrityError` is raised.  ``raw`` mode returns the
    reduced fraction without checks.
    """
    if mode not in ("homogeneous", "raw"):
        raise ValueError(f"unknown mode {mode!r}")
    if validate:
        diags = [d for d in validate_foam(foam)
                 if not (mode == "raw" and d.code == "inhomogeneous-class")]
        if diags:
            raise FoamError("; ".join(map(str, diags)), diags)
    terms = tuple(colored_term(foam, c) for c in enumerate_admissible_colorings(foam))
    raw = fraction_sum(t.fraction for t in terms)
    homogeneous = is_homogeneous_foam(foam)
    if mode == "raw":
        value = None
        if raw.is_polynomial() and raw.numerator.is_symmetric():
            value = to_symmetric(raw.numerator)
        return EvaluationReport(value, raw, terms, foam_degree(foam) if homogeneous else None,
                                homogeneous)
    degree = foam_degree(foam)
    if not raw.is_polynomial():
        raise EvaluationIntegrityError("evaluation is not a polynomial", raw)
    try:
        value = to_symmetric(raw.numerator)
    except NotSymmetricError:
        raise EvaluationIntegrityError("evaluation is not symmetric", raw) from None
    if value and value.degrees() != {degree}:
        raise EvaluationIntegrityError(f"evaluation is not homogeneous of degree {degree}", raw)
    return EvaluationReport(value, raw, terms, degree, True)


# -- constructors ------------------------------------------------------------

def build_theta_foam(k: int, l: int, m: int) -> FoamPresentation:
    """Three disks glued along one seam circle, with k, l, m dots."""
    facets = (Facet("f1", 1, k), Facet("f2", 1, l), Facet("f3", 1, m))
    return FoamPresentation(facets, (Seam("s", ("f1", "f2", "f3")),), (),
                            f"theta({k},{l},{m})")


def build_closed_surface(genus: int, dots: int = 0) -> FoamPresentation:
    if genus < 0 or dots < 0:
        raise ValueError("genus and dots must be nonnegative")
    name = "sphere" if genus == 0 else "torus" if genus == 1 else f"surface(g={genus})"
    return FoamPresentation((Facet("f", 2 - 2 * genus, dots),), (), (), name)


def _restrict_to_graph(web: Web, coloring: TaitColoring) -> TaitColoring:
    circles = set(web.circles())
    return TaitColoring.from_mapping(
        _core(web), {e: c for e, c in coloring.as_dict().items() if e not in circles})


def build_double_cone(web: Web, top: TaitColoring, bottom: TaitColoring,
                      dots: Mapping[str, int] | None = None,
                      check_homogeneous: bool = True) -> FoamPresentation:
    """Two cones over ``web`` glued along it.

    Every edge becomes a disk facet and every vertex a seam arc between the
    two apexes, so chi(s) = 2 - |V|.  Free circles of ``web`` become sphere
    facets away from the apexes.  ``dots`` maps edge ids to dot counts.
    """
    dots = dict(dots or {})
    unknown = set(dots) - set(web.edge_ids)
    if unknown:
        raise FoamError(f"dots on unknown edges {sorted(unknown)}")
    for col in (top, bottom):
        if not is_tait_coloring(web, col):
            raise FoamError("adornment is not a Tait coloring of the web")
    circles = set(web.circles())
    facets = tuple(Facet(e, 2 if e in circles else 1, dots.get(e, 0)) for e in web.edge_ids)
    if not web.vertices:
        return FoamPresentation(facets, (), (), f"cone2({web.name})")
    core = _core(web)
    seams = tuple(Seam(f"s:{v}", tuple(core.incident(v)), ("top", "bottom"))
                  for v in core.vertex_ids)
    vmap = {v: f"s:{v}" for v in core.vertex_ids}
    emap = {e: e for e in core.edge_ids}
    points = (
        SingularPoint("top", core, emap, _restrict_to_graph(web, top), vmap),
        SingularPoint("bottom", core, emap, _restrict_to_graph(web, bottom), vmap),
    )
    foam = FoamPresentation(facets, seams, points, f"cone2({web.name})")
    if check_homogeneous and not is_homogeneous_foam(foam):
        raise FoamError("double cone adorned with an inhomogeneous Kempe class",
                        [Diagnostic("inhomogeneous-class", "adornment is not homogeneous")])
    return foam


def cone_degree(web: Web, adornment: TaitColoring, dots: int) -> int:
    """Degree of the dotted cone over ``web`` viewed as a foam with boundary."""
    n_disks = len(web.edges)
    if not web.vertices:
        return 2 * dots - 2 * n_disks
    # apex plus |V| arcs ending on the boundary: chi(s) = 1
    d = coloring_degree(_core(web), _restrict_to_graph(web, adornment))
    return 2 * dots - 3 - 2 * n_disks - (d - 3)


def _core(web: Web) -> Web:
    return Web(web.vertices, tuple(e for e in web.edges if not e.is_circle), web.name)

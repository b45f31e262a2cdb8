"""Exact engine for unoriented SL(3) conical foams over GF(2)."""

from .builtins import builtin_foam, builtin_web
from .foams import (
    EvaluationIntegrityError, FoamError, FoamPresentation, build_closed_surface,
    build_double_cone, build_theta_foam, evaluate, foam_degree, validate_foam,
)
from .gf2 import PHI_0, PHI_E, IDENTITY, BaseChange, Gf2Fraction, Gf2Poly, SymPoly, to_symmetric
from .linalg import GradedMatrix, Laurent, graded_rank, quantum_integer, smith_normal_form
from .statespace import build_generator_family, pairing_matrix, state_space
from .webs import (
    PreconditionError, TaitColoring, Web, WebError, enumerate_tait_colorings, is_kempe_small,
    kempe_partition,
)

__version__ = "0.1.0"

__all__ = [
    "BaseChange", "EvaluationIntegrityError", "FoamError", "FoamPresentation", "Gf2Fraction",
    "Gf2Poly", "GradedMatrix", "IDENTITY", "Laurent", "PHI_0", "PHI_E", "PreconditionError",
    "SymPoly", "TaitColoring", "Web", "WebError", "build_closed_surface", "build_double_cone",
    "build_generator_family", "build_theta_foam", "builtin_foam", "builtin_web",
    "enumerate_tait_colorings", "evaluate", "foam_degree", "graded_rank", "is_kempe_small",
    "kempe_partition", "pairing_matrix", "quantum_integer", "smith_normal_form", "state_space",
    "to_symmetric", "validate_foam",
]

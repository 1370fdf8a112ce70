"""Exact chart algebra on super Grassmannians over the Gaussian rationals."""

from ._backend import BACKEND
from .atlas import Atlas, ChartIndex, SuperMorphism, build_atlas, pi_atlas, plain_atlas
from .errors import SuperGrassError
from .galois import classify_real_structures, twisted_algebra_solve
from .lifts import check_lift_compatibility, normalize_lift, pgl_action
from .persistence import load_atlas, save_atlas
from .real_structures import fixed_relations, real_points_exist, structure_by_name
from .scalars import GaussianRational, I
from .superalgebra import SuperFunction, SuperPolynomial, VariableTable
from .supermatrix import SuperMatrix
from .suites import SUITES, VerificationConfig, run

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "Atlas", "ChartIndex", "SuperMorphism", "build_atlas", "pi_atlas", "plain_atlas",
    "SuperGrassError", "classify_real_structures", "twisted_algebra_solve",
    "check_lift_compatibility", "normalize_lift", "pgl_action", "load_atlas", "save_atlas",
    "fixed_relations", "real_points_exist", "structure_by_name", "GaussianRational", "I",
    "SuperFunction", "SuperPolynomial", "VariableTable", "SuperMatrix",
    "SUITES", "VerificationConfig", "run",
]

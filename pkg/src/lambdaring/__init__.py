"""Ray class groups, Deligne-Ribet monoids and integral-model checks for
finite sets with commuting Galois and ideal actions over Q and quadratic fields."""

from .arith import Cycle, Ideal, PrimeIdeal, is_f_equivalent, make_field
from .checker import (
    GlobalActionSpec,
    LocalActionSpec,
    Verdict,
    check_global,
    check_local,
    compute_f,
    compute_r,
)
from .dr import DRMonoid, dr_bruteforce, dr_class_of, dr_isomorphic, dr_projection, dr_structured
from .errors import BijectionMismatch, BudgetExceeded, InputError, LambdaRingError, ValidationError
from .kernels import BACKEND
from .rayclass import class_group, conductor_of_action, projection, ray_class_group

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BijectionMismatch",
    "BudgetExceeded",
    "Cycle",
    "DRMonoid",
    "GlobalActionSpec",
    "Ideal",
    "InputError",
    "LambdaRingError",
    "LocalActionSpec",
    "PrimeIdeal",
    "ValidationError",
    "Verdict",
    "check_global",
    "check_local",
    "class_group",
    "compute_f",
    "compute_r",
    "conductor_of_action",
    "dr_bruteforce",
    "dr_class_of",
    "dr_isomorphic",
    "dr_projection",
    "dr_structured",
    "is_f_equivalent",
    "make_field",
    "projection",
    "ray_class_group",
]

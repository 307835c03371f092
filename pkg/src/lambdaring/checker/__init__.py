from .global_check import (
    GlobalAction,
    GlobalActionSpec,
    action_from_monoid,
    check_global,
    compute_f,
    compute_r,
    refalsify,
    validate,
    verify_certificate,
)
from .local import (
    LocalActionSpec,
    LocalModel,
    check_local,
    local_filtration,
    local_model_description,
    model_from_psi,
    splitting_map,
    stabilized_subset,
    validate_local,
)
from .verdict import Verdict

__all__ = [
    "GlobalAction",
    "GlobalActionSpec",
    "LocalActionSpec",
    "LocalModel",
    "Verdict",
    "action_from_monoid",
    "check_global",
    "check_local",
    "compute_f",
    "compute_r",
    "local_filtration",
    "local_model_description",
    "model_from_psi",
    "refalsify",
    "splitting_map",
    "stabilized_subset",
    "validate",
    "validate_local",
    "verify_certificate",
]

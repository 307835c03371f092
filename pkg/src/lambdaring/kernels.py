"""Kernel selection: the compiled core when built, else the Python fallback.

Set LAMBDARING_PURE_PYTHON=1 to force the fallback.
"""

import os

BACKEND = "python"
if os.environ.get("LAMBDARING_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from ._kernels import (  # type: ignore[attr-defined]
            action_hom_failure,
            commutes,
            compose,
            identity_map,
            image,
            map_power,
            stable_image,
            table_hom_failure,
        )

        BACKEND = "cython"
    except ImportError:
        pass

if BACKEND == "python":
    from ._kernels_py import (  # noqa: F401
        action_hom_failure,
        commutes,
        compose,
        identity_map,
        image,
        map_power,
        stable_image,
        table_hom_failure,
    )

__all__ = [
    "BACKEND",
    "action_hom_failure",
    "commutes",
    "compose",
    "identity_map",
    "image",
    "map_power",
    "stable_image",
    "table_hom_failure",
]

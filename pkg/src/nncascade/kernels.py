"""Backend selection for the build kernels.

The compiled extension is used when it imports and fits the coordinate
range; ``NNCASCADE_PURE=1`` forces the pure-Python kernels.
"""

import os

from . import _kernels_py as py

# Largest lattice half-width for which every intermediate fits in 128 bits.
COMPILED_MAX_DOMAIN = 1 << 13

compiled = None
if os.environ.get("NNCASCADE_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as compiled  # type: ignore
    except ImportError:  # extension not built
        compiled = None


def for_domain(B: int):
    """Kernel module to use for sites within [-B, B]^2."""
    if compiled is not None and B <= COMPILED_MAX_DOMAIN:
        return compiled
    return py


def backend_name(B: int) -> str:
    return for_domain(B).BACKEND

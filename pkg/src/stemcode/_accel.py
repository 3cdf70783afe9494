"""Backend selection for the numeric kernels.

Numba is used when importable unless ``STEMCODE_DISABLE_NUMBA`` is set to a
truthy value, in which case the pure-numpy kernels are used. The choice is
made once, at import time.
"""

import os

_FLAG = "STEMCODE_DISABLE_NUMBA"

try:  # pragma: no cover - depends on the environment
    import numba  # noqa: F401

    HAS_NUMBA = True
except ImportError:  # pragma: no cover
    HAS_NUMBA = False


def numba_disabled() -> bool:
    return os.environ.get(_FLAG, "").strip().lower() in {"1", "true", "yes", "on"}


USE_NUMBA = HAS_NUMBA and not numba_disabled()

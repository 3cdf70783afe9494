"""Hot numeric kernels, dispatched to numba or pure numpy.

All kernels take weights as a flat length-16 ``float64`` array (row-major
stem order) and strands as ``uint8`` code matrices of shape ``(m, n)``.
"""

from ._accel import HAS_NUMBA, USE_NUMBA

if USE_NUMBA:
    from . import _kernels_numba as _impl
else:
    from . import _kernels_numpy as _impl

BACKEND = _impl.NAME

similarity_matrix = _impl.similarity_matrix
self_similarity = _impl.self_similarity
compatibility = _impl.compatibility
project_simplex = _impl.project_simplex
project_feasible = _impl.project_feasible
ascend = _impl.ascend
sample_chains = _impl.sample_chains
greedy_filter = _impl.greedy_filter

__all__ = [
    "BACKEND", "HAS_NUMBA", "USE_NUMBA", "similarity_matrix", "self_similarity",
    "compatibility", "project_simplex", "project_feasible", "ascend",
    "sample_chains", "greedy_filter",
]

"""Additive stem similarity and distance between equal-length strands.

``S_w(x, y)`` adds ``w(a, b)`` for every position ``i`` where both strands
carry the same stem ``(a, b)`` at ``(i, i+1)``. The distance
``D_w(x, y) = S_w(x, x) - S_w(x, y)`` is ordered: it is not symmetric unless
the two self-similarities coincide.
"""

from __future__ import annotations

import numpy as np

from . import kernels
from .alphabet import StrandLike, as_strand, encode_many, reverse_complement
from .errors import StrandError
from .weights import WeightTable


def _pair(x: StrandLike, y: StrandLike):
    x, y = as_strand(x), as_strand(y)
    if len(x) != len(y):
        raise StrandError(f"length mismatch: {len(x)} vs {len(y)}")
    return x, y


def position_terms(w: WeightTable, x: StrandLike, y: StrandLike) -> np.ndarray:
    """Per-position terms of the similarity sum (length ``n - 1``)."""
    x, y = _pair(x, y)
    a, b = x.codes.astype(np.int64), y.codes.astype(np.int64)
    same = (a[:-1] == b[:-1]) & (a[1:] == b[1:])
    return np.where(same, w.flat[4 * a[:-1] + a[1:]], 0.0)


def stem_similarity(w: WeightTable, x: StrandLike, y: StrandLike) -> float:
    x, y = _pair(x, y)
    return float(kernels.similarity_matrix(w.flat, x.codes[None, :], y.codes[None, :])[0, 0])


def stem_distance(w: WeightTable, x: StrandLike, y: StrandLike) -> float:
    """``S_w(x, x) - S_w(x, y)``; ordered in ``x``."""
    x, y = _pair(x, y)
    S = kernels.similarity_matrix(w.flat, x.codes[None, :], np.stack([x.codes, y.codes]))
    return float(S[0, 0] - S[0, 1])


def duplex_energy(w: WeightTable, x: StrandLike, y: StrandLike) -> float:
    """Hybridization-energy model ``S_w(x, rc(y))``; symmetric in ``x`` and ``y``."""
    x, y = _pair(x, y)
    return stem_similarity(w, x, reverse_complement(y))


def similarity_matrix(w: WeightTable, strands) -> np.ndarray:
    """All pairwise similarities among equal-length strands."""
    X = encode_many(strands)
    return kernels.similarity_matrix(w.flat, X, X)


def distance_matrix(w: WeightTable, strands) -> np.ndarray:
    """``out[i, j] = D_w(strands[i], strands[j])``."""
    S = similarity_matrix(w, strands)
    return np.diag(S)[:, None] - S

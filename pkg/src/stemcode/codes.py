"""DNA codes under the additive stem distance.

A DNA code is a set of equal-length strands made of mutually
reverse-complementary pairs (no strand is its own reverse complement). Its
minimum distance is taken over *ordered* pairs because the stem distance is
asymmetric.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import kernels
from .alphabet import (
    ALL_STEMS,
    Strand,
    StrandLike,
    all_strand_codes,
    as_strand,
    encode_many,
    reverse_complement,
    reverse_complement_codes,
)
from .critical import TransitionModel, markov_condition
from .errors import CodeError, StemcodeError
from .similarity import distance_matrix
from .weights import WeightTable

DIST_ATOL = 1e-9
DEFAULT_SEARCH_LIMIT = 4**6


@dataclass(frozen=True)
class CodeParams:
    n: int
    D: float

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 2:
            raise StemcodeError(f"code length must be an integer >= 2, got {self.n}")
        if not self.D > 0:
            raise StemcodeError(f"distance threshold must be positive, got {self.D}")

    @property
    def d(self) -> float:
        """Relative distance ``D / n``."""
        return self.D / self.n


class DnaCode:
    """Ordered collection of equal-length codewords.

    The container itself only enforces equal lengths; closure under reverse
    complementation and distinctness are checked by :meth:`check` and
    :func:`is_valid_dna_code` so that invalid candidates can be reported on.
    """

    __slots__ = ("_words",)

    def __init__(self, codewords=()):
        words = tuple(as_strand(x) for x in codewords)
        if words and any(len(x) != len(words[0]) for x in words):
            raise CodeError("codewords have different lengths")
        self._words = words

    @property
    def codewords(self) -> tuple[Strand, ...]:
        return self._words

    @property
    def n(self) -> int | None:
        return len(self._words[0]) if self._words else None

    def __len__(self) -> int:
        return len(self._words)

    def __iter__(self):
        return iter(self._words)

    def __contains__(self, x) -> bool:
        return as_strand(x) in set(self._words)

    def __eq__(self, other) -> bool:
        if not isinstance(other, DnaCode):
            return NotImplemented
        return sorted(map(str, self)) == sorted(map(str, other))

    def __repr__(self) -> str:
        return f"DnaCode(N={len(self)}, n={self.n})"

    def closure_violations(self) -> list[str]:
        out = []
        seen = set()
        words = set(self._words)
        for x in self._words:
            if x in seen:
                out.append(f"duplicate codeword {x}")
                continue
            seen.add(x)
            rc = reverse_complement(x)
            if rc == x:
                out.append(f"codeword {x} is its own reverse complement")
            elif rc not in words:
                out.append(f"reverse complement {rc} of codeword {x} is missing")
        return out

    def check(self) -> None:
        """Raise :class:`CodeError` naming the first closure/distinctness violation."""
        seen = set()
        words = set(self._words)
        for x in self._words:
            if x in seen:
                raise CodeError(f"duplicate codeword {x}", strand=x)
            seen.add(x)
            rc = reverse_complement(x)
            if rc == x:
                raise CodeError(f"codeword {x} is its own reverse complement", strand=x)
            if rc not in words:
                raise CodeError(f"reverse complement of codeword {x} is missing", strand=x)

    def to_text(self, header: str | None = None) -> str:
        lines = [f"# {h}" for h in (header.splitlines() if header else [])]
        lines += [str(x) for x in self._words]
        return "\n".join(lines) + "\n"


def parse_code_text(text: str) -> DnaCode:
    words = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            words.append(Strand(line))
    return DnaCode(words)


def read_code_file(path) -> DnaCode:
    return parse_code_text(Path(path).read_text())


def code_min_distance(w: WeightTable, c: DnaCode) -> float:
    """Minimum of ``D_w(x, y)`` over ordered pairs of distinct codewords."""
    if len(c) < 2:
        raise CodeError("minimum distance needs at least two codewords")
    c.check()
    dist = distance_matrix(w, c.codewords)
    np.fill_diagonal(dist, np.inf)
    return float(dist.min())


@dataclass
class ValidityReport:
    valid: bool
    min_distance: float | None
    closure_violations: list[str] = field(default_factory=list)
    distance_violations: list[tuple[Strand, Strand, float]] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.valid

    def render(self) -> str:
        lines = [f"valid={str(self.valid).lower()}"]
        if self.min_distance is not None:
            lines.append(f"min_distance={self.min_distance:.6g}")
        lines += self.closure_violations
        lines += [f"D({x},{y})={d:.6g}" for x, y, d in self.distance_violations]
        return "\n".join(lines)


def is_valid_dna_code(w: WeightTable, c: DnaCode, D: float) -> ValidityReport:
    """Check closure and minimum distance ``>= D`` (with absolute tolerance 1e-9).

    Every ordered pair below the threshold is listed in the report.
    """
    closure = c.closure_violations()
    if len(c) < 2:
        return ValidityReport(valid=not closure, min_distance=None, closure_violations=closure)
    dist = distance_matrix(w, c.codewords)
    np.fill_diagonal(dist, np.inf)
    bad = np.argwhere(dist < D - DIST_ATOL)
    words = c.codewords
    violations = [(words[i], words[j], float(dist[i, j])) for i, j in bad]
    return ValidityReport(
        valid=not closure and not violations,
        min_distance=float(dist.min()),
        closure_violations=closure,
        distance_violations=violations,
    )


def construct_repetition_code(n: int) -> DnaCode:
    """The 16-word code of alternating strands ``a1 a2 a1 a2 ... a1`` for odd ``n``.

    Distinct codewords share no stem at any position, so with constant unit
    weights this code has minimum distance ``n - 1``.
    """
    if int(n) != n:
        raise CodeError(f"n must be an integer, got {n}")
    n = int(n)
    if n % 2 == 0:
        raise CodeError(f"n must be odd, got {n}")
    if n < 3:
        raise CodeError(f"n must be >= 3, got {n}")
    return DnaCode(
        Strand("".join(s.first if i % 2 == 0 else s.second for i in range(n))) for s in ALL_STEMS
    )


def max_self_similarity(w: WeightTable, n: int) -> float:
    """``max_x S_w(x, x)`` over strands of length ``n`` (heaviest walk of n-1 stems)."""
    best = np.zeros(4)
    for _ in range(n - 1):
        best = (best[:, None] + w.grid).max(axis=0)
    return float(best.max())


def sample_strands(m: TransitionModel, n: int, count: int, seed) -> np.ndarray:
    """Draw ``count`` strands of length ``n`` from the chain as a code matrix."""
    rng = np.random.default_rng(seed)
    U = rng.random((count, n))
    init_cdf, trans_cdf = m.cdfs()
    return kernels.sample_chains(init_cdf, trans_cdf, U)


def stem_frequencies(codes: np.ndarray) -> np.ndarray:
    """Empirical 4x4 stem frequencies over all positions of a code matrix."""
    idx = 4 * codes[:, :-1].astype(np.int64) + codes[:, 1:]
    counts = np.bincount(idx.ravel(), minlength=16)
    return (counts / counts.sum()).reshape(4, 4)


def generate_markov_code(
    w: WeightTable, m: TransitionModel, params: CodeParams, trials: int, seed
) -> DnaCode:
    """Random code from the Markov ensemble, filtered greedily in sample order.

    Each sample ``x`` is offered as the pair ``(x, rc(x))``. The pair is
    accepted when ``x`` is not self-reverse-complementary, neither strand is
    already present, and every ordered distance involving the new strands is
    at least ``D``.
    """
    if trials < 1:
        raise StemcodeError("trials must be >= 1")
    if not markov_condition(m):
        raise CodeError("invalid transition model: Markov condition M does not hold")
    samples = np.ascontiguousarray(sample_strands(m, params.n, trials, seed))
    accepted = kernels.greedy_filter(w.flat, samples, float(params.D), DIST_ATOL)
    words = []
    for row in samples[accepted]:
        x = Strand.from_codes(row)
        words += [x, reverse_complement(x)]
    return DnaCode(words)


class _Budget(Exception):
    pass


def _max_rc_clique(adj: list[int], mate: list[int], budget: int | None) -> tuple[list[int], bool]:
    """Maximum clique closed under an involution ``mate``, by branch and bound.

    ``adj[v]`` is the neighbour bitset of strand ``v`` and ``mate[v]`` its
    reverse complement, itself a neighbour. Branching adds a strand together
    with its mate; the bound is the greedy colouring of the candidate strands
    (a clique takes at most one strand per colour class), rounded down to an
    even count. Vertices are ordered by decreasing degree, ties by index.
    """
    nv = len(adj)
    order = sorted(range(nv), key=lambda v: (-bin(adj[v]).count("1"), v))
    pos = [0] * nv
    for k, v in enumerate(order):
        pos[v] = k
    nadj = []
    for v in order:
        bits, a = 0, adj[v]
        while a:
            low = a & -a
            bits |= 1 << pos[low.bit_length() - 1]
            a ^= low
        nadj.append(bits)
    nmate = [pos[mate[v]] for v in order]

    best: list[int] = []
    nodes = 0

    def color_sort(P):
        verts, colors = [], []
        uncolored, color = P, 0
        while uncolored:
            color += 1
            Q = uncolored
            while Q:
                v = (Q & -Q).bit_length() - 1
                Q &= ~nadj[v] & ~(1 << v)
                uncolored &= ~(1 << v)
                verts.append(v)
                colors.append(color)
        return verts, colors

    def expand(R, P):
        nonlocal best, nodes
        nodes += 1
        if budget is not None and nodes > budget:
            raise _Budget
        verts, colors = color_sort(P)
        for k in range(len(verts) - 1, -1, -1):
            if len(R) + 2 * (colors[k] // 2) <= len(best):
                return
            v = verts[k]
            if not (P >> v) & 1:
                continue
            u = nmate[v]
            R += [v, u]
            newP = P & nadj[v] & nadj[u]
            if newP:
                expand(R, newP)
            elif len(R) > len(best):
                best = R.copy()
            del R[-2:]
            P &= ~((1 << v) | (1 << u))

    exact = True
    if nv:
        try:
            expand([], (1 << nv) - 1)
        except _Budget:
            exact = False
    return sorted(order[v] for v in best), exact


def exhaustive_max_code(
    w: WeightTable,
    params: CodeParams,
    limit: int = DEFAULT_SEARCH_LIMIT,
    max_nodes: int | None = None,
) -> tuple[DnaCode, bool]:
    """Largest ``(n, D)`` code found by exhaustive branch and bound.

    Candidates are all strands ``x != rc(x)`` whose pair ``(x, rc(x))`` is
    itself at distance ``>= D`` both ways. Two strands are adjacent when both
    ordered distances between them are ``>= D``; a code is a clique closed
    under reverse complementation, so its size is twice the maximum clique
    in the graph on reverse-complement pairs.

    Returns the code and whether the search completed (``False`` only when
    ``max_nodes`` branch-and-bound nodes were exhausted first, in which case
    the best code found so far is returned).
    """
    n = params.n
    if 4**n > limit:
        raise StemcodeError(f"instance too large: 4**{n} strands exceeds limit {limit}")
    X = all_strand_codes(n)
    place = 4 ** np.arange(n - 1, -1, -1)
    rc_idx = (reverse_complement_codes(X).astype(np.int64) * place).sum(axis=1)
    ok = kernels.compatibility(w.flat, X, float(params.D), DIST_ATOL)
    idx = np.arange(len(X))
    cand = idx[(idx != rc_idx) & ok[idx, rc_idx]]
    local = {int(g): k for k, g in enumerate(cand)}
    sub = ok[np.ix_(cand, cand)]
    adj = [int.from_bytes(np.packbits(row, bitorder="little").tobytes(), "little") for row in sub]
    mate = [local[int(rc_idx[g])] for g in cand]
    clique, exact = _max_rc_clique(adj, mate, max_nodes)
    return DnaCode(Strand.from_codes(X[cand[v]]) for v in clique), exact


def rate_estimate(N: int, n: int) -> float:
    """Finite-length rate ``log4(N) / n``."""
    if N < 1 or n < 2:
        raise StemcodeError("rate_estimate needs N >= 1 and n >= 2")
    return math.log2(N) / 2 / n

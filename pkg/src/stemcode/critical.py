"""Critical relative distance of a weight table.

For a joint distribution ``p`` over the 16 stems with equal row and column
marginals, the objective is ``T_w(p) = sum (p - p**2) * w``. Its maximum over
that polytope, ``T_w``, separates relative distances with zero rate
(``d >= T_w``) from those with positive rate when the maximizer induces a
Markov chain satisfying condition M (every base reaches every base within
1..4 steps). Such tables are called regular.

The objective is strictly concave for positive weights, so the maximizer is
unique. It is found by projected gradient ascent with a fixed step
``1 / (2 max w)``; the projection onto the polytope is computed by Dykstra's
alternating projection between the probability simplex and the
marginal-equality subspace.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .alphabet import ALL_STEMS, BASES, Stem
from .errors import ConvergenceError, DistributionError, StemcodeError
from .weights import WC_PARTNER, WeightTable

SUM_ATOL = 1e-12
MARGINAL_ATOL = 1e-8
SUPPORT_THRESHOLD = 1e-6
PROJECTION_TOL = 1e-12
PROJECTION_MAX_ITER = 100_000
MAX_ITER = 10**6

L4 = frozenset(Stem.parse(s) for s in ("AT", "TA", "AA", "TT"))
L6 = L4 | {Stem.parse("AG"), Stem.parse("CT")}


def _marginal_projector() -> np.ndarray:
    A = np.zeros((4, 16))
    for s in ALL_STEMS:
        A[BASES.index(s.first), s.index] += 1.0
        A[BASES.index(s.second), s.index] -= 1.0
    return A.T @ np.linalg.pinv(A @ A.T) @ A


# orthogonal projector onto the row space of the (row sum - column sum) map
_Q = np.ascontiguousarray(_marginal_projector())


@dataclass(frozen=True, eq=False)
class StemDistribution:
    """Probability distribution over stems, stored as a 4x4 grid ``p[a, b]``."""

    p: np.ndarray
    atol: float = field(default=SUM_ATOL, repr=False)

    def __post_init__(self):
        p = np.array(self.p, dtype=np.float64).reshape(4, 4)
        if (p < -self.atol).any():
            raise DistributionError(f"negative probability {p.min():.3g}")
        p = np.where(p < 0, 0.0, p)
        if abs(p.sum() - 1.0) > self.atol:
            raise DistributionError(f"probabilities sum to {p.sum():.15g}, not 1")
        p.setflags(write=False)
        object.__setattr__(self, "p", p)

    @classmethod
    def from_grid(cls, grid, normalize: bool = False, atol: float = SUM_ATOL) -> "StemDistribution":
        g = np.array(grid, dtype=np.float64)
        if normalize:
            g = g / g.sum()
        return cls(g, atol=atol)

    @classmethod
    def uniform(cls) -> "StemDistribution":
        return cls(np.full((4, 4), 1 / 16))

    @property
    def flat(self) -> np.ndarray:
        return self.p.ravel()

    def __getitem__(self, stem) -> float:
        return float(self.flat[Stem.parse(stem).index])

    def marginal_residual(self) -> float:
        p1, p2 = marginals(self)
        return float(np.abs(p1 - p2).max())

    def is_wc_symmetric(self, atol: float = 1e-6) -> bool:
        f = self.flat
        return bool(np.abs(f - f[WC_PARTNER]).max() <= atol)


def marginals(p: StemDistribution) -> tuple[np.ndarray, np.ndarray]:
    """Row marginal ``p_1(a)`` and column marginal ``p_2(a)``, indexed A, C, G, T."""
    return p.p.sum(axis=1), p.p.sum(axis=0)


def objective(w: WeightTable, p: StemDistribution) -> float:
    f = p.flat
    return float(np.sum((f - f * f) * w.flat))


def project_distribution(grid) -> StemDistribution:
    """Euclidean projection of an arbitrary 4x4 grid onto the feasible polytope."""
    v = np.ascontiguousarray(np.asarray(grid, dtype=np.float64).ravel())
    x, it = kernels.project_feasible(v, _Q, PROJECTION_TOL, PROJECTION_MAX_ITER)
    if it < 0:
        raise ConvergenceError("projection onto the feasible polytope did not converge")
    return StemDistribution(x)


@dataclass(frozen=True, eq=False)
class TransitionModel:
    """Stationary Markov chain on bases: initial law and row-stochastic transitions."""

    initial: np.ndarray
    transitions: np.ndarray

    def __post_init__(self):
        init = np.array(self.initial, dtype=np.float64).reshape(4)
        P = np.array(self.transitions, dtype=np.float64).reshape(4, 4)
        if (init < 0).any() or abs(init.sum() - 1) > SUM_ATOL:
            raise DistributionError("initial distribution must be a probability vector")
        if (P < 0).any() or np.abs(P.sum(axis=1) - 1).max() > SUM_ATOL:
            raise DistributionError("transition matrix must be row-stochastic")
        init.setflags(write=False)
        P.setflags(write=False)
        object.__setattr__(self, "initial", init)
        object.__setattr__(self, "transitions", P)

    @classmethod
    def uniform(cls) -> "TransitionModel":
        return cls(np.full(4, 0.25), np.full((4, 4), 0.25))

    def cdfs(self) -> tuple[np.ndarray, np.ndarray]:
        """Cumulative tables for inverse-CDF sampling; trailing zero-mass states pinned to 1."""

        def cdf(row):
            c = np.cumsum(row)
            last = np.nonzero(row > 0)[0][-1]
            c[last:] = 1.0
            return c

        return cdf(self.initial), np.stack([cdf(r) for r in self.transitions])

    def stem_distribution(self) -> StemDistribution:
        return StemDistribution.from_grid(self.initial[:, None] * self.transitions, normalize=True)


def conditional_model(p: StemDistribution, threshold: float = 0.0) -> TransitionModel:
    """Markov chain with initial law ``p_1`` and transitions ``p(a, b) / p_1(a)``.

    Entries of ``p`` below ``threshold`` are treated as zero before the rows
    are normalized.
    """
    p1, p2 = marginals(p)
    resid = np.abs(p1 - p2).max()
    if resid > MARGINAL_ATOL:
        raise DistributionError(f"row and column marginals differ by {resid:.3g}")
    for a, mass in zip(BASES, p1):
        if mass <= 0:
            raise DistributionError(f"base {a} has zero marginal probability")
    grid = np.where(p.p < threshold, 0.0, p.p)
    rows = grid.sum(axis=1)
    for a, mass in zip(BASES, rows):
        if mass <= 0:
            raise DistributionError(f"base {a} has no transitions above threshold")
    return TransitionModel(p1 / p1.sum(), grid / rows[:, None])


def markov_condition(m: TransitionModel) -> bool:
    """True iff every ordered base pair is reachable in some m in {1, 2, 3, 4} steps."""
    S = (m.transitions > 0).astype(np.int64)
    power = S.copy()
    reach = S > 0
    for _ in range(3):
        power = ((power @ S) > 0).astype(np.int64)
        reach |= power > 0
    return bool(reach.all())


@dataclass(frozen=True, eq=False)
class CriticalReport:
    table: str
    t_value: float
    optimum: StemDistribution
    forbidden_stems: frozenset
    regular: bool
    markov_ok: bool
    iterations: int = 0
    pg_residual: float = 0.0
    marginal_residual: float = 0.0

    @property
    def forbidden_label(self) -> str:
        return forbidden_label(self.forbidden_stems)

    def to_dict(self) -> dict:
        # marginals from the rounded grid, so from_dict(to_dict()) re-renders identically
        p = np.round(self.optimum.p, 6)
        return {
            "table": self.table,
            "t_value": round(self.t_value, 6),
            "p": {str(s): float(p.flat[s.index]) for s in ALL_STEMS},
            "marginal": {a: round(float(v), 6) for a, v in zip(BASES, p.sum(axis=1))},
            "forbidden": sorted(str(s) for s in self.forbidden_stems),
            "forbidden_label": self.forbidden_label,
            "regular": self.regular,
            "markov_ok": self.markov_ok,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "CriticalReport":
        grid = np.array([d["p"][str(s)] for s in ALL_STEMS]).reshape(4, 4)
        return cls(
            table=d.get("table", "custom"),
            t_value=float(d["t_value"]),
            optimum=StemDistribution(grid, atol=1e-5),
            forbidden_stems=frozenset(Stem.parse(s) for s in d["forbidden"]),
            regular=bool(d["regular"]),
            markov_ok=bool(d.get("markov_ok", d["regular"])),
        )

    def render(self) -> str:
        p = self.optimum.p
        p1, _ = marginals(self.optimum)
        lines = [f"table: {self.table}",
                 "p(a,b)      A       C       G       T   |  p1(a)"]
        for i, a in enumerate(BASES):
            cells = " ".join(f"{v:7.4f}" for v in p[i])
            lines.append(f"{a:<4}{cells}   | {p1[i]:7.4f}")
        forb = ",".join(sorted(str(s) for s in self.forbidden_stems))
        lines += [
            f"T={self.t_value:.4f}",
            f"forbidden={{{forb}}} ({self.forbidden_label})",
            f"markov_condition={str(self.markov_ok).lower()}",
            f"regular={str(self.regular).lower()}",
        ]
        return "\n".join(lines)


def forbidden_label(stems) -> str:
    stems = frozenset(stems)
    if not stems:
        return "none"
    if stems == L4:
        return "L4"
    if stems == L6:
        return "L6"
    return "other"


def maximize_critical(
    w: WeightTable,
    tolerance: float = 1e-9,
    *,
    max_iter: int = MAX_ITER,
    support_threshold: float = SUPPORT_THRESHOLD,
) -> CriticalReport:
    """Maximize ``T_w(p)`` over distributions with equal marginals.

    Parameters
    ----------
    w : WeightTable
    tolerance : float
        Stop when the projected-gradient residual
        ``max|P(p + s grad) - p| / s`` drops to this value.
    max_iter : int
        Iteration cap; exceeding it raises :class:`ConvergenceError`.
    support_threshold : float
        Stems with probability below this are reported as forbidden and
        dropped from the transition support when testing condition M.

    Returns
    -------
    CriticalReport
    """
    if not tolerance > 0:
        raise StemcodeError("tolerance must be positive")
    wflat = np.ascontiguousarray(w.flat, dtype=np.float64)
    step = 1.0 / (2.0 * wflat.max())
    p0 = np.full(16, 1 / 16)
    p, iters, resid, status = kernels.ascend(
        wflat, p0, _Q, step, tolerance, PROJECTION_TOL, max_iter, PROJECTION_MAX_ITER
    )
    if status == 1:
        raise ConvergenceError(f"no convergence after {max_iter} iterations (residual {resid:.3g})")
    if status == 2:
        raise ConvergenceError("projection onto the feasible polytope did not converge")
    p = np.where(p < 0, 0.0, p)
    opt = StemDistribution(p)
    mres = opt.marginal_residual()
    if mres > MARGINAL_ATOL:
        raise ConvergenceError(f"marginal-equality residual {mres:.3g} exceeds {MARGINAL_ATOL}")
    forbidden = frozenset(s for s in ALL_STEMS if opt.flat[s.index] < support_threshold)
    try:
        markov_ok = markov_condition(conditional_model(opt, threshold=support_threshold))
    except DistributionError:
        markov_ok = False
    return CriticalReport(
        table=w.name,
        t_value=objective(w, opt),
        optimum=opt,
        forbidden_stems=forbidden,
        regular=markov_ok,
        markov_ok=markov_ok,
        iterations=int(iters),
        pg_residual=float(resid),
        marginal_residual=mres,
    )


class RateRegime(str, enum.Enum):
    ZERO_RATE = "ZeroRate"
    POSITIVE_RATE = "PositiveRate"
    INDETERMINATE = "Indeterminate"


def classify_rate(
    w: WeightTable,
    d: float,
    *,
    report: CriticalReport | None = None,
    witness: StemDistribution | None = None,
) -> RateRegime:
    """Classify relative distance ``d`` as zero-rate, positive-rate or unresolved.

    For a non-regular table, ``d < T_w`` is resolved as positive only through
    ``witness``: a feasible distribution satisfying condition M with
    ``d < T_w(witness)``.
    """
    if not d > 0:
        raise StemcodeError(f"relative distance must be positive, got {d}")
    report = report or maximize_critical(w)
    if d >= report.t_value:
        return RateRegime.ZERO_RATE
    if report.regular:
        return RateRegime.POSITIVE_RATE
    if witness is not None:
        if not markov_condition(conditional_model(witness)):
            raise DistributionError("witness distribution does not satisfy condition M")
        if d < objective(w, witness):
            return RateRegime.POSITIVE_RATE
    return RateRegime.INDETERMINATE

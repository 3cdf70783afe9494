"""Stem weight tables.

A weight table assigns a positive weight ``w(a, b)`` to each of the 16 stems
and must be invariant under the Watson-Crick map ``(a, b) -> (b', a')``.
Eight published nearest-neighbor samples are embedded; seven of them are
stored as relative weights (every entry divided by ``w(A, A)``) together with
the scale ``w(A, A)`` they were normalized by.

Grid file format::

    # optional comments
    scale 0.43          <- optional, declares w(A,A) for a relative table
    1.00 2.28 1.93 0.63
    2.32 2.84 3.95 1.93
    2.16 3.81 2.84 2.28
    0.51 2.16 2.32 1.00

Rows are ``a`` and columns ``b``, both in the order A, C, G, T. Numbers may
be separated by whitespace or commas.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .alphabet import ALL_STEMS, BASES, Stem
from .errors import WeightTableError

WC_RTOL = 1e-9


class BuiltinTable(str, enum.Enum):
    UNIFIED1998 = "Unified1998"
    GOTOH1981 = "Gotoh1981"
    VOLOGODSKII1984 = "Vologodskii1984"
    BLAKE1991 = "Blake1991"
    BENIGHT1992 = "Benight1992"
    SANTALUCIA1996 = "SantaLucia1996"
    SUGIMOTO1996 = "Sugimoto1996"
    BRESLAUER1986 = "Breslauer1986"

    @classmethod
    def parse(cls, name: str) -> "BuiltinTable":
        key = name.strip().lower()
        for member in cls:
            if member.value.lower() == key:
                return member
        known = ", ".join(m.value for m in cls)
        raise WeightTableError(f"unknown builtin table {name!r} (known: {known})")


# (scale, grid); rows a = A,C,G,T and columns b = A,C,G,T
_BUILTIN_DATA = {
    BuiltinTable.UNIFIED1998: (1.00, [
        [1.00, 1.44, 1.28, 0.88],
        [1.45, 1.84, 2.17, 1.28],
        [1.30, 2.24, 1.84, 1.44],
        [0.58, 1.30, 1.45, 1.00],
    ]),
    BuiltinTable.GOTOH1981: (0.43, [
        [1.00, 2.28, 1.93, 0.63],
        [2.32, 2.84, 3.95, 1.93],
        [2.16, 3.81, 2.84, 2.28],
        [0.51, 2.16, 2.32, 1.00],
    ]),
    BuiltinTable.VOLOGODSKII1984: (0.89, [
        [1.00, 1.35, 1.52, 0.91],
        [1.54, 1.84, 2.24, 1.52],
        [1.40, 2.20, 1.84, 1.35],
        [0.85, 1.40, 1.54, 1.00],
    ]),
    BuiltinTable.BLAKE1991: (0.67, [
        [1.00, 1.69, 1.75, 0.93],
        [1.78, 2.31, 2.79, 1.75],
        [1.67, 2.76, 2.31, 1.69],
        [1.04, 1.67, 1.78, 1.00],
    ]),
    BuiltinTable.BENIGHT1992: (0.93, [
        [1.00, 1.63, 1.11, 0.89],
        [1.35, 1.80, 1.77, 1.11],
        [1.68, 2.62, 1.80, 1.63],
        [0.75, 1.68, 1.35, 1.00],
    ]),
    BuiltinTable.SANTALUCIA1996: (1.02, [
        [1.00, 1.40, 1.14, 0.72],
        [1.35, 1.74, 2.05, 1.14],
        [1.43, 2.24, 1.74, 1.40],
        [0.59, 1.43, 1.35, 1.00],
    ]),
    BuiltinTable.SUGIMOTO1996: (1.20, [
        [1.00, 1.25, 1.25, 0.75],
        [1.42, 1.75, 2.33, 1.25],
        [1.25, 1.92, 1.75, 1.25],
        [0.75, 1.25, 1.42, 1.00],
    ]),
    BuiltinTable.BRESLAUER1986: (1.66, [
        [1.00, 0.68, 0.81, 0.72],
        [1.08, 1.66, 1.98, 0.81],
        [0.85, 1.70, 1.66, 0.68],
        [0.46, 0.85, 1.08, 1.00],
    ]),
}

# index of the Watson-Crick partner of each stem in row-major order
WC_PARTNER = np.array([s.wc().index for s in ALL_STEMS], dtype=np.int64)


def wc_orbits() -> list[tuple[int, ...]]:
    """Stem indices grouped into Watson-Crick orbits (4 singletons, 6 pairs)."""
    seen, orbits = set(), []
    for i in range(16):
        if i in seen:
            continue
        j = int(WC_PARTNER[i])
        orbit = (i,) if i == j else (i, j)
        seen.update(orbit)
        orbits.append(orbit)
    return orbits


def _check_grid(grid: np.ndarray) -> None:
    if grid.shape != (4, 4):
        raise WeightTableError(f"weight grid must be 4x4, got shape {grid.shape}")
    flat = grid.ravel()
    for s in ALL_STEMS:
        v = flat[s.index]
        if not np.isfinite(v) or v <= 0:
            raise WeightTableError(f"weight w({s.first},{s.second})={v} is not positive", cells=[s])
    for s in ALL_STEMS:
        partner = s.wc()
        a, b = flat[s.index], flat[partner.index]
        if abs(a - b) > WC_RTOL * max(1.0, abs(a)):
            raise WeightTableError(
                f"Watson-Crick invariance violated: w({s.first},{s.second})={a} "
                f"but w({partner.first},{partner.second})={b}",
                cells=[s, partner],
            )


@dataclass(frozen=True, eq=False)
class WeightTable:
    """Validated, immutable 4x4 stem weight table.

    ``scale`` is the absolute ``w(A, A)`` for tables stored in relative form
    and 1 otherwise.
    """

    grid: np.ndarray
    name: str = "custom"
    scale: float = 1.0
    flat: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        grid = np.array(self.grid, dtype=np.float64)
        _check_grid(grid)
        if not (np.isfinite(self.scale) and self.scale > 0):
            raise WeightTableError(f"scale must be positive, got {self.scale}")
        grid.setflags(write=False)
        object.__setattr__(self, "grid", grid)
        flat = grid.ravel()
        object.__setattr__(self, "flat", flat)

    def __getitem__(self, stem) -> float:
        return float(self.flat[Stem.parse(stem).index])

    def __eq__(self, other) -> bool:
        if not isinstance(other, WeightTable):
            return NotImplemented
        return np.array_equal(self.grid, other.grid) and self.scale == other.scale

    def __hash__(self):
        return hash((self.grid.tobytes(), self.scale))

    def as_dict(self) -> dict[str, float]:
        return {str(s): float(self.flat[s.index]) for s in ALL_STEMS}

    def to_text(self) -> str:
        lines = [f"# {self.name}"]
        if self.scale != 1.0:
            lines.append(f"scale {self.scale:g}")
        lines += [" ".join(f"{v:.6g}" for v in row) for row in self.grid]
        return "\n".join(lines) + "\n"


def constant_table(c: float = 1.0) -> WeightTable:
    return WeightTable(np.full((4, 4), float(c)), name=f"constant({c:g})")


def load_builtin(table) -> WeightTable:
    """Load one of the embedded tables by id or (case-insensitive) name."""
    tid = table if isinstance(table, BuiltinTable) else BuiltinTable.parse(str(table))
    scale, grid = _BUILTIN_DATA[tid]
    return WeightTable(np.array(grid), name=tid.value, scale=scale)


def builtin_tables() -> list[WeightTable]:
    return [load_builtin(t) for t in BuiltinTable]


def relative(w: WeightTable) -> WeightTable:
    """Divide every weight by ``w(A, A)``; the divisor is folded into ``scale``."""
    aa = float(w.grid[0, 0])
    return WeightTable(w.grid / aa, name=w.name, scale=w.scale * aa)


def min_weight(w: WeightTable) -> float:
    return float(w.grid.min())


_NUM_SPLIT = re.compile(r"[,\s]+")


def parse_table_text(text: str, name: str = "custom") -> WeightTable:
    scale = 1.0
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.lower().startswith("scale"):
            if rows:
                raise WeightTableError(f"line {lineno}: 'scale' must precede the grid")
            parts = _NUM_SPLIT.split(line)
            if len(parts) != 2:
                raise WeightTableError(f"line {lineno}: expected 'scale <value>'")
            try:
                scale = float(parts[1])
            except ValueError:
                raise WeightTableError(f"line {lineno}: bad scale value {parts[1]!r}") from None
            continue
        cells = [c for c in _NUM_SPLIT.split(line) if c]
        if len(cells) != 4:
            raise WeightTableError(f"line {lineno}: expected 4 numbers, got {len(cells)}")
        row = []
        for j, c in enumerate(cells):
            try:
                row.append(float(c))
            except ValueError:
                a, b = BASES[len(rows)] if len(rows) < 4 else "?", BASES[j]
                raise WeightTableError(
                    f"line {lineno}: cell ({a},{b}) is not a number: {c!r}",
                    cells=[Stem(a, b)] if a != "?" else [],
                ) from None
        rows.append(row)
    if len(rows) != 4:
        raise WeightTableError(f"expected 4 grid rows, got {len(rows)}")
    return WeightTable(np.array(rows), name=name, scale=scale)


def load_table_file(path) -> WeightTable:
    path = Path(path)
    return parse_table_text(path.read_text(), name=path.stem)


def resolve_weights(source: str) -> WeightTable:
    """Resolve ``builtin:<id>`` or a grid-file path."""
    if source.lower().startswith("builtin:"):
        return load_builtin(source.split(":", 1)[1])
    return load_table_file(source)


def random_wc_table(rng: np.random.Generator, low: float = 0.5, high: float = 3.0) -> WeightTable:
    """Random Watson-Crick invariant table with entries drawn from ``[low, high]``."""
    flat = np.empty(16)
    for orbit in wc_orbits():
        flat[list(orbit)] = rng.uniform(low, high)
    return WeightTable(flat.reshape(4, 4), name="random")

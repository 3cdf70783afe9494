"""DNA bases, strands, stems and the Watson-Crick reverse complement.

Bases are encoded internally as ``uint8`` codes ``A=0, C=1, G=2, T=3`` so
that the complement of a code ``c`` is simply ``3 - c``.
"""

from __future__ import annotations

from typing import NamedTuple, Union

import numpy as np

from .errors import StrandError

BASES = "ACGT"
_CODE = {b: i for i, b in enumerate(BASES)}
_COMPLEMENT = str.maketrans("ACGT", "TGCA")


def complement(base: str) -> str:
    """Watson-Crick complement of a single base (A<->T, C<->G)."""
    if base not in _CODE:
        raise StrandError(f"not a DNA base: {base!r}")
    return base.translate(_COMPLEMENT)


class Stem(NamedTuple):
    """Ordered pair of adjacent bases."""

    first: str
    second: str

    def __str__(self) -> str:
        return self.first + self.second

    @property
    def index(self) -> int:
        """Row-major position in a 4x4 stem grid."""
        return 4 * _CODE[self.first] + _CODE[self.second]

    def wc(self) -> "Stem":
        """The stem read on the complementary strand: (a, b) -> (b', a')."""
        return Stem(complement(self.second), complement(self.first))

    @classmethod
    def parse(cls, text) -> "Stem":
        if isinstance(text, Stem):
            return text
        if isinstance(text, tuple):
            text = "".join(text)
        s = str(text).upper()
        if len(s) != 2 or any(c not in _CODE for c in s):
            raise StrandError(f"not a stem: {text!r}")
        return cls(s[0], s[1])


ALL_STEMS = tuple(Stem(a, b) for a in BASES for b in BASES)


class Strand:
    """An oriented DNA sequence over {A, C, G, T} with at least one stem.

    Lowercase input is accepted and normalized. Instances are immutable and
    hashable; equality is by sequence.
    """

    __slots__ = ("_seq", "_codes")

    def __init__(self, seq: Union[str, "Strand"]):
        if isinstance(seq, Strand):
            self._seq = seq._seq
            self._codes = seq._codes
            return
        s = str(seq).strip().upper()
        bad = sorted({c for c in s if c not in _CODE})
        if bad:
            raise StrandError(f"invalid base(s) {''.join(bad)!r} in strand {seq!r}")
        if len(s) < 2:
            raise StrandError(f"strand must have length >= 2, got {len(s)}")
        self._seq = s
        codes = np.frombuffer(s.encode("ascii"), dtype=np.uint8)
        codes = np.searchsorted(np.frombuffer(b"ACGT", dtype=np.uint8), codes).astype(np.uint8)
        codes.setflags(write=False)
        self._codes = codes

    @classmethod
    def from_codes(cls, codes) -> "Strand":
        return cls("".join(BASES[int(c)] for c in codes))

    @property
    def codes(self) -> np.ndarray:
        """Read-only ``uint8`` array of base codes."""
        return self._codes

    def __len__(self) -> int:
        return len(self._seq)

    def __getitem__(self, i):
        return self._seq[i]

    def __iter__(self):
        return iter(self._seq)

    def __str__(self) -> str:
        return self._seq

    def __repr__(self) -> str:
        return f"Strand({self._seq!r})"

    def __eq__(self, other) -> bool:
        if isinstance(other, Strand):
            return self._seq == other._seq
        if isinstance(other, str):
            return self._seq == other.upper()
        return NotImplemented

    def __lt__(self, other: "Strand") -> bool:
        return self._seq < Strand(other)._seq

    def __hash__(self) -> int:
        return hash(self._seq)


StrandLike = Union[str, Strand]


def as_strand(x: StrandLike) -> Strand:
    return x if isinstance(x, Strand) else Strand(x)


def reverse_complement(x: StrandLike) -> Strand:
    """Reverse the strand and complement every base.

    >>> str(reverse_complement("AACG"))
    'CGTT'
    """
    s = str(as_strand(x))
    return Strand(s[::-1].translate(_COMPLEMENT))


def is_self_reverse_complementary(x: StrandLike) -> bool:
    x = as_strand(x)
    return x == reverse_complement(x)


def stems_of(x: StrandLike) -> list[Stem]:
    """The ``n - 1`` consecutive pairs ``(x_i, x_{i+1})``."""
    s = str(as_strand(x))
    return [Stem(s[i], s[i + 1]) for i in range(len(s) - 1)]


def encode_many(strands) -> np.ndarray:
    """Stack equal-length strands into an ``(m, n)`` uint8 code matrix."""
    strands = [as_strand(s) for s in strands]
    if not strands:
        return np.zeros((0, 0), dtype=np.uint8)
    n = len(strands[0])
    if any(len(s) != n for s in strands):
        raise StrandError("strands have different lengths")
    return np.stack([s.codes for s in strands]).astype(np.uint8)


def reverse_complement_codes(codes: np.ndarray) -> np.ndarray:
    """Reverse complement on a code matrix (last axis is position)."""
    return (3 - codes[..., ::-1]).astype(np.uint8)


def all_strand_codes(n: int) -> np.ndarray:
    """Every strand of length ``n`` in lexicographic order, as a ``(4**n, n)`` matrix."""
    idx = np.arange(4**n)
    shifts = 2 * np.arange(n - 1, -1, -1)
    return ((idx[:, None] >> shifts) & 3).astype(np.uint8)

"""Shared domain types: bit strings, output symbols, distance/split primitives.

Conventions used throughout the package:

* Symbol sequences are 1-indexed in documentation and in reported indices
  (split values, witness positions).  The lone exception is the Pascal
  matrix, which is 0-indexed.
* The blank symbol is a first-class value, not an absence: lagged encoders
  emit it before their first full block and it participates in Hamming
  comparisons (blank equals blank, and nothing else).
* Bit order is most-significant bit first everywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


class LengthMismatchError(ValueError):
    """Two sequences that must have equal length do not."""


class BudgetExceededError(RuntimeError):
    """An exhaustive enumeration would exceed its configured budget."""


class _Blank:
    """The blank symbol.  Compares equal only to itself; serializes as "-"."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "Blank"

    def __reduce__(self):
        return (_Blank, ())


BLANK = _Blank()


@dataclass(frozen=True)
class FixedBits:
    """A fixed-width bit string packed into an int, MSB first."""

    width: int
    value: int

    def __post_init__(self):
        if self.width < 0:
            raise ValueError("width must be non-negative")
        if self.value < 0 or self.value >> self.width:
            raise ValueError("payload does not fit in %d bits" % self.width)

    def bits(self) -> tuple:
        return tuple((self.value >> (self.width - 1 - i)) & 1 for i in range(self.width))


@dataclass(frozen=True)
class IntPair:
    """A pair of non-negative integers (the symbols of the integer tree code)."""

    a: int
    b: int

    def __post_init__(self):
        if self.a < 0 or self.b < 0:
            raise ValueError("IntPair components must be non-negative")


@dataclass(frozen=True)
class SymbolTuple:
    """A composite symbol made of other output symbols."""

    parts: tuple

    def __post_init__(self):
        if not self.parts:
            raise ValueError("SymbolTuple must have at least one part")


@dataclass(frozen=True)
class AlphabetDescriptor:
    """Exact size accounting for the output alphabet at one position."""

    position: int
    total_bits: int
    structure: tuple  # of (component name, bit count or "blank")

    def __post_init__(self):
        counted = sum(b for _, b in self.structure if b != "blank")
        if counted != self.total_bits:
            raise ValueError("total_bits inconsistent with structure")


class BitString:
    """An immutable sequence of bits, MSB first."""

    __slots__ = ("bits",)

    def __init__(self, bits: Iterable[int]):
        bits = tuple(int(b) for b in bits)
        if any(b not in (0, 1) for b in bits):
            raise ValueError("bits must be 0 or 1")
        object.__setattr__(self, "bits", bits)

    @classmethod
    def from_text(cls, text: str) -> "BitString":
        return cls(int(c) for c in text.strip())

    @classmethod
    def from_int(cls, value: int, width: int) -> "BitString":
        if value < 0 or value >> width:
            raise ValueError("value does not fit in %d bits" % width)
        return cls(((value >> (width - 1 - i)) & 1) for i in range(width))

    def to_int(self) -> int:
        v = 0
        for b in self.bits:
            v = (v << 1) | b
        return v

    def __len__(self):
        return len(self.bits)

    def __iter__(self):
        return iter(self.bits)

    def __getitem__(self, idx):
        got = self.bits[idx]
        return BitString(got) if isinstance(idx, slice) else got

    def __eq__(self, other):
        return isinstance(other, BitString) and self.bits == other.bits

    def __hash__(self):
        return hash(self.bits)

    def __repr__(self):
        return "BitString(%s)" % "".join(str(b) for b in self.bits)

    def __add__(self, other):
        return BitString(self.bits + tuple(other))


def split(x: Sequence, y: Sequence) -> int:
    """Length of the longest common prefix of x and y.

    Returns len(x) when the sequences are equal.  Raises on length mismatch.
    """
    if len(x) != len(y):
        raise LengthMismatchError("split: |x|=%d != |y|=%d" % (len(x), len(y)))
    s = 0
    for a, b in zip(x, y):
        if a != b:
            break
        s += 1
    return s


def hamming_distance(x: Sequence, y: Sequence) -> int:
    """Number of positions where x and y differ (symbol-level equality)."""
    if len(x) != len(y):
        raise LengthMismatchError("hamming_distance: |x|=%d != |y|=%d" % (len(x), len(y)))
    return sum(1 for a, b in zip(x, y) if a != b)


def hamming_weight(x: Sequence, zero) -> int:
    """Number of positions of x whose symbol differs from `zero`."""
    return sum(1 for a in x if a != zero)


def serialize_symbol(sym) -> str:
    """Render an output symbol using the package-wide text conventions.

    Blank -> "-";  FixedBits -> lowercase hex, MSB first (width is carried
    out of band);  plain ints (Nat) -> decimal;  IntPair and SymbolTuple ->
    comma-joined components in parentheses.
    """
    if sym is BLANK or isinstance(sym, _Blank):
        return "-"
    if isinstance(sym, FixedBits):
        ndigits = max(1, (sym.width + 3) // 4)
        return format(sym.value, "0%dx" % ndigits)
    if isinstance(sym, int):
        return str(sym)
    if isinstance(sym, IntPair):
        return "(%d,%d)" % (sym.a, sym.b)
    if isinstance(sym, SymbolTuple):
        return "(" + ",".join(serialize_symbol(p) for p in sym.parts) + ")"
    raise TypeError("cannot serialize %r" % (sym,))

"""Lagged tree codes: the truncated block composition and its untruncated
interleaving.

Truncated form (input up to s^2 bits): input block j (bits (j-1)s+1 .. js)
is packed through the integer tree code into one wide symbol, which the
block code re-encodes into s short symbols written at output positions
js .. js+s-1.  Positions 1 .. s-1 carry the blank symbol (no block has
completed yet).

Untruncated form (any input length): fresh truncated encoders are started
every h = s^2/2 positions, each living for 2h positions, so every output
position carries a pair of short symbols -- one from each of the two
overlapping instances (blank where an instance has not yet emitted).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

from .core import BLANK, FixedBits
from .ecc import CodeSpecC
from .linearcode import BoostParams
from .packing import (
    BoostedPackedParams,
    PackedCodeParams,
    StreamEncoderBlockTc,
    StreamEncoderBoostedBlockTc,
)


@dataclass(frozen=True)
class LaggedParams:
    """Block width s (even), minimum lag ell = a*s with a >= 2, and the
    block code used to spread each packed symbol over its block."""

    s: int
    ell: int
    spec: CodeSpecC
    boost: Optional[BoostParams] = None

    def __post_init__(self):
        if self.s < 2 or self.s % 2:
            raise ValueError("s must be even and at least 2")
        if self.ell % self.s or self.ell < 2 * self.s:
            raise ValueError("ell must be a multiple of s with ell/s >= 2")
        if self.spec.s != self.s:
            raise ValueError("block code emits %d symbols, need %d" % (self.spec.s, self.s))
        expected = (
            3 * self.s
            if self.boost is None
            else BoostedPackedParams(self.s, self.boost).symbol_bits
        )
        if self.spec.input_bits != expected:
            raise ValueError(
                "block code consumes %d bits, packed symbols have %d"
                % (self.spec.input_bits, expected)
            )

    @property
    def a(self) -> int:
        return self.ell // self.s

    def distance_bound(self) -> Fraction:
        """The guaranteed ell-lagged distance delta*(1/2 - 3/(2a)) of the
        truncated and untruncated encoders (base*(...) for boosted base)."""
        base = (
            Fraction(1, 2)
            if self.boost is None
            else Fraction(self.boost.r, self.boost.r + self.boost.s)
        )
        return self.spec.provable_delta * (base - Fraction(3, 2 * self.a))


class StreamEncoderTruncatedLagged:
    """Online truncated lagged encoder: one bit in, one symbol out."""

    def __init__(self, params: LaggedParams):
        self.params = params
        s = params.s
        if params.boost is None:
            self.packer = StreamEncoderBlockTc(PackedCodeParams(s))
        else:
            self.packer = StreamEncoderBoostedBlockTc(BoostedPackedParams(s, params.boost))
        self.pos = 0
        self.block_bits: List[int] = []
        self.codeword: Optional[Tuple[int, ...]] = None
        self.codeword_start = 0

    def push(self, bit: int):
        s = self.params.s
        if self.pos >= s * s:
            raise ValueError("truncated encoder accepts at most %d bits" % (s * s))
        self.pos += 1
        self.block_bits.append(bit)
        if len(self.block_bits) == s:
            packed = self.packer.push(self.block_bits)
            self.block_bits = []
            self.codeword = self.params.spec.symbols_for(packed.value)
            self.codeword_start = self.pos
        if self.codeword is None:
            return BLANK
        return FixedBits(
            self.params.spec.c_delta, self.codeword[self.pos - self.codeword_start]
        )

    def clone(self) -> "StreamEncoderTruncatedLagged":
        other = StreamEncoderTruncatedLagged.__new__(StreamEncoderTruncatedLagged)
        other.params = self.params
        other.packer = self.packer.clone()
        other.pos = self.pos
        other.block_bits = list(self.block_bits)
        other.codeword = self.codeword
        other.codeword_start = self.codeword_start
        return other


def encode_truncated_lagged(params: LaggedParams, bits) -> tuple:
    """Encode a whole bit sequence (length <= s^2) through the truncated code."""
    enc = StreamEncoderTruncatedLagged(params)
    return tuple(enc.push(int(b)) for b in bits)


@dataclass(frozen=True)
class LaggedSymbol:
    """The per-position pair of the untruncated code: (older instance,
    newer instance); blank components where an instance has not emitted."""

    left: object
    right: object


class StreamEncoderUntruncatedLagged:
    """Online untruncated lagged encoder; any input length.

    A fresh truncated instance starts at position j*h + 1 for h = s^2/2 and
    lives for 2h positions; every position is covered by exactly two
    instances (one at the string start), the older on the left and the
    newer on the right of the emitted pair.
    """

    def __init__(self, params: LaggedParams):
        self.params = params
        self.h = params.s * params.s // 2
        self.pos = 0
        self.older: Optional[StreamEncoderTruncatedLagged] = None
        self.newer: Optional[StreamEncoderTruncatedLagged] = None

    def push(self, bit: int) -> LaggedSymbol:
        self.pos += 1
        _, r = divmod(self.pos, self.h)
        if r == 1:
            # Position j*h + 1: instance j spawns as `newer`, instance j-1
            # moves to `older`, instance j-2 retires having consumed exactly
            # its 2h = s^2 bits (its last bit was position j*h).
            self.older = self.newer
            self.newer = StreamEncoderTruncatedLagged(self.params)
        left = self.older.push(bit) if self.older is not None else BLANK
        return LaggedSymbol(left, self.newer.push(bit))

    def clone(self) -> "StreamEncoderUntruncatedLagged":
        other = StreamEncoderUntruncatedLagged.__new__(StreamEncoderUntruncatedLagged)
        other.params = self.params
        other.h = self.h
        other.pos = self.pos
        other.older = self.older.clone() if self.older is not None else None
        other.newer = self.newer.clone() if self.newer is not None else None
        return other


def encode_untruncated_lagged(params: LaggedParams, bits) -> tuple:
    """Encode a whole bit sequence through the untruncated code."""
    enc = StreamEncoderUntruncatedLagged(params)
    return tuple(enc.push(int(b)) for b in bits)

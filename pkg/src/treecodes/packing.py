"""Bit-packing around the integer tree code: s-bit blocks in, 3s-bit symbols out.

Block i is read as an integer a_i in [0, 2^s - 1] (MSB first) and fed to
the integer tree code truncated at n = s.  The output pair (a_i, b_i) is
packed as s bits of a_i followed by 2s bits of b_i; the magnitude bound
b_i <= 2^s * max a_j < 2^{2s} makes the 2s-bit budget exact.

The boosted variant replaces the (a_i, b_i) pair with the zero-padded
(s_int, r) integer code over wider coordinates; it is used only by the
arbitrary-distance pipeline.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .core import BitString, FixedBits
from .linearcode import BoostParams, StreamEncoderTcASr
from .pascal import pascal_matrix


@dataclass(frozen=True)
class PackedCodeParams:
    """Block width s; the code accepts at most n = s blocks of s bits each."""

    s: int

    def __post_init__(self):
        if self.s < 1:
            raise ValueError("s must be at least 1")

    @property
    def n(self) -> int:
        return self.s

    @property
    def symbol_bits(self) -> int:
        return 3 * self.s


class StreamEncoderBlockTc:
    """Online packed encoder: push one s-bit block, get one 3s-bit symbol."""

    def __init__(self, params: PackedCodeParams):
        self.params = params
        s = params.s
        self.rows = pascal_matrix(s - 1).rows
        self.inputs: List[int] = []

    def push(self, block) -> FixedBits:
        s = self.params.s
        if len(block) != s:
            raise ValueError("block must be exactly %d bits" % s)
        if len(self.inputs) >= s:
            raise ValueError("encoder already consumed %d blocks" % s)
        a = BitString(block).to_int() if not isinstance(block, BitString) else block.to_int()
        i = len(self.inputs)
        self.inputs.append(a)
        row = self.rows[i]
        b = sum(row[j] * self.inputs[j] for j in range(i + 1))
        return FixedBits(3 * s, (a << (2 * s)) | b)

    def clone(self) -> "StreamEncoderBlockTc":
        other = StreamEncoderBlockTc.__new__(StreamEncoderBlockTc)
        other.params = self.params
        other.rows = self.rows
        other.inputs = list(self.inputs)
        return other


def encode_block_tc(params: PackedCodeParams, blocks: Sequence) -> Tuple[FixedBits, ...]:
    """Encode up to s blocks of s bits each into 3s-bit symbols."""
    if len(blocks) > params.s:
        raise ValueError("at most %d blocks allowed" % params.s)
    enc = StreamEncoderBlockTc(params)
    return tuple(enc.push(b) for b in blocks)


@dataclass(frozen=True)
class BoostedPackedParams:
    """Packed parameters for the zero-padded integer code.

    Each s-bit input block still packs to one integer a < 2^s, but the
    integer code appends boost.r zeros per input, so one input block yields
    boost.r + 1 output coordinates.  Each coordinate of the padded code at
    dimension n = (r+1)s is below 2^{(r+1)s} * 2^s, so a (r+2)s-bit field
    per coordinate always suffices; the packed symbol has
    (r+1)*(r+2)*s bits.
    """

    s: int
    boost: BoostParams

    def __post_init__(self):
        if self.s < 1:
            raise ValueError("s must be at least 1")
        if self.boost.s != 1:
            raise ValueError("packed boosting supports one integer per block (s=1 boost)")

    @property
    def coord_bits(self) -> int:
        return (self.boost.r + 2) * self.s

    @property
    def symbol_bits(self) -> int:
        return (self.boost.r + 1) * self.coord_bits


class StreamEncoderBoostedBlockTc:
    """Online packed encoder over the zero-padded integer code."""

    def __init__(self, params: BoostedPackedParams):
        self.params = params
        width = params.boost.r + 1
        self.inner = StreamEncoderTcASr(
            pascal_matrix(width * params.s - 1), params.boost, params.s
        )

    def push(self, block) -> FixedBits:
        p = self.params
        if len(block) != p.s:
            raise ValueError("block must be exactly %d bits" % p.s)
        a = BitString(block).to_int() if not isinstance(block, BitString) else block.to_int()
        coords = self.inner.push((a,))
        value = 0
        for c in coords:
            if c >> p.coord_bits:
                raise AssertionError("coordinate exceeds its packed width")
            value = (value << p.coord_bits) | c
        return FixedBits(p.symbol_bits, value)

    def clone(self) -> "StreamEncoderBoostedBlockTc":
        other = StreamEncoderBoostedBlockTc.__new__(StreamEncoderBoostedBlockTc)
        other.params = self.params
        other.inner = self.inner.clone()
        return other


def encode_boosted_block_tc(
    params: BoostedPackedParams, blocks: Sequence
) -> Tuple[FixedBits, ...]:
    """Encode up to s blocks under the boosted packed code."""
    if len(blocks) > params.s:
        raise ValueError("at most %d blocks allowed" % params.s)
    enc = StreamEncoderBoostedBlockTc(params)
    return tuple(enc.push(b) for b in blocks)

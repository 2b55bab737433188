"""Linear tree codes generated by triangular matrices, over the integers.

The basic code sends x_1..x_k to the pairs (x_i, (Ax)_i): the generator
pair (I, A).  Its boosted variant pads each s-entry input block with r
zeros before applying A, trading rate for distance r/(r+s).  Instantiating
A with the Pascal matrix gives the explicit tree code over the
non-negative integers whose check coordinate stays below 2^k * max|a_j|.

All encoders are online: the symbol at position i is emitted as soon as
input i is consumed, and depends only on inputs 1..i.  Streaming cost is
O(i) big-int multiplies per position (the input prefix is retained and
row i of A is evaluated incrementally).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .core import IntPair
from .pascal import LowerTriangularMatrix, pascal_matrix


@dataclass(frozen=True)
class GeneratorPair:
    """The (A0, A1) generator pair of a rate-1/2 linear tree code.

    A0 is the identity here (systematic first coordinate); only A1 = A
    varies.  n caps the number of symbols the pair can generate.
    """

    A1: LowerTriangularMatrix
    n: int
    A0: Optional[LowerTriangularMatrix] = None

    def __post_init__(self):
        a0 = self.A0 if self.A0 is not None else LowerTriangularMatrix.identity(self.A1.n)
        object.__setattr__(self, "A0", a0)
        if self.A0.n != self.A1.n:
            raise ValueError("generator matrices must share a dimension")
        if not (0 < self.n <= self.A1.n):
            raise ValueError("truncation length outside matrix dimension")


@dataclass(frozen=True)
class BoostParams:
    """Zero-padding parameters: blocks of s inputs, r appended zeros each."""

    s: int
    r: int

    def __post_init__(self):
        if self.s < 1 or self.r < 1:
            raise ValueError("s and r must be at least 1")


@dataclass(frozen=True)
class CxRxReport:
    """The two index sets from the distance argument for TNS generators.

    C_x collects the (1-indexed) positions of non-zero inputs; R_x the
    positions i past the split against zero where (Ax)_i = 0.  For a TNS
    matrix |C_x| > |R_x| for every non-zero x.
    """

    C_x: frozenset
    R_x: frozenset
    ell: int


class StreamEncoderTcA:
    """Online encoder for the (I, A) code: push x_i, get (x_i, (Ax)_i)."""

    def __init__(self, A: LowerTriangularMatrix, k: Optional[int] = None):
        self.A = A
        self.limit = A.n if k is None else k
        if self.limit > A.n:
            raise ValueError("k exceeds matrix dimension")
        self.inputs: List[int] = []

    def push(self, x_i: int) -> IntPair:
        i = len(self.inputs)
        if i >= self.limit:
            raise ValueError("encoder already consumed %d symbols" % self.limit)
        self.inputs.append(x_i)
        row = self.A.rows[i]
        b = sum(row[j] * self.inputs[j] for j in range(i + 1))
        return IntPair(x_i, b)


def encode_tc_a(A: LowerTriangularMatrix, x: Sequence[int]) -> Tuple[IntPair, ...]:
    """Encode x under the (I, A) code; position i carries (x_i, (Ax)_i)."""
    if len(x) > A.n:
        raise ValueError("input length %d exceeds matrix dimension %d" % (len(x), A.n))
    enc = StreamEncoderTcA(A, len(x))
    return tuple(enc.push(v) for v in x)


class StreamEncoderTcASr:
    """Online block encoder for the zero-padded code.

    Each pushed block of s integers is extended with r zeros, the matrix is
    applied to the concatenation of all extended blocks, and the r+s output
    coordinates belonging to the new block are emitted.
    """

    def __init__(self, A: LowerTriangularMatrix, params: BoostParams, k: Optional[int] = None):
        self.A = A
        self.params = params
        self.width = params.r + params.s
        self.limit = A.n // self.width if k is None else k
        if self.width * self.limit > A.n:
            raise ValueError("(r+s)*k exceeds matrix dimension")
        self.padded: List[int] = []
        self.blocks_done = 0

    def push(self, block: Sequence[int]) -> Tuple[int, ...]:
        if len(block) != self.params.s:
            raise ValueError("block must have exactly %d entries" % self.params.s)
        if self.blocks_done >= self.limit:
            raise ValueError("encoder already consumed %d blocks" % self.limit)
        self.padded.extend(block)
        self.padded.extend([0] * self.params.r)
        lo = self.blocks_done * self.width
        out = []
        for i in range(lo, lo + self.width):
            row = self.A.rows[i]
            out.append(sum(row[j] * self.padded[j] for j in range(i + 1)))
        self.blocks_done += 1
        return tuple(out)

    def clone(self) -> "StreamEncoderTcASr":
        other = StreamEncoderTcASr.__new__(StreamEncoderTcASr)
        other.A = self.A
        other.params = self.params
        other.width = self.width
        other.limit = self.limit
        other.padded = list(self.padded)
        other.blocks_done = self.blocks_done
        return other


def encode_tc_a_sr(
    A: LowerTriangularMatrix, params: BoostParams, blocks: Sequence[Sequence[int]]
) -> Tuple[Tuple[int, ...], ...]:
    """Encode s-entry blocks under the zero-padded (s, r) code."""
    enc = StreamEncoderTcASr(A, params, len(blocks))
    return tuple(enc.push(b) for b in blocks)


class StreamEncoderIntTreeCode(StreamEncoderTcA):
    """The integer tree code: the (I, A) code with A the Pascal matrix."""

    def __init__(self, k: int):
        if k < 1:
            raise ValueError("k must be positive")
        super().__init__(pascal_matrix(k - 1), k)


def encode_int_treecode(a: Sequence[int]) -> Tuple[IntPair, ...]:
    """Encode non-negative integers a_0..a_{k-1}; pairs (a_i, sum C(i,j) a_j).

    The check coordinate at position i is at most 2^i * max_j a_j because
    Pascal row i sums to 2^i.
    """
    if not a:
        return ()
    if any(v < 0 for v in a):
        raise ValueError("inputs must be non-negative")
    enc = StreamEncoderIntTreeCode(len(a))
    return tuple(enc.push(v) for v in a)


def cx_rx_report(A: LowerTriangularMatrix, x: Sequence[int]) -> CxRxReport:
    """Compute C_x, R_x and the split against zero, all 1-indexed."""
    k = len(x)
    if k > A.n:
        raise ValueError("input length exceeds matrix dimension")
    if all(v == 0 for v in x):
        raise ValueError("x must be non-zero")
    ell = 0
    for v in x:
        if v != 0:
            break
        ell += 1
    C_x = frozenset(j + 1 for j, v in enumerate(x) if v != 0)
    ax = [sum(A.rows[i][j] * x[j] for j in range(i + 1)) for i in range(k)]
    R_x = frozenset(i + 1 for i in range(ell, k) if ax[i] == 0)
    return CxRxReport(C_x, R_x, ell)

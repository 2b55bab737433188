"""The block code C: {0,1}^(3s) -> ({0,1}^c)^s used by the lagged encoders.

Two recipes are provided:

* RS-only: one Reed-Solomon code over GF(2^m) with m chosen so that the
  provable distance 1 - (k-1)/s clears the target; the per-symbol width c
  grows like log s.
* Concatenated: an outer Reed-Solomon code whose symbols are re-encoded by
  a seeded random-linear binary inner code of exhaustively verified
  distance, then the bit stream is regrouped into exactly s symbols of a
  constant width c (at fixed target distance).

Every shipped code records a provable relative distance derived purely
from its components, so downstream distance guarantees are statements
about the concrete object, not about a random ensemble.

Field moduli are the lexicographically least irreducible polynomial of
each degree, computed on first use; Reed-Solomon evaluation points are
the field elements 0, 1, 2, ... in their integer representation.
"""

from __future__ import annotations

import math
import os
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple

MAX_FIELD_DEGREE = 24
INNER_EXPANSION = 8  # inner codeword bits per message bit
INNER_DELTA = 0.3  # inner relative distance target of the concatenated recipe
INNER_ATTEMPTS = 10_000


class InfeasibleCodeError(ValueError):
    """Requested code parameters are provably or practically unattainable."""


def _poly_mulmod(a: int, b: int, mod: int, deg: int) -> int:
    res = 0
    while b:
        if b & 1:
            res ^= a
        b >>= 1
        a <<= 1
        if a >> deg & 1:
            a ^= mod
    return res


def _poly_gcd(a: int, b: int) -> int:
    while b:
        while a.bit_length() >= b.bit_length() and a:
            a ^= b << (a.bit_length() - b.bit_length())
        a, b = b, a
    return a


def _is_irreducible(f: int, m: int) -> bool:
    # Rabin's test: x^(2^m) == x mod f, and gcd(x^(2^(m/p)) - x, f) = 1
    # for every prime p dividing m.
    if m == 1:
        return f in (0b10, 0b11)
    x = 0b10
    t = x
    for i in range(1, m + 1):
        t = _poly_mulmod(t, t, f, m)
        if m % i == 0 and i < m and _is_prime(m // i):
            if _poly_gcd(t ^ x, f) != 1:
                return False
    return t == x


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d for d in range(2, int(math.isqrt(p)) + 1))


@lru_cache(maxsize=None)
def canonical_modulus(m: int) -> int:
    """Lexicographically least irreducible polynomial of degree m over GF(2)."""
    if not 1 <= m <= MAX_FIELD_DEGREE:
        raise ValueError("degree must be in [1, %d]" % MAX_FIELD_DEGREE)
    for f in range(1 << m, 1 << (m + 1)):
        if _is_irreducible(f, m):
            return f
    raise AssertionError("no irreducible polynomial of degree %d" % m)


@dataclass(frozen=True)
class GF2mElement:
    """An element of GF(2^m) in polynomial representation."""

    m: int
    value: int

    def __post_init__(self):
        if not 0 <= self.value < (1 << self.m):
            raise ValueError("value outside field of degree %d" % self.m)


def gf_mul(a: GF2mElement, b: GF2mElement) -> GF2mElement:
    if a.m != b.m:
        raise ValueError("operands from different fields")
    return GF2mElement(a.m, gf_mul_int(a.m, a.value, b.value))


def gf_mul_int(m: int, a: int, b: int) -> int:
    """Field multiplication on raw int representations (hot-path form)."""
    return _poly_mulmod(a, b, canonical_modulus(m), m)


def gf_add(a: GF2mElement, b: GF2mElement) -> GF2mElement:
    if a.m != b.m:
        raise ValueError("operands from different fields")
    return GF2mElement(a.m, a.value ^ b.value)


def gf_inv(a: GF2mElement) -> GF2mElement:
    if a.value == 0:
        raise ZeroDivisionError("zero has no inverse")
    # a^(2^m - 2) by square-and-multiply.
    e = (1 << a.m) - 2
    base, acc = a.value, 1
    while e:
        if e & 1:
            acc = gf_mul_int(a.m, acc, base)
        base = gf_mul_int(a.m, base, base)
        e >>= 1
    return GF2mElement(a.m, acc)


@dataclass(frozen=True)
class RSParams:
    """Reed-Solomon over GF(2^m): degree < k_msg polynomials evaluated at
    the field elements 0 .. n_code-1 (integer representation order)."""

    m: int
    k_msg: int
    n_code: int

    def __post_init__(self):
        if not 1 <= self.k_msg <= self.n_code <= (1 << self.m):
            raise ValueError("need 1 <= k_msg <= n_code <= 2^m")

    @property
    def distance(self) -> int:
        return self.n_code - self.k_msg + 1


def rs_encode(params: RSParams, msg: Sequence[int]) -> Tuple[int, ...]:
    """Evaluate the polynomial with coefficients msg (constant term first)."""
    if len(msg) != params.k_msg:
        raise ValueError("message must have %d symbols" % params.k_msg)
    m = params.m
    out = []
    for point in range(params.n_code):
        # Horner evaluation at the field element `point`.
        acc = 0
        for c in reversed(msg):
            acc = gf_mul_int(m, acc, point) ^ c
        out.append(acc)
    return tuple(out)


def rs_min_distance_exhaustive(params: RSParams) -> int:
    """Exact minimum distance by scanning all non-zero messages (linearity)."""
    best = params.n_code
    for idx in range(1, (1 << params.m) ** params.k_msg):
        msg = []
        v = idx
        for _ in range(params.k_msg):
            msg.append(v % (1 << params.m))
            v //= 1 << params.m
        w = sum(1 for c in rs_encode(params, msg) if c)
        best = min(best, w)
    return best


@dataclass(frozen=True)
class InnerCode:
    """A binary linear code with an exhaustively verified minimum distance."""

    m_in: int
    n_in: int
    delta_in: float
    seed: int
    generator: tuple  # m_in rows, each an n_in-bit int (MSB = first bit)
    verified_distance: int

    def encode(self, msg: int) -> int:
        out = 0
        for row_idx in range(self.m_in):
            if (msg >> (self.m_in - 1 - row_idx)) & 1:
                out ^= self.generator[row_idx]
        return out


def _exhaustive_min_weight(rows: Sequence[int], m_in: int) -> int:
    best = None
    # Gray-code walk: flip one generator row per step.
    word = 0
    prev_gray = 0
    for idx in range(1, 1 << m_in):
        gray = idx ^ (idx >> 1)
        word ^= rows[(gray ^ prev_gray).bit_length() - 1]
        prev_gray = gray
        w = word.bit_count()
        if best is None or w < best:
            best = w
    return best


def find_inner_code(
    m_in: int, n_in: int, delta_in: float, seed: int, attempts: int = INNER_ATTEMPTS
) -> InnerCode:
    """Sample seeded random generator matrices until one has verified
    minimum distance >= delta_in * n_in.

    Deterministic given the seed: the first success in the sampling stream
    is returned along with its exhaustively computed distance.
    """
    if m_in > 20:
        raise ValueError("m_in > 20 exceeds the exhaustive verification budget")
    required = math.ceil(delta_in * n_in - 1e-12)
    if required > n_in - m_in + 1:
        raise InfeasibleCodeError(
            "Singleton bound: distance <= n-k+1 = %d < required %d"
            % (n_in - m_in + 1, required)
        )
    rng = random.Random(seed)
    for _ in range(attempts):
        rows = tuple(rng.getrandbits(n_in) for _ in range(m_in))
        d = _exhaustive_min_weight(rows, m_in)
        if d >= required:
            return InnerCode(m_in, n_in, delta_in, seed, rows, d)
    raise InfeasibleCodeError(
        "no generator found in %d attempts; the Gilbert-Varshamov rate bound "
        "1 - H2(%.3f) = %.4f likely excludes rate %d/%d = %.4f"
        % (attempts, delta_in, 1 - _h2(delta_in), m_in, n_in, m_in / n_in)
    )


def _h2(x: float) -> float:
    if x <= 0 or x >= 1:
        return 0.0
    return -x * math.log2(x) - (1 - x) * math.log2(1 - x)


def save_inner_code(code: InnerCode, path: str) -> None:
    """Write the cache format: header line, then hex generator rows."""
    ndig = max(1, (code.n_in + 3) // 4)
    with open(path, "w") as fh:
        fh.write(
            "%d %d %s %d %d\n"
            % (code.m_in, code.n_in, repr(code.delta_in), code.seed, code.verified_distance)
        )
        for row in code.generator:
            fh.write(format(row, "0%dx" % ndig) + "\n")


def load_inner_code(path: str) -> InnerCode:
    """Read the cache format and re-verify the stored distance exhaustively."""
    with open(path) as fh:
        head = fh.readline().split()
        m_in, n_in = int(head[0]), int(head[1])
        delta_in, seed, stored = float(head[2]), int(head[3]), int(head[4])
        rows = tuple(int(fh.readline().strip(), 16) for _ in range(m_in))
    code = InnerCode(m_in, n_in, delta_in, seed, rows, stored)
    if _exhaustive_min_weight(rows, m_in) != stored:
        raise ValueError("cached distance does not re-verify: %s" % path)
    return code


def cached_inner_code(
    m_in: int, n_in: int, delta_in: float, seed: int, cache_dir: Optional[str] = None
) -> InnerCode:
    """find_inner_code with a disk cache keyed by (m_in, n_in, delta_in, seed)."""
    if cache_dir is None:
        return find_inner_code(m_in, n_in, delta_in, seed)
    os.makedirs(cache_dir, exist_ok=True)
    path = os.path.join(
        cache_dir, "inner_%d_%d_%s_%d.txt" % (m_in, n_in, repr(delta_in), seed)
    )
    if os.path.exists(path):
        code = load_inner_code(path)
        if (code.m_in, code.n_in, code.delta_in, code.seed) == (m_in, n_in, delta_in, seed):
            return code
    code = find_inner_code(m_in, n_in, delta_in, seed)
    save_inner_code(code, path)
    return code


@dataclass(frozen=True)
class CodeSpecC:
    """Descriptor of the block code: input_bits in, s symbols of c_delta bits out.

    For the standard pipeline input_bits = 3s.  provable_delta is the
    relative symbol distance derivable from the components alone.
    """

    s: int
    c_delta: int
    input_bits: int
    provable_delta: Fraction
    recipe: str  # "rs" | "concat"
    outer: RSParams
    inner: Optional[InnerCode]
    generator_rows: tuple  # input_bits rows of s*c_delta-bit ints

    def __post_init__(self):
        object.__setattr__(self, "_memo", {})
        object.__setattr__(self, "_byte_tables", None)

    def symbols_for(self, packed: int) -> Tuple[int, ...]:
        """Codeword of an input_bits-wide packed message, as s symbol ints.

        Memoized: the lagged encoders re-encode the same block inputs many
        times during exhaustive pair enumeration.
        """
        got = self._memo.get(packed)
        if got is None:
            out = self.encode_int(packed)
            c = self.c_delta
            total = self.s * c
            mask = (1 << c) - 1
            got = tuple((out >> (total - (j + 1) * c)) & mask for j in range(self.s))
            # Bounded memo: exhaustive small-space enumerations hit the cache
            # constantly, while long random streams would only grow it.
            if len(self._memo) < (1 << 17):
                self._memo[packed] = got
        return got

    def encode_int(self, x: int) -> int:
        """Encode input_bits packed into an int; returns s*c_delta packed bits."""
        tables = self._byte_tables
        if tables is None:
            tables = self._build_byte_tables()
        if tables:
            out = 0
            k = 0
            while x:
                out ^= tables[k][x & 0xFF]
                x >>= 8
                k += 1
            return out
        out = 0
        rows = self.generator_rows
        w = self.input_bits
        while x:
            b = x.bit_length() - 1
            out ^= rows[w - 1 - b]
            x ^= 1 << b
        return out

    def _build_byte_tables(self):
        # Per-byte lookup tables make encode_int ~8x fewer loop iterations.
        # Skipped for very wide inputs where the tables would be large and
        # block completions are rare anyway.
        rows = self.generator_rows
        w = self.input_bits
        if w > 1024:
            tables = ()
        else:
            tables = []
            for k in range((w + 7) // 8):
                byte_rows = [rows[w - 1 - (8 * k + j)] if 8 * k + j < w else 0
                             for j in range(8)]
                table = [0] * 256
                for b in range(1, 256):
                    lsb = b & -b
                    table[b] = table[b ^ lsb] ^ byte_rows[lsb.bit_length() - 1]
                tables.append(table)
            tables = tuple(tables)
        object.__setattr__(self, "_byte_tables", tables)
        return tables

    def encode(self, bits: Sequence[int]) -> Tuple[int, ...]:
        """Encode a bit sequence; returns the s output symbols as ints."""
        if len(bits) != self.input_bits:
            raise ValueError("input must be exactly %d bits" % self.input_bits)
        x = 0
        for b in bits:
            x = (x << 1) | b
        return self.symbols_for(x)


def _rs_recipe_params(input_bits: int, s: int, delta: Fraction) -> RSParams:
    # The first term is ceil(3/(1-delta)) + 1 for the standard 3s-bit input;
    # wider inputs (boosted packing) scale the 3 to input_bits/s.
    ratio = Fraction(input_bits, s)
    m_low = max(1, math.ceil(math.log2(s + 1)))
    m = max(math.ceil(ratio / (1 - delta)) + 1, m_low)
    if m > MAX_FIELD_DEGREE:
        # The uniform-in-s formula overshoots the field-degree cap (wide
        # boosted inputs); fall back to the smallest degree that still
        # meets the distance target at this particular s.
        for m in range(m_low, MAX_FIELD_DEGREE + 1):
            k_msg = math.ceil(input_bits / m)
            if k_msg <= s and Fraction(s - k_msg + 1, s) >= delta:
                break
        else:
            raise InfeasibleCodeError(
                "RS recipe needs field degree > %d for %d input bits at s=%d"
                % (MAX_FIELD_DEGREE, input_bits, s)
            )
    k_msg = math.ceil(input_bits / m)
    if k_msg > s:
        raise InfeasibleCodeError(
            "RS recipe needs k_msg=%d <= s=%d message symbols" % (k_msg, s)
        )
    return RSParams(m, k_msg, s)


def _build_rows_rs(params: RSParams, input_bits: int) -> tuple:
    """Binary generator rows of the RS map (padded bits -> codeword bits).

    The input_bits message bits are zero-padded at the most-significant end
    to k_msg m-bit symbols; row t is the codeword of the basis message with
    a single set bit at message-bit t.
    """
    m, k, n = params.m, params.k_msg, params.n_code
    pad = k * m - input_bits
    # pow_table[j][q] = point_j ^ q
    rows: List[int] = []
    pow_tables = []
    for j in range(n):
        powers = [1]
        for _ in range(k - 1):
            powers.append(gf_mul_int(m, powers[-1], j))
        pow_tables.append(powers)
    for t in range(input_bits):
        bitpos = pad + t  # position inside the padded k*m-bit message
        q = bitpos // m  # message symbol index, MSB-first symbol order
        b = m - 1 - (bitpos % m)
        coeff_index = q  # symbol q is the coefficient of x^q? see below
        beta = 1 << b
        # Message symbols are used as polynomial coefficients with symbol 0
        # as the constant term.
        row = 0
        for j in range(n):
            sym = gf_mul_int(m, pow_tables[j][coeff_index], beta)
            row = (row << m) | sym
        rows.append(row)
    return tuple(rows)


def _regroup_pad(rows: Sequence[int], raw_bits: int, total_bits: int) -> tuple:
    """Left-align raw codeword bits inside the s*c_delta-bit output frame."""
    shift = total_bits - raw_bits
    return tuple(r << shift for r in rows)


def build_code_c(
    s: int,
    delta,
    recipe: str = "concat",
    seed: int = 0,
    input_bits: Optional[int] = None,
    cache_dir: Optional[str] = None,
) -> CodeSpecC:
    """Construct the block code for width-s symbols at target distance delta.

    Raises InfeasibleCodeError when no parameterization reaches the target
    (for the concatenated recipe the fixed inner distance 0.3 caps the
    product bound; any target needing inner distance >= 1/2 is impossible
    for positive-rate binary codes by the Plotkin bound).
    """
    delta = Fraction(delta).limit_denominator(10**6)
    if not 0 <= delta < 1:
        raise ValueError("delta must be in [0, 1)")
    if s < 1:
        raise ValueError("s must be positive")
    if input_bits is None:
        input_bits = 3 * s
    if recipe == "rs":
        params = _rs_recipe_params(input_bits, s, delta)
        provable = Fraction(params.distance, s)
        if provable < delta:
            raise InfeasibleCodeError(
                "RS recipe reaches delta %s < target %s at s=%d" % (provable, delta, s)
            )
        raw = _build_rows_rs(params, input_bits)
        c = params.m
        rows = _regroup_pad(raw, params.n_code * params.m, s * c)
        return CodeSpecC(s, c, input_bits, provable, "rs", params, None, rows)
    if recipe != "concat":
        raise ValueError("unknown recipe %r" % recipe)
    if delta >= Fraction(1, 2):
        raise InfeasibleCodeError(
            "concatenated recipe needs inner distance >= %s >= 1/2, impossible "
            "for positive-rate binary codes (Plotkin bound)" % delta
        )
    choice = _best_concat_params(input_bits, s, delta)
    if choice is None:
        raise InfeasibleCodeError(
            "concatenated recipe (inner distance %.2f) cannot reach delta %s at s=%d"
            % (INNER_DELTA, delta, s)
        )
    m_out, n_outer, _ = choice
    n_in = INNER_EXPANSION * m_out
    inner = cached_inner_code(m_out, n_in, INNER_DELTA, seed, cache_dir)
    outer = RSParams(m_out, math.ceil(input_bits / m_out), n_outer)
    c = math.ceil(n_outer * n_in / s)
    provable = Fraction(math.ceil(outer.distance * inner.verified_distance / c), s)
    if provable < delta:
        raise InfeasibleCodeError("provable delta %s below target %s" % (provable, delta))
    raw_rs = _build_rows_rs(outer, input_bits)
    # Concatenate: re-encode each m_out-bit outer symbol through the inner code.
    rows = []
    for row in raw_rs:
        out = 0
        for j in range(n_outer):
            sym = (row >> ((n_outer - 1 - j) * m_out)) & ((1 << m_out) - 1)
            out = (out << n_in) | inner.encode(sym)
        rows.append(out)
    rows = _regroup_pad(rows, n_outer * n_in, s * c)
    return CodeSpecC(s, c, input_bits, provable, "concat", outer, inner, tuple(rows))


def _best_concat_params(input_bits: int, s: int, delta: Fraction):
    """Pick (m_out, outer length) minimizing c_delta under the provable bound.

    The provable bound uses the guaranteed inner distance ceil(0.3*n_in);
    the shipped code's verified distance can only be larger.
    """
    best = None
    for m_out in range(2, 17):
        n_in = INNER_EXPANSION * m_out
        d_in = math.ceil(INNER_DELTA * n_in - 1e-12)
        k_out = math.ceil(input_bits / m_out)
        lo, hi = max(k_out, 1 << (m_out - 1)), (1 << m_out) - 1
        for n_outer in range(lo, hi + 1):
            c = math.ceil(n_outer * n_in / s)
            provable = Fraction(
                math.ceil((n_outer - k_out + 1) * d_in / c), s
            )
            if provable >= delta and (best is None or c < best[2]):
                best = (m_out, n_outer, c)
    return best


def s_delta(delta, recipe: str = "concat", s_max: int = 4096) -> int:
    """Smallest s for which the recipe's provable distance reaches delta.

    Scans s upward; raises InfeasibleCodeError when no s <= s_max works.
    """
    delta = Fraction(delta).limit_denominator(10**6)
    for s in range(1, s_max + 1):
        try:
            if recipe == "rs":
                params = _rs_recipe_params(3 * s, s, delta)
                ok = Fraction(params.distance, s) >= delta
            else:
                ok = _best_concat_params(3 * s, s, delta) is not None
        except InfeasibleCodeError:
            ok = False
        if ok:
            return s
    raise InfeasibleCodeError("no s <= %d reaches delta %s" % (s_max, delta))

"""Superimposition of lagged codes at doubly-exponentially growing lags.

The encoder emits, per input bit, a sliding window of the last a*s_min+1
input bits together with the symbols of one untruncated lagged code per
schedule level.  Level g uses block width s_g = ell_g / a; a lag of b
positions is caught either by the window (b <= a*s_min) or by the level
whose interval [ell_g, s_g^2/2] contains b, giving relative distance
delta*(1/2 - 3/(2a)) overall (1/16 for the default delta=1/4, a=6).

The schedule rule used here keeps every lag a multiple of a times an even
block width: ell_1 = a*s_min and ell_{g+1} = 2a*floor(s_g^2/(4a)), so
ell_g = a*s_g exactly and consecutive coverage intervals overlap.  A level
enters the emitted symbol only from position s_g onward, which keeps every
symbol independent of the target length n.

Per-position alphabet accounting is exact: window bits plus, per active
level, the two component widths with structurally-blank components (left
before the second instance window, right inside a block prefix) counted
as blank.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import List, Optional, Tuple

from .core import BLANK, AlphabetDescriptor, FixedBits, SymbolTuple
from .ecc import CodeSpecC, _best_concat_params, _rs_recipe_params, build_code_c
from .lagged import LaggedSymbol
from .linearcode import BoostParams
from .packing import BoostedPackedParams, StreamEncoderBoostedBlockTc


class ScheduleError(ValueError):
    """The lag schedule cannot cover the requested length."""


@dataclass(frozen=True)
class ScheduleLevel:
    g: int
    ell: int
    s: int

    @property
    def cover_lo(self) -> int:
        return self.ell

    @property
    def cover_hi(self) -> int:
        return self.s * self.s // 2


@dataclass(frozen=True)
class Schedule:
    levels: Tuple[ScheduleLevel, ...]
    s_min: int
    a: int
    n: int


def build_schedule(n: int, s_min: int = 16, a: int = 6) -> Schedule:
    """Lag levels ell_1 = a*s_min, ell_{g+1} = 2a*floor(s_g^2/(4a)), kept
    while the level's block width s_g = ell_g/a is at most n.

    Raises ScheduleError when the recurrence stalls before the coverage
    intervals reach n (small s_min cannot grow: the first level needs
    s_min^2/2 > ell_1).
    """
    if s_min < 2 or s_min % 2:
        raise ValueError("s_min must be even and at least 2")
    if a < 2:
        raise ValueError("a must be at least 2")
    if n < a * s_min:
        raise ScheduleError("n=%d below the first lag %d" % (n, a * s_min))
    levels: List[ScheduleLevel] = []
    ell, s = a * s_min, s_min
    g = 1
    while s <= n:
        levels.append(ScheduleLevel(g, ell, s))
        nxt = 2 * a * (s * s // (4 * a))
        if nxt <= ell:
            if s * s // 2 >= n:
                break
            raise ScheduleError(
                "schedule stalls at level %d (ell=%d, next=%d) before covering n=%d"
                % (g, ell, nxt, n)
            )
        ell, s = nxt, nxt // a
        g += 1
    # Contiguity: the window covers lags up to a*s_min >= ell_1 - 1 and each
    # new interval starts inside the previous one by construction.
    assert levels and levels[-1].cover_hi >= min(n, levels[-1].s * levels[-1].s // 2)
    return Schedule(tuple(levels), s_min, a, n)


@dataclass(frozen=True)
class PipelineConfig:
    """Parameters of the full binary-input tree code."""

    n: int
    delta: Fraction = Fraction(1, 4)
    a: int = 6
    s_min: int = 16
    recipe: str = "rs"
    seed: int = 0
    boost: Optional[BoostParams] = None

    def __post_init__(self):
        object.__setattr__(self, "delta", Fraction(self.delta))
        if not 0 <= self.delta < 1:
            raise ValueError("delta must be in [0, 1)")
        if self.s_min < 2 or self.s_min % 2:
            raise ValueError("s_min must be even and at least 2")
        if self.a < 2:
            raise ValueError("a must be at least 2")
        if self.n < self.a * self.s_min:
            raise ValueError("n must be at least a*s_min")
        if self.recipe not in ("rs", "concat"):
            raise ValueError("recipe must be 'rs' or 'concat'")
        if self.boost is not None and self.boost.s != 1:
            raise ValueError("pipeline boosting uses (1, r) boost parameters")

    @property
    def window_bits(self) -> int:
        return self.a * self.s_min + 1

    def base_distance(self) -> Fraction:
        """r/(r+s) of the packed base code (1/2 without boosting)."""
        if self.boost is None:
            return Fraction(1, 2)
        return Fraction(self.boost.r, self.boost.r + self.boost.s)

    def declared_distance(self) -> Fraction:
        """The composed guarantee delta*(base - 3/(2a))."""
        return self.delta * (self.base_distance() - Fraction(3, 2 * self.a))

    def level_input_bits(self, s: int) -> int:
        if self.boost is None:
            return 3 * s
        return BoostedPackedParams(s, self.boost).symbol_bits


@lru_cache(maxsize=None)
def _config_schedule(config: PipelineConfig) -> Schedule:
    return build_schedule(config.n, config.s_min, config.a)


@lru_cache(maxsize=None)
def level_c_delta(config: PipelineConfig, s: int) -> int:
    """Per-symbol bit width of the level's block code, by arithmetic alone
    (no generator construction)."""
    bits = config.level_input_bits(s)
    if config.recipe == "rs":
        return _rs_recipe_params(bits, s, config.delta).m
    choice = _best_concat_params(bits, s, config.delta)
    if choice is None:
        from .ecc import InfeasibleCodeError

        raise InfeasibleCodeError("concatenated recipe infeasible at s=%d" % s)
    return choice[2]


@dataclass(frozen=True)
class FinalSymbol:
    """One output symbol: the input window plus one lagged pair per active
    level (levels with s_g > i are absent, not blank)."""

    window: FixedBits
    levels: Tuple[LaggedSymbol, ...]

    def to_symbol(self) -> SymbolTuple:
        parts = [self.window]
        for lv in self.levels:
            parts.append(SymbolTuple((lv.left, lv.right)))
        return SymbolTuple(tuple(parts))


class _FastInstance:
    """One truncated-lagged instance in the pipeline's flat representation.

    Symbols are plain ints (None for blank); block codewords are computed
    once per completed block via the level's block code.
    """

    __slots__ = ("level", "blocks", "cur", "cnt", "codeword", "idx", "boostpacker")

    def __init__(self, level: "_LevelState"):
        self.level = level
        self.blocks: List[int] = []
        self.cur = 0
        self.cnt = 0
        self.codeword: Optional[Tuple[int, ...]] = None
        self.idx = 0
        self.boostpacker = (
            StreamEncoderBoostedBlockTc(level.boost_params)
            if level.boost_params is not None
            else None
        )

    def push(self, bit: int) -> Optional[int]:
        self.cur = (self.cur << 1) | bit
        self.cnt += 1
        lv = self.level
        if self.cnt == lv.s:
            a = self.cur
            self.cur = 0
            self.cnt = 0
            if self.boostpacker is None:
                i = len(self.blocks)
                self.blocks.append(a)
                row = lv.pascal_row(i)
                b = 0
                blocks = self.blocks
                for j in range(i + 1):
                    b += row[j] * blocks[j]
                packed = (a << (2 * lv.s)) | b
            else:
                packed = self.boostpacker.push(
                    [(a >> (lv.s - 1 - t)) & 1 for t in range(lv.s)]
                ).value
            self.codeword = lv.spec().symbols_for(packed)
            self.idx = 0
        elif self.codeword is not None:
            self.idx += 1
        if self.codeword is None:
            return None
        return self.codeword[self.idx]

    def clone(self) -> "_FastInstance":
        other = _FastInstance.__new__(_FastInstance)
        other.level = self.level
        other.blocks = list(self.blocks)
        other.cur = self.cur
        other.cnt = self.cnt
        other.codeword = self.codeword
        other.idx = self.idx
        other.boostpacker = None if self.boostpacker is None else self.boostpacker.clone()
        return other


class _LevelState:
    """Shared per-level data plus the two live instances."""

    __slots__ = (
        "config", "s", "ell", "h", "c_delta", "pascal_rows", "_spec",
        "older", "newer", "boost_params",
    )

    def __init__(self, config: PipelineConfig, lv: ScheduleLevel):
        self.config = config
        self.s = lv.s
        self.ell = lv.ell
        self.h = lv.s * lv.s // 2
        self.c_delta = level_c_delta(config, lv.s)
        self.pascal_rows: List[Tuple[int, ...]] = []
        self._spec: Optional[CodeSpecC] = None
        self.older: Optional[_FastInstance] = None
        self.newer: Optional[_FastInstance] = None
        self.boost_params = (
            None if config.boost is None else BoostedPackedParams(lv.s, config.boost)
        )

    def pascal_row(self, i: int) -> Tuple[int, ...]:
        # Rows are materialized on demand: at most one row per completed
        # block, so wide levels never pay for the full s x s matrix.
        rows = self.pascal_rows
        while len(rows) <= i:
            k = len(rows)
            rows.append(tuple(math.comb(k, j) for j in range(k + 1)))
        return rows[i]

    def spec(self) -> CodeSpecC:
        if self._spec is None:
            self._spec = build_code_c(
                self.s,
                self.config.delta,
                self.config.recipe,
                self.config.seed,
                input_bits=self.config.level_input_bits(self.s),
            )
            assert self._spec.c_delta == self.c_delta
        return self._spec

    def push(self, pos: int, bit: int):
        _, r = divmod(pos, self.h)
        if r == 1:
            self.older = self.newer
            self.newer = _FastInstance(self)
        left = self.older.push(bit) if self.older is not None else None
        return (left, self.newer.push(bit))

    def clone_into(self, config: PipelineConfig) -> "_LevelState":
        other = _LevelState.__new__(_LevelState)
        other.config = self.config
        other.s = self.s
        other.ell = self.ell
        other.h = self.h
        other.c_delta = self.c_delta
        other.pascal_rows = self.pascal_rows
        other._spec = self._spec
        other.boost_params = self.boost_params
        other.older = self.older.clone() if self.older is not None else None
        other.newer = self.newer.clone() if self.newer is not None else None
        if other.older is not None:
            other.older.level = other
        if other.newer is not None:
            other.newer.level = other
        return other


class PipelineEncoder:
    """Online encoder for the full code; one FinalSymbol per pushed bit.

    push_raw returns the symbol as a plain nested tuple (window length,
    window value, per-active-level (left, right) ints-or-None), which is
    the representation used by the large-scale distance experiments;
    push wraps it into a FinalSymbol.
    """

    def __init__(self, config: PipelineConfig):
        self.config = config
        self.schedule = _config_schedule(config)
        self.levels = [_LevelState(config, lv) for lv in self.schedule.levels]
        self.pos = 0
        self.window = 0
        self.wmask = (1 << config.window_bits) - 1

    def push_raw(self, bit: int):
        if self.pos >= self.config.n:
            raise ValueError("input longer than n=%d" % self.config.n)
        self.pos += 1
        i = self.pos
        self.window = ((self.window << 1) | bit) & self.wmask
        wlen = min(i, self.config.window_bits)
        out = []
        for lv in self.levels:
            if lv.s > i:
                # Inactive level: push the bit for state, emit nothing.
                lv.push(i, bit)
            else:
                out.append(lv.push(i, bit))
        return (wlen, self.window, tuple(out))

    def push(self, bit: int) -> FinalSymbol:
        wlen, wval, raw = self.push_raw(bit)
        levels = []
        idx = 0
        for lv in self.levels:
            if lv.s > self.pos:
                continue
            left, right = raw[idx]
            idx += 1
            levels.append(
                LaggedSymbol(
                    BLANK if left is None else FixedBits(lv.c_delta, left),
                    BLANK if right is None else FixedBits(lv.c_delta, right),
                )
            )
        return FinalSymbol(FixedBits(wlen, wval), tuple(levels))

    def clone(self) -> "PipelineEncoder":
        other = PipelineEncoder.__new__(PipelineEncoder)
        other.config = self.config
        other.schedule = self.schedule
        other.levels = [lv.clone_into(self.config) for lv in self.levels]
        other.pos = self.pos
        other.window = self.window
        other.wmask = self.wmask
        return other


def encode_final(config: PipelineConfig, bits) -> tuple:
    """Encode a whole bit sequence (length <= n) into FinalSymbols."""
    bits = [int(b) for b in bits]
    if len(bits) > config.n:
        raise ValueError("input longer than n=%d" % config.n)
    enc = PipelineEncoder(config)
    return tuple(enc.push(b) for b in bits)


def alphabet_at(config: PipelineConfig, i: int) -> AlphabetDescriptor:
    """Exact bit accounting of the symbol at position i; independent of n
    for all n that include the position's active levels."""
    if not 1 <= i <= config.n:
        raise ValueError("position outside [1, n]")
    structure = [("window", min(i, config.window_bits))]
    total = min(i, config.window_bits)
    for lv in _config_schedule(config).levels:
        if lv.s > i:
            continue
        c = level_c_delta(config, lv.s)
        h = lv.s * lv.s // 2
        # Left slot: the older instance exists from position h+1 on.
        left = c if i > h else "blank"
        # Right slot: the newer instance's local position is i mod h (or h
        # when the position is a segment boundary); blank before its first
        # completed block.
        r = i % h
        local = h if r == 0 else r
        right = c if local >= lv.s else "blank"
        structure.append(("L%d.left" % lv.g, left))
        structure.append(("L%d.right" % lv.g, right))
        total += (0 if left == "blank" else c) + (0 if right == "blank" else c)
    return AlphabetDescriptor(i, total, tuple(structure))


def boosted_config(
    eta,
    n: int = 1 << 14,
    s_min: int = 16,
    recipe: str = "rs",
    seed: int = 0,
) -> PipelineConfig:
    """A configuration whose declared distance reaches eta.

    For eta up to the default guarantee 1/16 the standard constants are
    returned; beyond it the boost r, the block-code distance and the lag
    ratio a are raised so that delta*(r/(r+1) - 3/(2a)) >= eta.
    """
    eta = Fraction(eta)
    if not 0 <= eta < 1:
        raise ValueError("eta must be in [0, 1)")
    default = PipelineConfig(n=n, recipe=recipe, seed=seed, s_min=s_min)
    if eta <= default.declared_distance():
        return default
    target = 1 - (1 - eta) / 3  # both r/(r+1) and delta must reach this
    r = math.ceil(target / (1 - target))
    delta = target
    base = Fraction(r, r + 1)
    slack = base - eta / delta
    if slack <= 0:
        raise ValueError("no lag ratio can reach eta=%s" % eta)
    a = max(2, math.ceil(Fraction(3, 2) / slack))
    config = PipelineConfig(
        n=n, delta=delta, a=a, s_min=s_min, recipe=recipe, seed=seed,
        boost=BoostParams(1, r),
    )
    assert config.declared_distance() >= eta
    return config

"""Ground-truth oracles: exact tree distances, weight distances, lagged
distances, the Singleton/MDS predicates, and the random-Toeplitz baseline.

Every verdict is an exact rational; witnesses re-evaluate to the reported
value.  The only real-valued function is the entropy used by the
probabilistic baseline's feasibility condition, compared with a 1e-12
tolerance.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Optional, Sequence, Tuple

from .core import BudgetExceededError, hamming_distance, split
from .linearcode import encode_tc_a
from .pascal import LowerTriangularMatrix

ENTROPY_TOL = 1e-12


@dataclass(frozen=True)
class DistanceReport:
    """An exact minimum with the pair (or vector) achieving it."""

    value: Fraction
    witness: tuple  # (x, x_prime, split, distance) or (x, split, weight)
    space: str


def tree_distance_exhaustive(
    encode: Callable, alphabet: Sequence, n_max: int, budget: int = 2_000_000
) -> DistanceReport:
    """Exact min over all n <= n_max and pairs x != x' in alphabet^n of
    Hamming(enc(x), enc(x')) / (n - split)."""
    alphabet = tuple(alphabet)
    q = len(alphabet)
    pairs = sum(q**n * (q**n - 1) // 2 for n in range(1, n_max + 1))
    if pairs > budget:
        raise BudgetExceededError("%d pairs exceed budget %d" % (pairs, budget))
    best = None
    for n in range(1, n_max + 1):
        strings = list(itertools.product(alphabet, repeat=n))
        encs = [tuple(encode(s)) for s in strings]
        for i in range(len(strings)):
            for j in range(i + 1, len(strings)):
                sp = split(strings[i], strings[j])
                d = hamming_distance(encs[i], encs[j])
                val = Fraction(d, n - sp)
                if best is None or val < best.value:
                    best = DistanceReport(
                        val, (strings[i], strings[j], sp, d), "n<=%d over %d symbols" % (n_max, q)
                    )
    return best


def tree_distance_relaxed(
    encode: Callable, alphabet: Sequence, n: int, budget: int = 2_000_000
) -> DistanceReport:
    """The relaxed distance: the same minimum restricted to length exactly n."""
    alphabet = tuple(alphabet)
    q = len(alphabet)
    pairs = q**n * (q**n - 1) // 2
    if pairs > budget:
        raise BudgetExceededError("%d pairs exceed budget %d" % (pairs, budget))
    best = None
    strings = list(itertools.product(alphabet, repeat=n))
    encs = [tuple(encode(s)) for s in strings]
    for i in range(len(strings)):
        for j in range(i + 1, len(strings)):
            sp = split(strings[i], strings[j])
            d = hamming_distance(encs[i], encs[j])
            val = Fraction(d, n - sp)
            if best is None or val < best.value:
                best = DistanceReport(val, (strings[i], strings[j], sp, d), "n=%d exactly" % n)
    return best


def weight_distance_linear(
    A: LowerTriangularMatrix, entries: Sequence[int], n_max: int, budget: int = 2_000_000
) -> DistanceReport:
    """Exact min over non-zero x of the coordinate-level weight of the
    (I, A) encoding divided by 2*(k - split(x, 0))."""
    entries = tuple(entries)
    total = sum(len(entries) ** k for k in range(1, n_max + 1))
    if total > budget:
        raise BudgetExceededError("%d vectors exceed budget %d" % (total, budget))
    best = None
    for k in range(1, n_max + 1):
        for x in itertools.product(entries, repeat=k):
            if all(v == 0 for v in x):
                continue
            enc = encode_tc_a(A, x)
            wt = sum((1 if p.a != 0 else 0) + (1 if p.b != 0 else 0) for p in enc)
            ell = split(x, (0,) * k)
            val = Fraction(wt, 2 * (k - ell))
            if best is None or val < best.value:
                best = DistanceReport(val, (x, ell, wt), "k<=%d entries %r" % (n_max, entries))
    return best


def lagged_distance(
    encode: Callable,
    ell: int,
    L: int,
    alphabet: Sequence,
    n_max: int,
    mode: str = "exhaustive",
    seed: int = 0,
    trials: int = 1000,
    budget: int = 2_000_000,
) -> DistanceReport:
    """Min of Hamming/b over pairs whose lag b = n - split lies in [ell, L].

    Sampled mode reports the minimum over random qualifying pairs, an
    upper bound on the true minimum (falsification only).
    """
    alphabet = tuple(alphabet)
    if n_max < ell:
        raise ValueError("no pair can reach lag %d at n_max=%d" % (ell, n_max))
    if mode == "exhaustive":
        q = len(alphabet)
        pairs = sum(q**n * (q**n - 1) // 2 for n in range(1, n_max + 1))
        if pairs > budget:
            raise BudgetExceededError("%d pairs exceed budget %d" % (pairs, budget))
        best = None
        for n in range(ell, n_max + 1):
            strings = list(itertools.product(alphabet, repeat=n))
            encs = [tuple(encode(s)) for s in strings]
            for i in range(len(strings)):
                for j in range(i + 1, len(strings)):
                    sp = split(strings[i], strings[j])
                    b = n - sp
                    if not ell <= b <= L:
                        continue
                    d = hamming_distance(encs[i], encs[j])
                    val = Fraction(d, b)
                    if best is None or val < best.value:
                        best = DistanceReport(
                            val, (strings[i], strings[j], sp, d), "lag in [%d,%d]" % (ell, L)
                        )
        if best is None:
            raise ValueError("no pair with lag in [%d, %d] found" % (ell, L))
        return best
    if mode != "sampled":
        raise ValueError("mode must be 'exhaustive' or 'sampled'")
    rng = random.Random(seed)
    best = None
    for _ in range(trials):
        b = rng.randint(ell, min(L, n_max))
        n = rng.randint(b, n_max)
        sp = n - b
        prefix = [rng.choice(alphabet) for _ in range(sp)]
        first = rng.choice(alphabet)
        other = rng.choice([a for a in alphabet if a != first])
        x = tuple(prefix + [first] + [rng.choice(alphabet) for _ in range(b - 1)])
        y = tuple(prefix + [other] + [rng.choice(alphabet) for _ in range(b - 1)])
        d = hamming_distance(tuple(encode(x)), tuple(encode(y)))
        val = Fraction(d, b)
        if best is None or val < best.value:
            best = DistanceReport(val, (x, y, sp, d), "sampled %d trials" % trials)
    return best


def singleton_bound(n: int, sigma_size: int, gamma_size: int) -> Fraction:
    """floor(n*(1 - log sigma/log gamma) + 1)/n, evaluated exactly via
    integer power comparison (no floating point)."""
    if sigma_size < 2 or gamma_size < 2 or n < 1:
        raise ValueError("need n >= 1 and alphabet sizes >= 2")
    target = sigma_size**n
    m_star, power = 0, 1
    while power < target:
        power *= gamma_size
        m_star += 1
    return Fraction(n + 1 - m_star, n)


def is_mds(measured_delta, sigma_size: int, gamma_size: int) -> bool:
    """True iff delta > 1 - log sigma/log gamma (exact rational test)."""
    d = Fraction(measured_delta)
    if sigma_size < 2 or gamma_size < 2:
        raise ValueError("alphabet sizes must be >= 2")
    p, q = d.numerator, d.denominator
    # delta > 1 - log s/log g  <=>  s^q > g^(q-p)
    return sigma_size**q > gamma_size ** (q - p)


def entropy_hr(r: int, x: float) -> float:
    """The r-ary entropy H_r(x) for x in [0, (r-1)/r]; H_r(0) = 0."""
    if r < 2:
        raise ValueError("r must be at least 2")
    if x < -ENTROPY_TOL or x > (r - 1) / r + ENTROPY_TOL:
        raise ValueError("x=%r outside [0, (r-1)/r]" % x)
    if x <= 0:
        return 0.0
    h = x * math.log(r - 1, r) - x * math.log(x, r)
    if x < 1:
        h -= (1 - x) * math.log(1 - x, r)
    return h


def toeplitz_condition(q: int, r: int, delta: float) -> bool:
    """The feasibility condition log_r(2q) + H_r(delta) <= 1."""
    return math.log(2 * q, r) + entropy_hr(r, delta) <= 1 + ENTROPY_TOL


def largest_feasible_delta(q: int, r: int, grid: int = 1000) -> Fraction:
    """Largest delta = i/grid passing toeplitz_condition; error if none."""
    for i in range(grid - 1, 0, -1):
        d = Fraction(i, grid)
        if d <= Fraction(r - 1, r) and toeplitz_condition(q, r, float(d)):
            return d
    raise ValueError("no feasible delta for q=%d, r=%d" % (q, r))


SUPPORTED_FIELD_SIZES = (2, 3, 4, 5, 7, 8, 9, 11, 13, 16)


def _smallest_prime_factor(q: int) -> int:
    for p in range(2, q + 1):
        if q % p == 0:
            return p
    raise ValueError("q must be >= 2")


def _poly_mod(a: tuple, b: tuple, p: int) -> tuple:
    # Remainder of a by monic b, coefficients low-to-high over Z_p.
    a = list(a)
    while len(a) >= len(b):
        lead = a[-1]
        if lead:
            shift = len(a) - len(b)
            for i, c in enumerate(b):
                a[shift + i] = (a[shift + i] - lead * c) % p
        a.pop()
    while a and a[-1] == 0:
        a.pop()
    return tuple(a)


def _monic_polys(deg: int, p: int):
    for coeffs in itertools.product(range(p), repeat=deg):
        yield tuple(coeffs) + (1,)


def _find_irreducible(p: int, m: int) -> tuple:
    # A monic reducible polynomial of degree m has a monic factor of
    # degree between 1 and m//2; test divisibility by all of them.
    for cand in _monic_polys(m, p):
        ok = True
        for d in range(1, m // 2 + 1):
            for div in _monic_polys(d, p):
                if not _poly_mod(cand, div, p):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return cand
    raise AssertionError("no irreducible polynomial of degree %d over F_%d" % (m, p))


class SmallField:
    """GF(q) for q = p^m <= 16 with full add/mul tables.

    Elements are the integers 0..q-1; for extension fields the base-p
    digits of the integer are the polynomial coefficients (low digit =
    constant term) modulo the canonical (lexicographically least monic)
    irreducible of degree m.
    """

    def __init__(self, q: int):
        if q not in SUPPORTED_FIELD_SIZES:
            raise ValueError("unsupported field size %d" % q)
        p = _smallest_prime_factor(q)
        m = 0
        t = q
        while t > 1:
            t //= p
            m += 1
        self.q, self.p, self.m = q, p, m
        if m == 1:
            self.add_table = [[(a + b) % p for b in range(q)] for a in range(q)]
            self.mul_table = [[(a * b) % p for b in range(q)] for a in range(q)]
        else:
            modulus = _find_irreducible(p, m)
            digits = lambda v: tuple((v // p**i) % p for i in range(m))
            undig = lambda cs: sum(c * p**i for i, c in enumerate(cs))
            self.add_table = [
                [undig([(x + y) % p for x, y in zip(digits(a), digits(b))]) for b in range(q)]
                for a in range(q)
            ]
            mul = []
            for a in range(q):
                row = []
                da = digits(a)
                for b in range(q):
                    db = digits(b)
                    prod = [0] * (2 * m - 1)
                    for i, x in enumerate(da):
                        for j, y in enumerate(db):
                            prod[i + j] = (prod[i + j] + x * y) % p
                    rem = _poly_mod(tuple(prod), modulus, p)
                    row.append(undig(rem + (0,) * (m - len(rem))))
                mul.append(row)
            self.mul_table = mul

    def add(self, a: int, b: int) -> int:
        return self.add_table[a][b]

    def mul(self, a: int, b: int) -> int:
        return self.mul_table[a][b]


@lru_cache(maxsize=None)
def get_field(q: int) -> SmallField:
    return SmallField(q)


@dataclass(frozen=True)
class ToeplitzCode:
    """The systematic random-Toeplitz linear tree code over GF(q).

    Output symbol i is the d-tuple (x_i, (A_1 x)_i, ..., (A_{d-1} x)_i)
    where each A_t is lower-triangular Toeplitz with entry(i,j) =
    diagonals[t][i-j]."""

    q: int
    d: int
    n: int
    diagonals: tuple  # d-1 sequences of n field elements
    seed: Optional[int]

    def __post_init__(self):
        if self.d < 2:
            raise ValueError("d must be at least 2")
        if len(self.diagonals) != self.d - 1 or any(len(t) != self.n for t in self.diagonals):
            raise ValueError("need d-1 diagonal sequences of length n")

    def entry(self, t: int, i: int, j: int) -> int:
        """Entry (i, j) of A_t (t >= 1), 0-indexed."""
        return self.diagonals[t - 1][i - j] if i >= j else 0

    def encode(self, x: Sequence[int]) -> Tuple[tuple, ...]:
        if len(x) > self.n:
            raise ValueError("input longer than n")
        F = get_field(self.q)
        out = []
        for i in range(len(x)):
            sym = [x[i]]
            for diag in self.diagonals:
                acc = 0
                for j in range(i + 1):
                    acc = F.add(acc, F.mul(diag[i - j], x[j]))
                sym.append(acc)
            out.append(tuple(sym))
        return tuple(out)


def sample_toeplitz_code(q: int, d: int, n: int, seed: int) -> ToeplitzCode:
    """Uniformly random diagonals from the seeded stream."""
    rng = random.Random(seed)
    diagonals = tuple(tuple(rng.randrange(q) for _ in range(n)) for _ in range(d - 1))
    return ToeplitzCode(q, d, n, diagonals, seed)


def toeplitz_weight_distance(
    code: ToeplitzCode,
    n_max: Optional[int] = None,
    budget: int = 2_000_000,
    stop_at=None,
) -> DistanceReport:
    """Exact field-level weight distance of the code over all non-zero
    inputs of length <= n_max.

    stop_at, when given, aborts the scan as soon as the running minimum is
    <= stop_at (fail-fast for the sampling experiment); the report is then
    an upper bound witnessing the failure.
    """
    n_max = code.n if n_max is None else n_max
    total = sum(code.q**k for k in range(1, n_max + 1))
    if total > budget:
        raise BudgetExceededError("%d vectors exceed budget %d" % (total, budget))
    stop = None if stop_at is None else Fraction(stop_at)
    best = None
    for k in range(1, n_max + 1):
        for x in itertools.product(range(code.q), repeat=k):
            if all(v == 0 for v in x):
                continue
            enc = code.encode(x)
            wt = sum(1 for sym in enc for c in sym if c != 0)
            ell = split(x, (0,) * k)
            val = Fraction(wt, code.d * (k - ell))
            if best is None or val < best.value:
                best = DistanceReport(val, (x, ell, wt), "k<=%d over F_%d" % (n_max, code.q))
                if stop is not None and val <= stop:
                    return best
    return best


@dataclass(frozen=True)
class BoundCheck:
    """Outcome of an exhaustive threshold certification."""

    ok: bool
    violator: Optional[tuple]  # (x_bits, y_bits, distance) when ok is False
    nodes: int


def verify_split0_lagged_bound(
    make_encoder: Callable, nbits: int, chunk_bits: int, threshold: Fraction
) -> BoundCheck:
    """Certify that every pair of length-nbits inputs diverging at position 1
    has encoding distance >= threshold * nbits.

    The search is exhaustive over all such pairs but explores them as a tree
    of chunk-aligned extensions: once a partial encoding distance already
    meets the required count, no extension can violate the bound (online
    encodings only accumulate further differences), so the subtree is
    skipped.  make_encoder must return a fresh online encoder supporting
    push(bit) -> symbol and clone().
    """
    need = Fraction(threshold) * nbits
    nodes = 0

    def extend(enc, val, length):
        out = []
        for t in range(length):
            out.append(enc.push((val >> (length - 1 - t)) & 1))
        return out

    def dfs(enc1, enc2, x1, x2, t, partial):
        nonlocal nodes
        if t == nbits:
            return None if partial >= need else (x1, x2, partial)
        length = min(chunk_bits, nbits - t)
        pairs = []
        for c1 in range(1 << length):
            for c2 in range(1 << length):
                if t == 0 and (c1 ^ c2) >> (length - 1) != 1:
                    continue  # pairs must diverge at the very first bit
                pairs.append((c1, c2))
        for c1, c2 in pairs:
            nodes += 1
            e1, e2 = enc1.clone(), enc2.clone()
            d = partial + sum(
                1 for a, b in zip(extend(e1, c1, length), extend(e2, c2, length)) if a != b
            )
            if d >= need:
                continue  # already safe; no extension can fall below the bound
            bad = dfs(e1, e2, (x1 << length) | c1, (x2 << length) | c2, t + length, d)
            if bad is not None:
                return bad
        return None

    bad = dfs(make_encoder(), make_encoder(), 0, 0, 0, Fraction(0))
    if bad is None:
        return BoundCheck(True, None, nodes)
    x1, x2, d = bad
    return BoundCheck(False, (x1, x2, d), nodes)


def brute_force_split0_min(make_encoder: Callable, nbits: int) -> Fraction:
    """Exact minimum distance/nbits over all split-0 pairs, by full
    enumeration (cross-check oracle for the pruned search; tiny nbits only)."""
    best = None
    for x1 in range(1 << nbits):
        for x2 in range(1 << nbits):
            if (x1 ^ x2) >> (nbits - 1) != 1:
                continue
            e1, e2 = make_encoder(), make_encoder()
            d = 0
            for t in range(nbits):
                s1 = e1.push((x1 >> (nbits - 1 - t)) & 1)
                s2 = e2.push((x2 >> (nbits - 1 - t)) & 1)
                if s1 != s2:
                    d += 1
            val = Fraction(d, nbits)
            if best is None or val < best:
                best = val
    return best

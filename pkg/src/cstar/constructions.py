"""Multilevel constellations from binary codes.

A point of the constellation is ``c1 + 2 c2 + ... + 2^(L-1) cL + 2^L z`` with
``(c1, ..., cL)`` drawn from a main code over F2^(nL). Everything here works
on the finite quotient modulo ``2^L``: a residue vector in {0..2^L-1}^n is
split into L bit-planes ("levels"), each an n-bit word.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence, Union

import numpy as np

from .gf2_codes import (
    BitWord,
    BinaryCode,
    BudgetExceeded,
    CodeError,
    full_space,
    parity,
    repetition,
    rref,
    span_array,
    _reduce_rows,
)

MAX_LEVELS = 4
DEFAULT_QUOTIENT_BUDGET = 2**24
MAX_EXPLICIT_SET_BITS = 24


@dataclass(frozen=True)
class Explicit:
    """A linear main code given by a generator over F2^(nL).

    Level ``i`` occupies coordinates ``i*n .. (i+1)*n - 1``.
    """

    code: BinaryCode


@dataclass(frozen=True)
class ExplicitSet:
    """A (possibly nonlinear) main code given as a raw list of codewords."""

    words: frozenset[int]


@dataclass(frozen=True)
class Product:
    """Independent levels C1 x ... x CL (Construction C)."""

    codes: tuple[BinaryCode, ...]


@dataclass(frozen=True)
class Coupled3:
    """Three levels: repetition code, ``c2``, and F2^n with parity tied to level 1."""

    c2: BinaryCode


Body = Union[Explicit, ExplicitSet, Product, Coupled3]


@dataclass(frozen=True)
class MainCode:
    n: int
    levels: int
    body: Body

    def __post_init__(self):
        body, n, L = self.body, self.n, self.levels
        if not 1 <= L <= MAX_LEVELS:
            raise CodeError(f"number of levels must be in 1..{MAX_LEVELS}")
        if isinstance(body, Explicit):
            if body.code.n != n * L:
                raise CodeError(f"explicit code length {body.code.n} != n*L = {n * L}")
        elif isinstance(body, ExplicitSet):
            if n * L > MAX_EXPLICIT_SET_BITS:
                raise CodeError(f"raw codeword lists are limited to n*L <= {MAX_EXPLICIT_SET_BITS}")
            if any(w >> (n * L) for w in body.words):
                raise CodeError("codeword longer than n*L")
        elif isinstance(body, Product):
            if len(body.codes) != L or any(c.n != n for c in body.codes):
                raise CodeError("product needs L codes of length n")
        elif isinstance(body, Coupled3):
            if L != 3 or body.c2.n != n:
                raise CodeError("coupled scheme has 3 levels and C2 of length n")
        else:
            raise TypeError(f"unknown main code body {body!r}")

    @property
    def is_linear(self) -> bool:
        if isinstance(self.body, ExplicitSet):
            words = self.body.words
            return 0 in words and all(a ^ b in words for a in words for b in words)
        return True

    @property
    def size(self) -> int:
        """Number of codewords of the main code."""
        body = self.body
        if isinstance(body, Explicit):
            return body.code.size
        if isinstance(body, ExplicitSet):
            return len(body.words)
        if isinstance(body, Product):
            out = 1
            for c in body.codes:
                out *= c.size
            return out
        return 2 * body.c2.size * 2 ** (self.n - 1)

    def _mask(self) -> int:
        return (1 << self.n) - 1

    def split(self, word: int) -> tuple[int, ...]:
        """Cut an nL-bit word into its L level words."""
        m = self._mask()
        return tuple((word >> (i * self.n)) & m for i in range(self.levels))

    def join(self, levels: Sequence[int]) -> int:
        out = 0
        for i, c in enumerate(levels):
            out |= int(c) << (i * self.n)
        return out

    def contains_levels(self, levels: Sequence[int]) -> bool:
        """Is (c1, ..., cL), given as n-bit ints, a codeword?"""
        if len(levels) != self.levels:
            raise CodeError(f"expected {self.levels} levels, got {len(levels)}")
        arrays = [np.array([c], dtype=np.uint64) for c in levels]
        return bool(self.contains_levels_array(arrays)[0])

    def contains_levels_array(self, levels: Sequence[np.ndarray]) -> np.ndarray:
        """Vectorised codeword test over L parallel uint64 arrays."""
        body, n = self.body, self.n
        if isinstance(body, Coupled3):
            c1, c2, c3 = levels
            ones = np.uint64(self._mask())
            c1_ok = (c1 == 0) | (c1 == ones)
            parity_ok = (np.bitwise_count(c3) & 1) == (c1 & np.uint64(1))
            return c1_ok & parity_ok & body.c2.contains_array(c2)
        if isinstance(body, Product):
            ok = np.ones(np.shape(levels[0]), dtype=bool)
            for code, c in zip(body.codes, levels):
                ok &= code.contains_array(c)
            return ok
        if isinstance(body, Explicit):
            word = np.zeros(np.shape(levels[0]), dtype=np.uint64)
            for i, c in enumerate(levels):
                word |= np.asarray(c, dtype=np.uint64) << np.uint64(i * n)
            return body.code.contains_array(word)
        word = np.zeros(np.shape(levels[0]), dtype=np.uint64)
        for i, c in enumerate(levels):
            word |= np.asarray(c, dtype=np.uint64) << np.uint64(i * n)
        table = np.array(sorted(body.words), dtype=np.uint64)
        idx = np.clip(np.searchsorted(table, word), 0, max(len(table) - 1, 0))
        return table[idx] == word if len(table) else np.zeros(word.shape, dtype=bool)

    def codeword_levels(self, budget: int = DEFAULT_QUOTIENT_BUDGET) -> list[np.ndarray]:
        """Enumerate all codewords as L parallel uint64 arrays."""
        if self.size > budget:
            raise BudgetExceeded(f"{self.size} codewords exceeds budget {budget}")
        body, n = self.body, self.n
        if isinstance(body, Coupled3):
            c2 = body.c2.codewords(budget)
            even = span_array(parity(n).generator)
            odd = even ^ np.uint64(1)
            ones = np.uint64(self._mask())
            parts = []
            for c1, c3set in ((np.uint64(0), even), (ones, odd)):
                a = np.repeat(c2, len(c3set))
                x = np.tile(c3set, len(c2))
                parts.append((np.full(a.shape, c1, dtype=np.uint64), a, x))
            return [np.concatenate([p[i] for p in parts]) for i in range(3)]
        if isinstance(body, Product):
            out = [np.zeros(1, dtype=np.uint64)]
            for code in body.codes:
                words = code.codewords(budget)
                m = len(out[0])
                out = [np.repeat(o, len(words)) for o in out] + [np.tile(words, m)]
            return out[1:]
        if isinstance(body, Explicit):
            words = body.code.codewords(budget)
        else:
            words = np.array(sorted(body.words), dtype=np.uint64)
        m = np.uint64(self._mask())
        return [(words >> np.uint64(i * n)) & m for i in range(self.levels)]

    def random_codeword_levels(self, rng: np.random.Generator, count: int) -> list[np.ndarray]:
        """Draw ``count`` uniformly random codewords."""
        body, n = self.body, self.n

        def combos(rows):
            out = np.zeros(count, dtype=np.uint64)
            for r in rows:
                pick = rng.integers(0, 2, size=count, dtype=np.uint64).astype(bool)
                out[pick] ^= np.uint64(r)
            return out

        if isinstance(body, Coupled3):
            bit = rng.integers(0, 2, size=count, dtype=np.uint64)
            c1 = np.where(bit == 1, np.uint64(self._mask()), np.uint64(0))
            c2 = combos(body.c2.generator)
            c3 = combos(parity(n).generator) ^ bit
            return [c1, c2, c3]
        if isinstance(body, Product):
            return [combos(code.generator) for code in body.codes]
        if isinstance(body, Explicit):
            words = combos(body.code.generator)
        else:
            table = np.array(sorted(body.words), dtype=np.uint64)
            words = table[rng.integers(0, len(table), size=count)]
        m = np.uint64(self._mask())
        return [(words >> np.uint64(i * n)) & m for i in range(self.levels)]


def explicit_code(code: BinaryCode, levels: int) -> MainCode:
    if code.n % levels:
        raise CodeError(f"code length {code.n} is not a multiple of {levels}")
    return MainCode(code.n // levels, levels, Explicit(code))


def explicit_set(words: Sequence[BitWord], levels: int) -> MainCode:
    lengths = {w.length for w in words}
    if len(lengths) != 1:
        raise CodeError("codewords must share one length")
    (length,) = lengths
    if length % levels:
        raise CodeError(f"codeword length {length} is not a multiple of {levels}")
    return MainCode(length // levels, levels, ExplicitSet(frozenset(w.value for w in words)))


def product_code(codes: Sequence[BinaryCode]) -> MainCode:
    codes = tuple(codes)
    if not codes:
        raise CodeError("need at least one level")
    return MainCode(codes[0].n, len(codes), Product(codes))


def build_coupled_scheme(n: int, c2: BinaryCode) -> MainCode:
    """The 3-level coupled main code with middle level ``c2``.

    Level 1 is {0...0, 1...1}; level 3 ranges over even-weight words when
    level 1 is zero and over odd-weight words otherwise.
    """
    if n <= 0 or n % 2:
        raise CodeError(f"coupled scheme needs an even positive n, got {n}")
    if c2.n != n:
        raise CodeError(f"C2 has length {c2.n}, expected {n}")
    return MainCode(n, 3, Coupled3(c2))


# -- residues <-> levels ------------------------------------------------------


def digits_to_levels(digits: np.ndarray, levels: int) -> list[np.ndarray]:
    """(N, n) residues mod 2^L -> L uint64 arrays of packed level words."""
    digits = np.asarray(digits)
    weights = np.uint64(1) << np.arange(digits.shape[-1], dtype=np.uint64)
    return [
        (((digits >> i) & 1).astype(np.uint64) * weights).sum(axis=-1, dtype=np.uint64)
        for i in range(levels)
    ]


def levels_to_digits(levels: Sequence[np.ndarray], n: int) -> np.ndarray:
    shifts = np.arange(n, dtype=np.uint64)
    out = np.zeros(np.shape(levels[0]) + (n,), dtype=np.uint8)
    for i, c in enumerate(levels):
        bits = (np.asarray(c, dtype=np.uint64)[..., None] >> shifts) & np.uint64(1)
        out |= (bits.astype(np.uint8) << i)
    return out


def _as_point(point, n: int) -> np.ndarray:
    p = np.asarray(point, dtype=np.int64)
    if p.shape != (n,):
        raise CodeError(f"point has shape {p.shape}, expected ({n},)")
    return p


def membership(point: Sequence[int], main: MainCode) -> bool:
    """Is the integer vector ``point`` in the constellation of ``main``?"""
    p = _as_point(point, main.n) % (1 << main.levels)
    return bool(membership_array(p[None, :], main)[0])


def membership_array(points: np.ndarray, main: MainCode) -> np.ndarray:
    """Vectorised membership for an (N, n) integer array."""
    points = np.asarray(points, dtype=np.int64)
    if points.shape[-1] != main.n:
        raise CodeError(f"points have dimension {points.shape[-1]}, expected {main.n}")
    residues = (points % (1 << main.levels)).astype(np.uint8)
    return main.contains_levels_array(digits_to_levels(residues, main.levels))


# -- quotient -----------------------------------------------------------------


def point_keys(points: np.ndarray, levels: int) -> np.ndarray:
    """Sort keys for residue rows; key order equals lexicographic row order."""
    points = np.ascontiguousarray(points, dtype=np.uint8)
    n = points.shape[-1]
    if n * levels <= 64:
        shifts = np.arange(n - 1, -1, -1, dtype=np.uint64) * np.uint64(levels)
        return (points.astype(np.uint64) << shifts).sum(axis=-1, dtype=np.uint64)
    return points.view(np.dtype((np.void, n)))[..., 0]


@dataclass(frozen=True, eq=False)
class ConstellationQuotient:
    """The constellation reduced mod 2^L: residue rows sorted lexicographically."""

    n: int
    levels: int
    points: np.ndarray
    source: MainCode | None = None
    keys: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        self.points.setflags(write=False)
        keys = point_keys(self.points, self.levels)
        keys.setflags(write=False)
        object.__setattr__(self, "keys", keys)

    @classmethod
    def from_points(cls, points, levels: int, source: MainCode | None = None) -> ConstellationQuotient:
        pts = np.asarray(points, dtype=np.int64) % (1 << levels)
        pts = np.ascontiguousarray(pts.astype(np.uint8))
        if pts.ndim != 2:
            raise CodeError("points must be a 2-d array")
        keys = point_keys(pts, levels)
        _, idx = np.unique(keys, return_index=True)
        return cls(pts.shape[1], levels, pts[idx], source)

    @property
    def modulus(self) -> int:
        return 1 << self.levels

    def __len__(self) -> int:
        return len(self.points)

    def contains_array(self, residues: np.ndarray) -> np.ndarray:
        keys = point_keys(np.asarray(residues, dtype=np.uint8), self.levels)
        idx = np.searchsorted(self.keys, keys)
        idx = np.minimum(idx, len(self.keys) - 1)
        return self.keys[idx] == keys

    def __contains__(self, point) -> bool:
        p = _as_point(point, self.n) % self.modulus
        return bool(self.contains_array(p[None, :])[0])

    def as_set(self) -> set[tuple[int, ...]]:
        return {tuple(int(v) for v in row) for row in self.points}


def quotient(main: MainCode, budget: int = DEFAULT_QUOTIENT_BUDGET) -> ConstellationQuotient:
    """Enumerate the residues of the constellation mod 2^L."""
    levels = main.codeword_levels(budget)
    digits = levels_to_digits(levels, main.n)
    return ConstellationQuotient.from_points(digits, main.levels, source=main)


def construction_c(codes: Sequence[BinaryCode], budget: int = DEFAULT_QUOTIENT_BUDGET) -> ConstellationQuotient:
    """Quotient of C1 + 2 C2 + ... + 2^(L-1) CL + 2^L Z^n, summed level by level."""
    codes = list(codes)
    if not codes:
        raise CodeError("need at least one level")
    n = codes[0].n
    if any(c.n != n for c in codes):
        raise CodeError("all level codes must share one length")
    total = 1
    for c in codes:
        total *= c.size
    if total > budget:
        raise BudgetExceeded(f"{total} points exceeds budget {budget}")
    shifts = np.arange(n, dtype=np.uint64)
    sums = np.zeros((1, n), dtype=np.int64)
    for i, code in enumerate(codes):
        words = code.codewords(budget)
        vecs = ((words[:, None] >> shifts) & np.uint64(1)).astype(np.int64) << i
        sums = (sums[:, None, :] + vecs[None, :, :]).reshape(-1, n)
    return ConstellationQuotient.from_points(sums, len(codes), source=product_code(codes))


# -- projections --------------------------------------------------------------


def _check_level(main: MainCode, i: int):
    if not 1 <= i <= main.levels:
        raise CodeError(f"level index {i} outside 1..{main.levels}")


def projection_code(main: MainCode, i: int, budget: int = DEFAULT_QUOTIENT_BUDGET) -> frozenset[BitWord]:
    """All level-i subvectors appearing in main-code codewords."""
    _check_level(main, i)
    body = main.body
    if not isinstance(body, ExplicitSet):
        code = projection_span(main, i)
        return frozenset(BitWord(main.n, int(w)) for w in code.codewords(budget))
    levels = main.codeword_levels(budget)
    return frozenset(BitWord(main.n, int(w)) for w in np.unique(levels[i - 1]))


def antiprojection(
    main: MainCode, i: int, fixed: Sequence[BitWord], budget: int = DEFAULT_QUOTIENT_BUDGET
) -> frozenset[BitWord]:
    """Level-i words completing the other (fixed) levels to a codeword.

    ``fixed`` lists the L-1 other levels in order, skipping level i.
    """
    _check_level(main, i)
    fixed = list(fixed)
    if len(fixed) != main.levels - 1:
        raise CodeError(f"need {main.levels - 1} fixed levels, got {len(fixed)}")
    if any(w.length != main.n for w in fixed):
        raise CodeError(f"fixed words must have length {main.n}")
    if isinstance(main.body, ExplicitSet):
        levels = main.codeword_levels(budget)
        keep = np.ones(len(levels[0]), dtype=bool)
        others = [j for j in range(main.levels) if j != i - 1]
        for j, w in zip(others, fixed):
            keep &= levels[j] == np.uint64(w.value)
        return frozenset(BitWord(main.n, int(w)) for w in np.unique(levels[i - 1][keep]))
    # linear: the answer is empty or a coset of the zero antiprojection
    candidates = projection_span(main, i).codewords(budget)
    words = [np.full(len(candidates), np.uint64(w.value)) for w in fixed]
    words.insert(i - 1, candidates)
    ok = main.contains_levels_array(words)
    return frozenset(BitWord(main.n, int(w)) for w in candidates[ok])


def projection_span(main: MainCode, i: int) -> BinaryCode:
    """Projection code at level i, as a linear code (linear main codes only)."""
    _check_level(main, i)
    body, n = main.body, main.n
    if isinstance(body, Coupled3):
        return (repetition(n), body.c2, full_space(n))[i - 1]
    if isinstance(body, Product):
        return body.codes[i - 1]
    if isinstance(body, Explicit):
        return rref([main.split(g)[i - 1] for g in body.code.generator], n=n)
    raise CodeError("projection_span needs a linear main code")


def zero_antiprojection(main: MainCode, i: int) -> BinaryCode:
    """Antiprojection at level i with every other level fixed to zero."""
    _check_level(main, i)
    body, n = main.body, main.n
    if isinstance(body, Coupled3):
        return (rref([], n=n), body.c2, parity(n))[i - 1]
    if isinstance(body, Product):
        return body.codes[i - 1]
    if isinstance(body, Explicit):
        # move level i to the top bits; RREF rows pivoting there vanish elsewhere
        L = main.levels
        order = [j for j in range(L) if j != i - 1] + [i - 1]
        permuted = [
            sum(main.split(g)[j] << (slot * n) for slot, j in enumerate(order))
            for g in body.code.generator
        ]
        reduced = _reduce_rows(permuted, n * L)
        top = (L - 1) * n
        return rref([r >> top for r in reduced if r >> top and not r & ((1 << top) - 1)], n=n)
    raise CodeError("zero_antiprojection needs a linear main code")

"""Exact linear algebra over F2 and code-theoretic predicates.

Words are bit-packed into Python integers: coordinate ``j`` (0-based) is bit
``j``, so the leftmost character of a text row is the least significant bit.
Bulk enumeration uses ``numpy.uint64`` arrays, which caps code length at 64.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

MAX_WORD_LENGTH = 192
MAX_CODE_LENGTH = 64
DEFAULT_ENUM_BUDGET = 2**28

# span tables above this many entries are enumerated in chunks
_CHUNK_BITS = 20


class CodeError(ValueError):
    """Malformed code input (bad lengths, bad file contents)."""


class BudgetExceeded(RuntimeError):
    """An enumeration would exceed its configured budget."""


@dataclass(frozen=True)
class BitWord:
    """An element of F2^length."""

    length: int
    value: int = 0

    def __post_init__(self):
        if not 0 < self.length <= MAX_WORD_LENGTH:
            raise CodeError(f"word length must be in 1..{MAX_WORD_LENGTH}, got {self.length}")
        if self.value < 0 or self.value >> self.length:
            raise CodeError("word value has bits outside its length")

    @classmethod
    def from_bits(cls, bits: Iterable[int]) -> BitWord:
        bits = list(bits)
        value = 0
        for j, b in enumerate(bits):
            if b not in (0, 1):
                raise CodeError(f"bit {j} is {b!r}, expected 0 or 1")
            value |= b << j
        return cls(len(bits), value)

    @classmethod
    def from_string(cls, s: str) -> BitWord:
        s = s.strip()
        if not s or set(s) - {"0", "1"}:
            raise CodeError(f"not a binary string: {s!r}")
        return cls.from_bits(int(c) for c in s)

    @classmethod
    def zero(cls, length: int) -> BitWord:
        return cls(length, 0)

    @classmethod
    def ones(cls, length: int) -> BitWord:
        return cls(length, (1 << length) - 1)

    def bits(self) -> tuple[int, ...]:
        return tuple((self.value >> j) & 1 for j in range(self.length))

    @property
    def weight(self) -> int:
        return self.value.bit_count()

    def _check(self, other: BitWord):
        if not isinstance(other, BitWord):
            return NotImplemented
        if other.length != self.length:
            raise CodeError(f"length mismatch: {self.length} vs {other.length}")

    def __xor__(self, other: BitWord) -> BitWord:
        self._check(other)
        return BitWord(self.length, self.value ^ other.value)

    __add__ = __xor__

    def __and__(self, other: BitWord) -> BitWord:
        self._check(other)
        return BitWord(self.length, self.value & other.value)

    def dot(self, other: BitWord) -> int:
        """Standard inner product over F2."""
        self._check(other)
        return (self.value & other.value).bit_count() & 1

    def __str__(self) -> str:
        return "".join(str(b) for b in self.bits())


def schur(x: BitWord, y: BitWord) -> BitWord:
    """Coordinatewise product x * y."""
    return x & y


def carry_decompose(x: BitWord, y: BitWord) -> tuple[BitWord, BitWord]:
    """Split the integer sum x + y into (x xor y, x * y).

    Coordinatewise, x + y == (x xor y) + 2 * (x * y) as integers.
    """
    return x ^ y, schur(x, y)


def _as_int(row, n: int | None) -> tuple[int, int]:
    if isinstance(row, BitWord):
        return row.value, row.length
    if isinstance(row, str):
        w = BitWord.from_string(row)
        return w.value, w.length
    if isinstance(row, (int, np.integer)):
        if n is None:
            raise CodeError("integer rows need an explicit length")
        return int(row), n
    w = BitWord.from_bits(int(b) for b in row)
    return w.value, w.length


def _reduce_rows(rows: list[int], n: int) -> list[int]:
    """Reduced row-echelon form; pivots are lowest set bits, sorted ascending."""
    rows = [r for r in rows if r]
    out: list[int] = []
    for col in range(n):
        bit = 1 << col
        for idx, r in enumerate(rows):
            if r & bit:
                piv = rows.pop(idx)
                break
        else:
            continue
        rows = [r ^ piv if r & bit else r for r in rows]
        out = [r ^ piv if r & bit else r for r in out]
        out.append(piv)
        rows = [r for r in rows if r]
        if not rows:
            break
    return out


@dataclass(frozen=True)
class BinaryCode:
    """A binary linear [n, k] code held by its canonical RREF generator.

    Two codes compare equal iff they have the same row space.
    """

    n: int
    generator: tuple[int, ...]
    asserted_distance: int | None = field(default=None, compare=False)
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        if not 0 < self.n <= MAX_CODE_LENGTH:
            raise CodeError(f"code length must be in 1..{MAX_CODE_LENGTH}, got {self.n}")
        if list(self.generator) != _reduce_rows(list(self.generator), self.n):
            raise CodeError("generator is not in canonical form; build codes with rref()")

    @property
    def k(self) -> int:
        return len(self.generator)

    @property
    def size(self) -> int:
        return 1 << self.k

    def rows(self) -> list[BitWord]:
        return [BitWord(self.n, g) for g in self.generator]

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple((g & -g).bit_length() - 1 for g in self.generator)

    def __contains__(self, word) -> bool:
        value, length = _as_int(word, self.n)
        if length != self.n:
            raise CodeError(f"length mismatch: word {length}, code {self.n}")
        for g, p in zip(self.generator, self.pivots):
            if value >> p & 1:
                value ^= g
        return value == 0

    def contains_array(self, words: np.ndarray) -> np.ndarray:
        """Vectorised membership for a uint64 array of words."""
        words = np.asarray(words, dtype=np.uint64)
        ok = np.ones(words.shape, dtype=bool)
        for h in parity_rows(self):
            ok &= (np.bitwise_count(words & np.uint64(h)) & 1) == 0
        return ok

    def codewords(self, budget: int = DEFAULT_ENUM_BUDGET) -> np.ndarray:
        """All 2^k codewords as uint64, in coefficient order."""
        if self.size > budget:
            raise BudgetExceeded(f"2^{self.k} codewords exceeds budget {budget}")
        return span_array(self.generator)

    def __str__(self) -> str:
        d = self._cache.get("min_distance", self.asserted_distance)
        return f"[{self.n},{self.k}" + (f",{d}]" if d is not None else "]")


def rref(rows: Sequence, n: int | None = None) -> BinaryCode:
    """The code spanned by ``rows``, in canonical form.

    Rows may be BitWords, '0'/'1' strings, bit sequences or ints (with ``n``).
    """
    ints = []
    lengths = set()
    for r in rows:
        v, length = _as_int(r, n)
        ints.append(v)
        lengths.add(length)
    if n is not None:
        lengths.add(n)
    if len(lengths) > 1:
        raise CodeError(f"inconsistent row lengths: {sorted(lengths)}")
    if not lengths:
        raise CodeError("cannot infer code length from zero rows; pass n")
    (length,) = lengths
    if length == 0:
        raise CodeError("code length must be positive")
    return BinaryCode(length, tuple(_reduce_rows(ints, length)))


def zero_code(n: int) -> BinaryCode:
    return BinaryCode(n, ())


def full_space(n: int) -> BinaryCode:
    return BinaryCode(n, tuple(1 << j for j in range(n)))


def repetition(n: int) -> BinaryCode:
    """The [n, 1, n] repetition code."""
    return BinaryCode(n, ((1 << n) - 1,))


def parity(n: int) -> BinaryCode:
    """The [n, n-1, 2] even-weight code."""
    return BinaryCode(n, tuple((1 << j) | (1 << (n - 1)) for j in range(n - 1)))


def parity_rows(code: BinaryCode) -> tuple[int, ...]:
    """Rows of a parity-check matrix (the dual's generator)."""
    if "parity_rows" not in code._cache:
        code._cache["parity_rows"] = _dual_rows(code)
    return code._cache["parity_rows"]


def _dual_rows(code: BinaryCode) -> tuple[int, ...]:
    pivots = code.pivots
    pivset = set(pivots)
    out = []
    for f in range(code.n):
        if f in pivset:
            continue
        h = 1 << f
        for g, p in zip(code.generator, pivots):
            if g >> f & 1:
                h |= 1 << p
        out.append(h)
    return tuple(_reduce_rows(out, code.n))


def dual(code: BinaryCode) -> BinaryCode:
    """The orthogonal code C^perp, of dimension n - k."""
    return BinaryCode(code.n, parity_rows(code))


def is_self_orthogonal(code: BinaryCode) -> bool:
    g = code.generator
    return all((a & b).bit_count() % 2 == 0 for i, a in enumerate(g) for b in g[i:])


def is_self_dual(code: BinaryCode) -> bool:
    return 2 * code.k == code.n and is_self_orthogonal(code)


def contains_all_ones(code: BinaryCode) -> bool:
    return BitWord.ones(code.n) in code


def is_subcode(a: BinaryCode, b: BinaryCode) -> bool:
    """True iff a is contained in b."""
    if a.n != b.n:
        raise CodeError(f"length mismatch: {a.n} vs {b.n}")
    return all(BitWord(a.n, g) in b for g in a.generator)


def span_array(rows: Sequence[int]) -> np.ndarray:
    """Every F2-combination of ``rows`` as a uint64 array (2^len(rows) entries).

    Index bit ``i`` selects row ``i``.
    """
    out = np.zeros(1, dtype=np.uint64)
    for r in rows:
        out = np.concatenate([out, out ^ np.uint64(r)])
    return out


def _iter_chunks(code: BinaryCode, budget: int):
    if code.size > budget:
        raise BudgetExceeded(
            f"2^{code.k} codewords exceeds enumeration budget {budget}; supply the value externally"
        )
    low = span_array(code.generator[:_CHUNK_BITS])
    for hi in span_array(code.generator[_CHUNK_BITS:]):
        yield low ^ hi


def weight_enumerator(code: BinaryCode, budget: int = DEFAULT_ENUM_BUDGET) -> tuple[int, ...]:
    """Number of codewords of each Hamming weight 0..n."""
    if "weights" not in code._cache:
        counts = np.zeros(code.n + 1, dtype=np.int64)
        for chunk in _iter_chunks(code, budget):
            counts += np.bincount(np.bitwise_count(chunk), minlength=code.n + 1)
        code._cache["weights"] = tuple(int(c) for c in counts)
    return code._cache["weights"]


def min_hamming_distance(code: BinaryCode, budget: int = DEFAULT_ENUM_BUDGET) -> int:
    """Minimum weight over the nonzero codewords."""
    if code.k == 0:
        raise CodeError("minimum distance of the zero code is undefined")
    if "min_distance" not in code._cache:
        if "weights" in code._cache:
            w = code._cache["weights"]
            code._cache["min_distance"] = next(i for i in range(1, code.n + 1) if w[i])
        else:
            best = code.n
            for chunk in _iter_chunks(code, budget):
                wt = np.bitwise_count(chunk)
                wt = wt[chunk != 0]
                if wt.size:
                    best = min(best, int(wt.min()))
            code._cache["min_distance"] = best
    return code._cache["min_distance"]


def distance_status(code: BinaryCode, budget: int = DEFAULT_ENUM_BUDGET) -> tuple[int | None, str]:
    """Minimum distance plus how it is known: 'verified', 'asserted' or 'unknown'.

    Raises CodeError when an asserted distance contradicts enumeration.
    """
    if code.k == 0:
        return None, "unknown"
    try:
        d = min_hamming_distance(code, budget)
    except BudgetExceeded:
        if code.asserted_distance is None:
            return None, "unknown"
        return code.asserted_distance, "asserted"
    if code.asserted_distance is not None and code.asserted_distance != d:
        raise CodeError(f"asserted d={code.asserted_distance} but enumeration gives d={d}")
    return d, "verified"


def parse_matrix_text(text: str) -> tuple[list[BitWord], dict]:
    """Parse the generator-matrix text format.

    One row per line of '0'/'1'; blank lines ignored; '#' starts a comment.
    Header comments recognised: ``# d=<int>`` and ``# explicit``.
    """
    rows: list[BitWord] = []
    header: dict = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if body.startswith("d="):
                try:
                    header["d"] = int(body[2:].strip())
                except ValueError as exc:
                    raise CodeError(f"line {lineno}: bad distance header {line!r}") from exc
            elif body == "explicit":
                header["explicit"] = True
            continue
        try:
            rows.append(BitWord.from_string(line))
        except CodeError as exc:
            raise CodeError(f"line {lineno}: {exc}") from exc
    if not rows:
        raise CodeError("no matrix rows found")
    if len({r.length for r in rows}) > 1:
        raise CodeError("rows have inconsistent lengths")
    return rows, header


def format_matrix(code: BinaryCode, comments: Sequence[str] = ()) -> str:
    lines = [f"# {c}" for c in comments]
    lines += [str(r) for r in code.rows()]
    return "\n".join(lines) + "\n"

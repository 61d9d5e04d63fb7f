"""Symbols, words and code families over the alphabet of m-bit strings.

All codes answer membership queries; enumerable ones can also be listed
in lexicographic order (by concatenated bits), brute-force decoded and
measured for minimum distance.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from pathlib import Path
from typing import Iterator

from .errors import CapacityError, ParameterError

# Default cap on how many codewords an exhaustive scan may touch.
ENUM_BUDGET = 1 << 20


@dataclass(frozen=True)
class Symbol:
    """A fixed-width bit string, stored as an integer. Bit 0 is the MSB."""

    value: int
    width: int

    def __post_init__(self):
        if self.width < 1:
            raise ParameterError(f"symbol width must be >= 1, got {self.width}")
        if not 0 <= self.value < (1 << self.width):
            raise ParameterError(f"value {self.value} out of range for width {self.width}")

    @property
    def bits(self) -> str:
        return format(self.value, f"0{self.width}b")

    def __xor__(self, other: "Symbol") -> "Symbol":
        if self.width != other.width:
            raise ParameterError("XOR of symbols with different widths")
        return Symbol(self.value ^ other.value, self.width)


@dataclass(frozen=True)
class Word:
    """An ordered tuple of n symbols of uniform width."""

    symbols: tuple[Symbol, ...]

    def __post_init__(self):
        if len(self.symbols) < 2:
            raise ParameterError("a word needs at least 2 coordinates")
        widths = {s.width for s in self.symbols}
        if len(widths) != 1:
            raise ParameterError(f"mixed symbol widths in word: {sorted(widths)}")

    @classmethod
    def from_values(cls, values, m: int) -> "Word":
        return cls(tuple(Symbol(v, m) for v in values))

    @classmethod
    def from_index(cls, index: int, n: int, m: int) -> "Word":
        """Inverse of .index(): coordinate 1 occupies the most significant bits."""
        mask = (1 << m) - 1
        vals = [(index >> (m * (n - 1 - i))) & mask for i in range(n)]
        return cls.from_values(vals, m)

    @property
    def n(self) -> int:
        return len(self.symbols)

    @property
    def m(self) -> int:
        return self.symbols[0].width

    @property
    def values(self) -> tuple[int, ...]:
        return tuple(s.value for s in self.symbols)

    def index(self) -> int:
        out = 0
        for s in self.symbols:
            out = (out << s.width) | s.value
        return out

    @property
    def bits(self) -> str:
        return "".join(s.bits for s in self.symbols)

    def replace(self, i: int, symbol: Symbol) -> "Word":
        """New word with coordinate i (1-based) replaced."""
        if not 1 <= i <= self.n:
            raise ParameterError(f"coordinate {i} out of range")
        syms = list(self.symbols)
        syms[i - 1] = symbol
        return Word(tuple(syms))

    def to_hex(self) -> str:
        digits = -(-self.n * self.m // 4)
        return format(self.index(), f"0{digits}x")


def all_words(n: int, m: int) -> Iterator[Word]:
    """Every word of Q^n in lexicographic order of concatenated bits."""
    for vals in product(range(1 << m), repeat=n):
        yield Word.from_values(vals, m)


def hamming_distance(x: Word, y: Word) -> int:
    if x.n != y.n or x.m != y.m:
        raise ParameterError("hamming_distance over words of different shapes")
    return sum(1 for a, b in zip(x.symbols, y.symbols) if a != b)


class Code:
    """Base class: a set of words of length n over m-bit symbols.

    Subclasses fill in membership and enumeration; minimum distance and
    nearest-codeword decoding fall back to brute force.
    """

    n: int
    m: int

    def contains(self, w: Word) -> bool:
        raise NotImplementedError

    def size(self) -> int:
        raise NotImplementedError

    def codewords(self, budget: int = ENUM_BUDGET) -> Iterator[Word]:
        raise NotImplementedError

    def dimension(self) -> Fraction:
        """k, i.e. log of |C| in base 2^m. Exact only when |C| is a power of 2."""
        size = self.size()
        k2 = size.bit_length() - 1
        if size != 1 << k2:
            raise ParameterError("dimension is irrational: |C| is not a power of 2")
        return Fraction(k2, self.m)

    def min_distance(self, budget: int = ENUM_BUDGET) -> int:
        self._check_budget(budget)
        words = list(self.codewords(budget))
        return _pairwise_min_distance(words)

    def nearest_codeword(self, w: Word, budget: int = ENUM_BUDGET) -> tuple[Word, int]:
        """Closest codeword and its distance; ties keep enumeration order."""
        self._check_shape(w)
        self._check_budget(budget)
        best = None
        best_d = w.n + 1
        for c in self.codewords(budget):
            d = hamming_distance(w, c)
            if d < best_d:
                best, best_d = c, d
                if d == 0:
                    break
        assert best is not None
        return best, best_d

    def _check_shape(self, w: Word):
        if w.n != self.n or w.m != self.m:
            raise ParameterError(
                f"word shape ({w.n},{w.m}) does not match code ({self.n},{self.m})")

    def _check_budget(self, budget: int):
        if self.size() > budget:
            raise CapacityError(
                f"code has {self.size()} codewords, budget is {budget}")


def _pairwise_min_distance(words: list[Word]) -> int:
    if len(words) < 2:
        raise ParameterError("minimum distance needs at least 2 codewords")
    best = words[0].n + 1
    for i, x in enumerate(words):
        for y in words[i + 1:]:
            d = hamming_distance(x, y)
            if d < best:
                best = d
    return best


class RepetitionCode(Code):
    """All constant words: the (n, 1, n) code."""

    def __init__(self, n: int, m: int):
        if n < 2 or m < 1:
            raise ParameterError(f"repetition code needs n >= 2, m >= 1, got ({n},{m})")
        self.n = n
        self.m = m

    def contains(self, w: Word) -> bool:
        self._check_shape(w)
        first = w.symbols[0]
        return all(s == first for s in w.symbols)

    def size(self) -> int:
        return 1 << self.m

    def codewords(self, budget: int = ENUM_BUDGET) -> Iterator[Word]:
        self._check_budget(budget)
        for v in range(1 << self.m):
            yield Word.from_values([v] * self.n, self.m)

    def min_distance(self, budget: int = ENUM_BUDGET) -> int:
        return self.n

    def __repr__(self):
        return f"RepetitionCode(n={self.n}, m={self.m})"


class ParityCheckCode(Code):
    """Words whose symbols XOR to zero: the (n, n-1, 2) code."""

    def __init__(self, n: int, m: int):
        if n < 2 or m < 1:
            raise ParameterError(f"parity code needs n >= 2, m >= 1, got ({n},{m})")
        self.n = n
        self.m = m

    def contains(self, w: Word) -> bool:
        self._check_shape(w)
        acc = 0
        for s in w.symbols:
            acc ^= s.value
        return acc == 0

    def size(self) -> int:
        return 1 << (self.m * (self.n - 1))

    def codewords(self, budget: int = ENUM_BUDGET) -> Iterator[Word]:
        self._check_budget(budget)
        # The last symbol is determined by the first n-1, so lexicographic
        # order over prefixes is lexicographic order over full words.
        for prefix in product(range(1 << self.m), repeat=self.n - 1):
            last = 0
            for v in prefix:
                last ^= v
            yield Word.from_values(list(prefix) + [last], self.m)

    def min_distance(self, budget: int = ENUM_BUDGET) -> int:
        return 2

    def __repr__(self):
        return f"ParityCheckCode(n={self.n}, m={self.m})"


class ExplicitCode(Code):
    """A code given by listing its codewords.

    The minimum distance is computed at construction and must be >= 2.
    """

    def __init__(self, n: int, m: int, words, budget: int = ENUM_BUDGET):
        self.n = n
        self.m = m
        seen = set()
        ordered = []
        for w in words:
            if w.n != n or w.m != m:
                raise ParameterError(f"codeword shape ({w.n},{w.m}) does not match ({n},{m})")
            idx = w.index()
            if idx not in seen:
                seen.add(idx)
                ordered.append(w)
        if len(ordered) > budget:
            raise CapacityError(f"{len(ordered)} codewords exceed budget {budget}")
        ordered.sort(key=Word.index)
        self._words = tuple(ordered)
        self._indices = frozenset(seen)
        self._d = _pairwise_min_distance(ordered)
        if self._d < 2:
            raise ParameterError(f"minimum distance {self._d} < 2")

    def contains(self, w: Word) -> bool:
        self._check_shape(w)
        return w.index() in self._indices

    def size(self) -> int:
        return len(self._words)

    def codewords(self, budget: int = ENUM_BUDGET) -> Iterator[Word]:
        self._check_budget(budget)
        return iter(self._words)

    def min_distance(self, budget: int = ENUM_BUDGET) -> int:
        return self._d

    def __repr__(self):
        return f"ExplicitCode(n={self.n}, m={self.m}, |C|={self.size()})"


# Low-weight irreducible polynomials for GF(2^m), indexed by m.
_GF_POLY = {
    1: 0b11,
    2: 0b111,
    3: 0b1011,
    4: 0b10011,
    5: 0b100101,
    6: 0b1000011,
    7: 0b10000011,
    8: 0b100011011,
}


def gf_mul(a: int, b: int, m: int) -> int:
    """Carry-less multiply in GF(2^m)."""
    poly = _GF_POLY[m]
    out = 0
    while b:
        if b & 1:
            out ^= a
        b >>= 1
        a <<= 1
        if a >> m:
            a ^= poly
    return out


def _poly_eval(coeffs: tuple[int, ...], point: int, m: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = gf_mul(acc, point, m) ^ c
    return acc


class MDSCode(Code):
    """Evaluations of degree-<k polynomials over GF(2^m) at n distinct points.

    The whole codeword set is materialized at construction and the distance
    d = n-k+1 is confirmed by brute force; construction fails otherwise.
    """

    def __init__(self, n: int, k: int, m: int, points=None, budget: int = ENUM_BUDGET):
        if m not in _GF_POLY:
            raise ParameterError(f"field GF(2^m) supported for 1 <= m <= 8, got m={m}")
        if not 1 <= k <= n - 1:
            raise ParameterError(f"need 1 <= k <= n-1, got k={k}, n={n}")
        if points is None:
            points = tuple(range(n))
        points = tuple(points)
        if len(points) != n or len(set(points)) != n:
            raise ParameterError("need n distinct evaluation points")
        if any(not 0 <= p < (1 << m) for p in points):
            raise ParameterError("evaluation points outside GF(2^m)")
        size = 1 << (m * k)
        if size > budget:
            raise CapacityError(f"|C| = {size} exceeds budget {budget}")
        self.n = n
        self.m = m
        self.k = k
        self.points = points
        words = []
        for coeffs in product(range(1 << m), repeat=k):
            vals = tuple(_poly_eval(coeffs, p, m) for p in points)
            words.append(Word.from_values(vals, m))
        words.sort(key=Word.index)
        self._words = tuple(words)
        self._indices = frozenset(w.index() for w in words)
        if len(self._indices) != size:
            raise ParameterError("evaluation map is not injective (bad points)")
        d = _pairwise_min_distance(words)
        if d != n - k + 1:
            raise ParameterError(f"measured distance {d} != n-k+1 = {n - k + 1}")
        self._d = d

    def contains(self, w: Word) -> bool:
        self._check_shape(w)
        return w.index() in self._indices

    def size(self) -> int:
        return 1 << (self.m * self.k)

    def codewords(self, budget: int = ENUM_BUDGET) -> Iterator[Word]:
        self._check_budget(budget)
        return iter(self._words)

    def dimension(self) -> Fraction:
        return Fraction(self.k)

    def min_distance(self, budget: int = ENUM_BUDGET) -> int:
        return self._d

    def __repr__(self):
        return f"MDSCode(n={self.n}, k={self.k}, m={self.m})"


def save_explicit_code(code: Code, path, budget: int = ENUM_BUDGET):
    """Text format: first line "n m", then one hex codeword per line."""
    lines = [f"{code.n} {code.m}"]
    lines += [w.to_hex() for w in code.codewords(budget)]
    Path(path).write_text("\n".join(lines) + "\n")


def load_explicit_code(path, budget: int = ENUM_BUDGET) -> ExplicitCode:
    lines = [ln.strip() for ln in Path(path).read_text().splitlines() if ln.strip()]
    if not lines:
        raise ParameterError(f"empty code file {path}")
    try:
        n, m = (int(tok) for tok in lines[0].split())
    except ValueError as exc:
        raise ParameterError(f"bad header {lines[0]!r} in {path}") from exc
    digits = -(-n * m // 4)
    words = []
    for ln in lines[1:]:
        if len(ln) != digits:
            raise ParameterError(f"codeword {ln!r} is not {digits} hex digits")
        words.append(Word.from_index(int(ln, 16), n, m))
    return ExplicitCode(n, m, words, budget=budget)

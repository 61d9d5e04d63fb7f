"""Average-free integer sets and the arithmetic-tuple symbol encoder.

A set is free of order n when x2 + ... + xn = (n-1)*x1 has no solution in
the set except all-equal; order 3 is the classic no-3-term-arithmetic-
progression condition. Small optima come from an exact branch-and-bound
search; beyond its range a digit construction takes over (vectors with
bounded digits mapped into a carry-free base, keeping either the whole
0/1 cube or the largest constant-norm shell).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from pathlib import Path

from .errors import CapacityError, ConstructionFault, ParameterError

FREE_CHECK_BUDGET = 1 << 24
EXACT_SEARCH_CAP = 60
DIGIT_ENUM_BUDGET = 1 << 20


def verify_free(values, order: int, budget: int = FREE_CHECK_BUDGET) -> bool:
    """Exhaustively confirm that only all-equal tuples solve the constraint."""
    if order < 3:
        raise ParameterError(f"order must be >= 3, got {order}")
    values = sorted(set(values))
    k = order - 1
    if len(values) ** order > budget:
        raise CapacityError(
            f"{len(values)}^{order} tuples exceed budget {budget}")
    members = set(values)
    for combo in product(values, repeat=k):
        total = sum(combo)
        if total % k:
            continue
        x1 = total // k
        if x1 in members and any(c != x1 for c in combo):
            return False
    return True


@dataclass(frozen=True)
class FreeSet:
    """A verified order-n free subset of {1..bound}."""

    bound: int
    order: int
    members: tuple[int, ...]

    def __post_init__(self):
        if self.members != tuple(sorted(set(self.members))):
            raise ParameterError("members must be sorted and distinct")
        if self.members and not (1 <= self.members[0] and self.members[-1] <= self.bound):
            raise ParameterError(f"members outside 1..{self.bound}")
        if not verify_free(self.members, self.order):
            raise ParameterError(f"set is not free of order {self.order}")

    def __len__(self):
        return len(self.members)


def _conflicts_order3(candidate: int, chosen: list[int], members: set[int]) -> bool:
    for a in chosen:
        if (2 * candidate - a) in members:   # candidate is the midpoint
            return True
        if (2 * a - candidate) in members:   # candidate extends a progression
            return True
        # a appearing twice: a + a = 2*candidate
        if a + a == 2 * candidate:
            return True
    return False


def _conflicts_general(candidate: int, chosen: list[int], order: int) -> bool:
    # chosen is free by induction, so any violation here involves candidate
    pool = chosen + [candidate]
    members = set(pool)
    k = order - 1
    for combo in product(pool, repeat=k):
        total = sum(combo)
        if total % k:
            continue
        x1 = total // k
        if x1 in members and any(c != x1 for c in combo):
            return True
    return False


@lru_cache(maxsize=None)
def exact_max_free_set(bound: int, order: int = 3, cap: int = EXACT_SEARCH_CAP) -> FreeSet:
    """Maximum-cardinality free set, lexicographically least among maxima.

    Depth-first include-before-exclude search over 1..bound, pruned by the
    count of remaining candidates; the first maximum found is the least one.
    """
    if bound < 1:
        raise ParameterError(f"bound must be >= 1, got {bound}")
    if bound > cap:
        raise CapacityError(f"exact search capped at bound <= {cap}, got {bound}")
    best: list[int] = []
    chosen: list[int] = []
    members: set[int] = set()

    def ok(candidate: int) -> bool:
        if order == 3:
            return not _conflicts_order3(candidate, chosen, members)
        return not _conflicts_general(candidate, chosen, order)

    def dfs(value: int):
        nonlocal best
        if len(chosen) + (bound - value + 1) <= len(best):
            return
        if value > bound:
            if len(chosen) > len(best):
                best = chosen.copy()
            return
        if ok(value):
            chosen.append(value)
            members.add(value)
            dfs(value + 1)
            members.remove(value)
            chosen.pop()
        dfs(value + 1)

    dfs(1)
    return FreeSet(bound, order, tuple(best))


def _digit_candidates(bound: int, order: int, budget: int):
    """Digit-vector families usable below the bound, as (size, key, members)."""
    out = []
    # 0/1 digit cube in the smallest carry-free base. Doubly safe: summing
    # order-1 digits never carries, and the digit equation forces equality.
    q = max(3, order)
    r = 1
    while (q ** r - 1) // (q - 1) <= bound - 1:
        if 2 ** r <= budget:
            members = sorted(1 + sum(d * q ** i for i, d in enumerate(vec))
                             for vec in product((0, 1), repeat=r))
            out.append((len(members), (0, r, q, 0), tuple(members)))
        r += 1
    # constant-norm shells of wider digit cubes
    d = 3
    while True:
        q = (order - 1) * (d - 1) + 1
        if (d - 1) * q ** 0 > bound - 1:  # even a single digit d-1 too large
            break
        r = 1
        while (d - 1) * (q ** r - 1) // (q - 1) <= bound - 1:
            if d ** r <= budget:
                shells: dict[int, list[int]] = {}
                for vec in product(range(d), repeat=r):
                    norm = sum(x * x for x in vec)
                    val = 1 + sum(x * q ** i for i, x in enumerate(vec))
                    shells.setdefault(norm, []).append(val)
                for norm, vals in sorted(shells.items()):
                    out.append((len(vals), (1, r, q, norm), tuple(sorted(vals))))
            r += 1
        d += 1
    return out


def behrend_set(bound: int, order: int = 3, budget: int = DIGIT_ENUM_BUDGET) -> FreeSet:
    """Best digit-construction free set within {1..bound}."""
    if bound < 1:
        raise ParameterError(f"bound must be >= 1, got {bound}")
    candidates = _digit_candidates(bound, order, budget)
    candidates.append((1, (2, 0, 0, 0), (1,)))
    size, _, members = max(candidates,
                           key=lambda c: (c[0], tuple(-x for x in c[1])))
    fs = FreeSet(bound, order, members)  # re-verifies freeness
    assert len(fs) == size
    return fs


@lru_cache(maxsize=None)
def best_free_set(bound: int, order: int, exact_cap: int = EXACT_SEARCH_CAP) -> FreeSet:
    if bound <= exact_cap:
        return exact_max_free_set(bound, order, exact_cap)
    return behrend_set(bound, order)


def smallest_range(m: int, order: int, exact_cap: int = EXACT_SEARCH_CAP,
                   max_m: int = 24) -> int:
    """Least N whose free set B satisfies N * |B| >= 2^m."""
    if m < 1:
        raise ParameterError(f"m must be >= 1, got {m}")
    if m > max_m:
        raise CapacityError(f"range search capped at m <= {max_m}, got {m}")
    target = 1 << m
    bound = 1
    while bound * len(best_free_set(bound, order, exact_cap)) < target:
        bound += 1
    return bound


@dataclass(frozen=True)
class ProgressionEncoder:
    """Injective map from m-bit symbols to arithmetic tuples
    (a, a+b, ..., a+(n-1)*b) with a in 1..N and b in a free set of order n.

    Symbols are assigned in increasing value order to (a, b) pairs in
    row-major order (a outer, b inner over the sorted free set). Any single
    consecutive pair of tuple entries recovers (a, b), hence the symbol.
    """

    n: int
    m: int
    bound: int
    free: FreeSet
    pairs: tuple[tuple[int, int], ...]

    @property
    def tuple_cap(self) -> int:
        return self.n * self.bound

    def encode(self, symbol: int) -> tuple[int, ...]:
        a, b = self.pairs[symbol]
        return tuple(a + i * b for i in range(self.n))

    def pair_of(self, symbol: int) -> tuple[int, int]:
        return self.pairs[symbol]

    def symbol_of_pair(self, a: int, b: int) -> int | None:
        return _pair_index(self.pairs).get((a, b))

    def decode_edge(self, part: int, first: int, second: int) -> int | None:
        """Symbol whose tuple has entry `part` = first and the cyclically
        next entry = second (1-based parts; part n wraps to entry 1)."""
        if part < self.n:
            step = second - first
            start = first - (part - 1) * step
        else:
            start = second
            diff = first - second
            if diff % (self.n - 1):
                return None
            step = diff // (self.n - 1)
        return self.symbol_of_pair(start, step)


@lru_cache(maxsize=None)
def _pair_index(pairs: tuple[tuple[int, int], ...]) -> dict[tuple[int, int], int]:
    return {pair: sym for sym, pair in enumerate(pairs)}


def build_encoder(m: int, n: int, exact_cap: int = EXACT_SEARCH_CAP) -> ProgressionEncoder:
    if n < 3:
        raise ParameterError(f"encoder needs n >= 3, got {n}")
    bound = smallest_range(m, n, exact_cap)
    free = best_free_set(bound, n, exact_cap)
    count = 1 << m
    if bound * len(free) < count:
        raise ConstructionFault(
            f"N*|B| = {bound * len(free)} cannot host {count} symbols")
    pairs = []
    for a in range(1, bound + 1):
        for b in free.members:
            pairs.append((a, b))
            if len(pairs) == count:
                break
        if len(pairs) == count:
            break
    enc = ProgressionEncoder(n, m, bound, free, tuple(pairs))
    if len({enc.encode(s) for s in range(count)}) != count:
        raise ConstructionFault("encoder tuples collide")
    return enc


def save_free_set(fs: FreeSet, path):
    """Text format: header "N n", then one member per line."""
    lines = [f"{fs.bound} {fs.order}"] + [str(v) for v in fs.members]
    Path(path).write_text("\n".join(lines) + "\n")


def load_free_set(path) -> FreeSet:
    lines = [ln.strip() for ln in Path(path).read_text().splitlines() if ln.strip()]
    if not lines:
        raise ParameterError(f"empty free-set file {path}")
    bound, order = (int(tok) for tok in lines[0].split())
    members = tuple(int(ln) for ln in lines[1:])
    return FreeSet(bound, order, members)

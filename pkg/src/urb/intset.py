"""Sorted arbitrary-precision integer sets and their counting functions.

An IntegerSet is an immutable strictly-increasing tuple of Python ints.
All operations are pure; nothing here ever mutates an existing set.
"""

from __future__ import annotations

import json
from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional

# Pure-python pair enumeration is used up to this many pairs; beyond it a
# chunked numpy sort takes over (int64 only), up to the caller's budget.
_PY_PAIR_LIMIT = 2_000_000
DEFAULT_PAIR_BUDGET = 50_000_000

_INT64_MAX = (1 << 62)  # safety margin below true int64 max for sums


class PairBudgetExceeded(Exception):
    """Raised when an exhaustive pair scan would exceed the configured budget."""

    def __init__(self, size: int, pairs: int, budget: int):
        self.size = size
        self.pairs = pairs
        self.budget = budget
        super().__init__(
            f"unique-sum check over {size} elements needs {pairs} pairs "
            f"(budget {budget}); use sampled verification"
        )


@dataclass(frozen=True)
class SumCollision:
    """Witness of a repeated pair sum: a + a2 == c + c2 with {a,a2} != {c,c2}."""

    a: int
    a2: int
    c: int
    c2: int

    @property
    def total(self) -> int:
        return self.a + self.a2

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.a, self.a2, self.c, self.c2)


class IntegerSet:
    """Immutable sorted set of arbitrary-precision integers."""

    __slots__ = ("_elems", "_index")

    def __init__(self, elements: Iterable[int] = ()):
        elems = tuple(sorted(set(int(e) for e in elements)))
        object.__setattr__(self, "_elems", elems)
        object.__setattr__(self, "_index", None)

    @property
    def elements(self) -> tuple[int, ...]:
        return self._elems

    def __len__(self) -> int:
        return len(self._elems)

    def __iter__(self) -> Iterator[int]:
        return iter(self._elems)

    def __contains__(self, v: int) -> bool:
        e = self._elems
        i = bisect_left(e, v)
        return i < len(e) and e[i] == v

    def __eq__(self, other) -> bool:
        return isinstance(other, IntegerSet) and self._elems == other._elems

    def __hash__(self) -> int:
        return hash(self._elems)

    def __repr__(self) -> str:
        return f"IntegerSet({list(self._elems)})"

    def __getitem__(self, i):
        return self._elems[i]

    def max_abs(self) -> int:
        """Largest |a| over the set (0 for the empty set)."""
        if not self._elems:
            return 0
        return max(-self._elems[0], self._elems[-1])

    def union(self, other: "IntegerSet | Iterable[int]") -> "IntegerSet":
        other_elems = other.elements if isinstance(other, IntegerSet) else tuple(other)
        return IntegerSet(self._elems + tuple(other_elems))

    def difference(self, other: "IntegerSet | Iterable[int]") -> "IntegerSet":
        drop = set(other.elements if isinstance(other, IntegerSet) else other)
        return IntegerSet(e for e in self._elems if e not in drop)

    def issubset(self, other: "IntegerSet") -> bool:
        return all(e in other for e in self._elems)

    # -- counting / representation functions --------------------------------

    def count_window(self, x: int) -> int:
        """|A ∩ [-x, x]| for x >= 0."""
        if x < 0:
            raise ValueError("window bound must be nonnegative")
        e = self._elems
        return bisect_right(e, x) - bisect_left(e, -x)

    def rep_count_unordered(self, n: int) -> int:
        """Number of pairs a <= a2 in A with a + a2 == n."""
        count = 0
        e = self._elems
        for a in e:
            if 2 * a > n:
                break
            if (n - a) in self:
                count += 1
        return count

    def rep_count_ordered(self, n: int) -> int:
        """Number of ordered pairs (a, a2) in A x A with a + a2 == n."""
        u = self.rep_count_unordered(n)
        doubled = n % 2 == 0 and (n // 2) in self
        return 2 * u - (1 if doubled else 0)

    # -- set arithmetic ------------------------------------------------------

    def difference_set(self) -> "IntegerSet":
        """{a - a2 : a, a2 in A}. Symmetric about 0; contains 0 iff nonempty."""
        e = self._elems
        out = set()
        for i, a in enumerate(e):
            for a2 in e[i:]:
                d = a2 - a
                out.add(d)
                out.add(-d)
        return IntegerSet(out)

    def double_sumset(self) -> "IntegerSet":
        """{a + a2 : a, a2 in A}, doubles included."""
        e = self._elems
        out = set()
        for i, a in enumerate(e):
            for a2 in e[i:]:
                out.add(a + a2)
        return IntegerSet(out)

    def translate(self, s: int) -> "IntegerSet":
        return IntegerSet(a + s for a in self._elems)

    # -- serialization -------------------------------------------------------

    def to_json_list(self) -> list[str]:
        """JSON form: array of decimal strings, ascending (values exceed float53)."""
        return [str(e) for e in self._elems]

    def dumps(self) -> str:
        return json.dumps(self.to_json_list(), separators=(",", ":"))

    @classmethod
    def from_json_list(cls, items: Iterable[str]) -> "IntegerSet":
        return cls(int(s) for s in items)

    @classmethod
    def loads(cls, text: str) -> "IntegerSet":
        return cls.from_json_list(json.loads(text))


def pair_count(n: int) -> int:
    return n * (n + 1) // 2


def assert_unique_sums(
    A: IntegerSet, pair_budget: int = DEFAULT_PAIR_BUDGET
) -> Optional[SumCollision]:
    """None when every unordered pair sum of A is distinct (r_A(n) <= 1 for
    all n), otherwise the lexicographically smallest collision witness.

    Raises PairBudgetExceeded when the |A|(|A|+1)/2 pair scan would exceed
    pair_budget; callers then fall back to sampled verification.
    """
    e = A.elements
    n = len(e)
    pairs = pair_count(n)
    if pairs > pair_budget:
        raise PairBudgetExceeded(n, pairs, pair_budget)
    if pairs <= _PY_PAIR_LIMIT:
        return _unique_sums_dict(e)
    if -_INT64_MAX < e[0] and e[-1] < _INT64_MAX:
        return _unique_sums_numpy(e)
    return _unique_sums_dict(e)


def _unique_sums_dict(e: tuple[int, ...]) -> Optional[SumCollision]:
    # Pairs are generated in lexicographic order, so for each repeated sum the
    # first duplicate hit yields that sum's two lexicographically first pairs.
    first: dict[int, tuple[int, int]] = {}
    best: Optional[tuple[int, int, int, int]] = None
    for i, a in enumerate(e):
        for a2 in e[i:]:
            s = a + a2
            prev = first.get(s)
            if prev is None:
                first[s] = (a, a2)
            else:
                cand = prev + (a, a2)
                if best is None or cand < best:
                    best = cand
    if best is None:
        return None
    return SumCollision(*best)


def _unique_sums_numpy(e: tuple[int, ...]) -> Optional[SumCollision]:
    import numpy as np

    arr = np.array(e, dtype=np.int64)
    chunks = [arr[i] + arr[i:] for i in range(len(arr))]
    sums = np.concatenate(chunks)
    sums.sort(kind="stable")
    dup = sums[1:][sums[1:] == sums[:-1]]
    if dup.size == 0:
        return None
    # Recover the lexicographically smallest witness among colliding sums.
    best = None
    for s in sorted(set(int(v) for v in dup)):
        pairs = _pairs_with_sum(e, s)
        cand = pairs[0] + pairs[1]
        if best is None or cand < best:
            best = cand
    return SumCollision(*best)


# The bitmap path allocates (sum span)/8 bytes; cap it at 1.5 GB.
_BITMAP_SPAN_LIMIT = 12_000_000_000
_DUP_BUFFER = 4096


def _dup_sums_kernel(e, lo, bitmap, out):
    found = 0
    n = e.shape[0]
    for i in range(n):
        ei = e[i]
        for j in range(i, n):
            s = ei + e[j] - lo
            byte = s >> 3
            bit = 1 << (s & 7)
            if bitmap[byte] & bit:
                if found < out.shape[0]:
                    out[found] = s + lo
                found += 1
            else:
                bitmap[byte] |= bit
    return found


try:  # pragma: no cover - exercised whenever numba is installed
    from numba import njit

    _dup_sums_scan = njit(cache=True)(_dup_sums_kernel)
except ImportError:  # pragma: no cover
    _dup_sums_scan = _dup_sums_kernel


def unique_sums_bitmap(A: IntegerSet) -> Optional[SumCollision]:
    """Exhaustive duplicate-sum scan in O(sum span / 8) bytes of memory.

    Slower per pair than the sort path but bounded in memory, so it extends
    exhaustive checking to sets whose full pair array would not fit. The
    returned witness is the smallest among the first few thousand colliding
    sums encountered (in practice there are zero or one).

    Raises PairBudgetExceeded when the sum span exceeds the bitmap cap or
    the elements fall outside int64.
    """
    import numpy as np

    e = A.elements
    n = len(e)
    if n < 2:
        return None
    if not (-_INT64_MAX < e[0] and e[-1] < _INT64_MAX):
        raise PairBudgetExceeded(n, pair_count(n), 0)
    lo, hi = 2 * e[0], 2 * e[-1]
    span = hi - lo + 1
    if span > _BITMAP_SPAN_LIMIT:
        raise PairBudgetExceeded(n, pair_count(n), 0)
    bitmap = np.zeros((span >> 3) + 1, dtype=np.uint8)
    out = np.zeros(_DUP_BUFFER, dtype=np.int64)
    found = _dup_sums_scan(np.array(e, dtype=np.int64), lo, bitmap, out)
    if found == 0:
        return None
    best = None
    for s in sorted(set(int(v) for v in out[: min(found, _DUP_BUFFER)])):
        pairs = _pairs_with_sum(e, s)
        cand = pairs[0] + pairs[1]
        if best is None or cand < best:
            best = cand
    return SumCollision(*best)


def _pairs_with_sum(e: tuple[int, ...], s: int) -> list[tuple[int, int]]:
    out = []
    aset = set(e)
    for a in e:
        if 2 * a > s:
            break
        if (s - a) in aset:
            out.append((a, s - a))
    return out

"""Sidon predicates, the Bose modular construction, and exact/greedy f2 oracles."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .field import FieldElement, make_context
from .intset import (
    DEFAULT_PAIR_BUDGET,
    IntegerSet,
    PairBudgetExceeded,
    SumCollision,
    assert_unique_sums,
    unique_sums_bitmap,
)

# Above this modulus the Bose power enumeration switches to a vectorized
# block pass (numpy) instead of one python multiply per step.
_BOSE_NUMPY_THRESHOLD = 1_000_000
_BOSE_BLOCK = 1 << 16

DEFAULT_EXACT_BUDGET = 120


class BudgetExceeded(Exception):
    def __init__(self, n: int, budget: int):
        super().__init__(f"exact f2 search for N={n} exceeds budget N<={budget}")
        self.n = n
        self.budget = budget


@dataclass(frozen=True)
class ModularSidonSet:
    """p residues in [1, p^2-1] whose pairwise sums are distinct mod p^2-1."""

    p: int
    modulus: int
    elements: tuple[int, ...]

    def as_integer_set(self) -> IntegerSet:
        return IntegerSet(self.elements)


def bose_construction(p: int) -> ModularSidonSet:
    """Bose's perfect difference set: the discrete logs, base the canonical
    primitive g of GF(p^2)*, of the p monic linear elements {x + b : b in GF(p)}.

    One pass a = 1 .. p^2-1 maintaining cur = g^a; an exponent a is collected
    whenever cur has linear coefficient 1. Memory O(p).
    """
    ctx = make_context(p)
    order = ctx.order
    if order >= _BOSE_NUMPY_THRESHOLD:
        hits = _bose_scan_numpy(ctx)
    else:
        hits = _bose_scan_python(ctx)
    if len(hits) != p:
        raise AssertionError(f"Bose scan found {len(hits)} elements, expected {p}")
    return ModularSidonSet(p=p, modulus=order, elements=tuple(hits))


def _bose_scan_python(ctx) -> list[int]:
    hits = []
    cur = ctx.one()
    for a in range(1, ctx.order):
        cur = ctx.mul(cur, ctx.g)
        if cur.c1 == 1:
            hits.append(a)
    return hits


def _bose_scan_numpy(ctx) -> list[int]:
    import numpy as np

    p, r, order = ctx.p, ctx.r, ctx.order
    # Table of g^t for t = 0 .. BLOCK-1, then block base steps by g^BLOCK.
    t0 = np.empty(_BOSE_BLOCK, dtype=np.int64)
    t1 = np.empty(_BOSE_BLOCK, dtype=np.int64)
    cur = ctx.one()
    for t in range(_BOSE_BLOCK):
        t0[t] = cur.c0
        t1[t] = cur.c1
        cur = ctx.mul(cur, ctx.g)
    step = ctx.pow(ctx.g, _BOSE_BLOCK)
    hits: list[int] = []
    base = ctx.one()
    start = 0
    while start < order:
        width = min(_BOSE_BLOCK, order - start)
        # linear coefficient of base * g^t  (int64-safe: products < p^2 * r)
        c1 = (base.c0 * t1[:width] + base.c1 * t0[:width]) % p
        for t in np.nonzero(c1 == 1)[0]:
            a = start + int(t)
            if a >= 1:
                hits.append(a)
        base = ctx.mul(base, step)
        start += _BOSE_BLOCK
    return hits


def is_sidon(
    S: IntegerSet, pair_budget: int = DEFAULT_PAIR_BUDGET
) -> Optional[SumCollision]:
    """None iff S is a Sidon set; otherwise a collision witness.

    The witness is the lexicographically smallest collision within the pair
    budget; past the budget a memory-bounded bitmap scan takes over and the
    witness is only guaranteed minimal among the first collisions found.
    """
    try:
        return assert_unique_sums(S, pair_budget=pair_budget)
    except PairBudgetExceeded:
        return unique_sums_bitmap(S)


def is_modular_sidon(elements, modulus: int) -> Optional[SumCollision]:
    """None iff all pair sums e_i + e_j (i <= j) are distinct mod modulus."""
    if modulus < 1:
        raise ValueError("modulus must be >= 1")
    e = sorted(elements)
    first: dict[int, tuple[int, int]] = {}
    best = None
    for i, a in enumerate(e):
        for a2 in e[i:]:
            s = (a + a2) % modulus
            prev = first.get(s)
            if prev is None:
                first[s] = (a, a2)
            else:
                cand = prev + (a, a2)
                if best is None or cand < best:
                    best = cand
    return None if best is None else SumCollision(*best)


def greedy_sidon(N: int) -> IntegerSet:
    """Mian-Chowla greedy scan of 1..N: keep k when the set stays Sidon."""
    if N < 1:
        raise ValueError("N must be positive")
    chosen: list[int] = []
    used_diffs: set[int] = set()
    for k in range(1, N + 1):
        new = [k - s for s in chosen]
        if any(d in used_diffs for d in new):
            continue
        chosen.append(k)
        used_diffs.update(new)
    return IntegerSet(chosen)


# f2 values computed so far; _F2[n] = f2(n). Grown on demand, ascending.
_F2: list[int] = [0, 1]


def _min_window(table: list[int], r: int) -> int:
    """Smallest window length w with f2(w) >= r, given table up to the need."""
    for w in range(len(table)):
        if table[w] >= r:
            return w
    raise AssertionError("table too short for requested size")


def _minw_array(table: list[int], rmax: int):
    import numpy as np

    return np.array([_min_window(table, r) for r in range(rmax + 1)], dtype=np.int64)


def _extend_f2_table(N: int) -> None:
    from ._f2search import minspan_search

    while len(_F2) <= N:
        prev = _F2[-1]
        # f2 grows by at most 1 per step, so it jumps to prev + 1 exactly at
        # the minimal span of a (prev + 1)-element Sidon set. Any such set
        # translates down to minimum 1, which the kernel assumes.
        target = prev + 1
        jump = int(minspan_search(N, target, _minw_array(_F2, target - 1)))
        if jump == 0:
            # no target-size set fits within [1, N]
            _F2.extend([prev] * (N + 1 - len(_F2)))
        else:
            _F2.extend([prev] * (jump - len(_F2)))
            _F2.append(target)


def _lex_first_witness(N: int, size: int) -> list[int]:
    from ._f2search import witness_search

    if size == 1:
        return [1]
    out = witness_search(N, size, _minw_array(_F2, size - 1))
    if len(out) != size:
        raise AssertionError("witness search must succeed once f2(N) is known")
    return [int(v) for v in out]


def max_sidon_exact(
    N: int, budget: int = DEFAULT_EXACT_BUDGET
) -> tuple[int, IntegerSet]:
    """f2(N) with a maximum witness, by depth-first branch and bound.

    f2 is computed incrementally: f2(n) is f2(n-1) or f2(n-1)+1, so each
    step is a single target-size search whose window prunes use the already
    exact f2 values of shorter intervals. The witness is the
    lexicographically first maximum set found under the ascending scan.
    """
    if N < 1:
        raise ValueError("N must be positive")
    if N > budget:
        raise BudgetExceeded(N, budget)
    _extend_f2_table(N)
    size = _F2[N]
    return size, IntegerSet(_lex_first_witness(N, size))


def max_sidon_naive(N: int) -> tuple[int, IntegerSet]:
    """All-subsets oracle for small N; test reference for max_sidon_exact."""
    from itertools import combinations

    if N < 1:
        raise ValueError("N must be positive")
    for size in range(N, 0, -1):
        for combo in combinations(range(1, N + 1), size):
            if is_sidon(IntegerSet(combo)) is None:
                return size, IntegerSet(combo)
    return 0, IntegerSet()

"""Branch-and-bound kernels for the exact f2 search.

Two depth-first searches, both pruned by exact f2 values of shorter windows
(an interval of w integers holds at most f2(w) Sidon elements):

- minimal span: the smallest last element of a target-size Sidon set
  {1 = a_1 < ... < a_target <= bound}, found by branch and bound with a
  shrinking cap;
- lex-first witness: the lexicographically first target-size Sidon set in
  [1, n] starting at 1, found by plain ascending scan.

Compiled with numba when available; the pure-python bodies are the fallback
and the reference for the kernels' behavior.
"""

from __future__ import annotations

import numpy as np


def _minspan_kernel(bound, target, minw):
    # Minimal last element of a Sidon set {1 = a_1 < ... < a_target} with
    # a_target <= bound, or 0 if none exists. Candidates scan ascending and
    # the cap drops to best - 1 whenever a full set is found, so one tree
    # settles every window size at once.
    #
    # Prunes, all sound for sets with span below the current cap:
    # - window: an interval of w integers holds at most f2(w) Sidon elements
    #   (minw is the exact inverse of the already-computed f2 table);
    # - gap-sum: each of the r elements still to place adds a new gap, and
    #   the gaps are pairwise-distinct unused difference values, so k plus
    #   the sum of the r smallest unused differences must stay within cap;
    # - mirror: restrict to the canonical representative with first gap <=
    #   last gap (every set or its reflection has the same span and one of
    #   the two qualifies): the second element obeys a_2 <= (cap + 1) / 2,
    #   and a full set must end with a gap of at least a_2 - 1.
    if target == 1:
        return 1
    if target == 2:
        return 2 if bound >= 2 else 0
    cap = bound
    best = 0
    used = np.zeros(bound + 1, np.uint8)  # index = difference value
    chosen = np.empty(target, np.int64)
    chosen[0] = 1
    ccount = 1
    cand = np.empty(target, np.int64)
    cand[0] = 2
    dvals = np.empty(target, np.int64)
    depth = 0
    while True:
        remaining = target - depth - 2  # still to place after this level
        gsum = 0
        d = 1
        found = 0
        while found < remaining:
            if not used[d]:
                gsum += d
                found += 1
            d += 1
        # k itself sits in the window with the remaining elements, so
        # [k, cap] must hold remaining + 1 Sidon elements
        upper = cap + 1 - minw[remaining + 1]
        if cap - gsum < upper:
            upper = cap - gsum
        if depth == 0 and upper > (cap + 1) // 2:
            upper = (cap + 1) // 2
        k = cand[depth]
        placed = False
        while k <= upper:
            # chosen is ascending, so the new differences k - chosen[i] are
            # automatically distinct; only clashes with used matter.
            ok = True
            for i in range(ccount):
                d = k - chosen[i]
                if used[d]:
                    ok = False
                    break
                dvals[i] = d
            if ok and remaining == 0:
                # full set: the canonical representative ends with a gap of
                # at least the first gap
                if k - chosen[ccount - 1] >= chosen[1] - 1:
                    best = k
                    cap = k - 1
                    break  # smallest k for this prefix; backtrack
                k += 1
                continue
            if ok:
                for i in range(ccount):
                    used[dvals[i]] = 1
                chosen[ccount] = k
                ccount += 1
                cand[depth] = k + 1
                depth += 1
                cand[depth] = k + 1
                placed = True
                break
            k += 1
        if placed:
            continue
        # exhausted this level
        depth -= 1
        if depth < 0:
            return best
        ccount -= 1
        last = chosen[ccount]
        for i in range(ccount):
            used[last - chosen[i]] = 0


def _witness_kernel(n, target, minw):
    out = np.empty(target, np.int64)
    out[0] = 1
    if target == 1:
        return out
    used = np.zeros(n, np.uint8)
    chosen = np.empty(target, np.int64)
    chosen[0] = 1
    ccount = 1
    cand = np.empty(target, np.int64)
    cand[0] = 2
    dvals = np.empty(target, np.int64)
    depth = 0
    while True:
        remaining = target - depth - 2  # needed after placing this level's k
        # k itself sits in the window with the remaining elements, so
        # [k, n] must hold remaining + 1 Sidon elements
        upper = n + 1 - minw[remaining + 1]
        k = cand[depth]
        placed = False
        while k <= upper:
            # chosen is ascending here, so the new differences k - chosen[i]
            # are automatically distinct; only clashes with used matter.
            ok = True
            for i in range(ccount):
                d = k - chosen[i]
                if used[d]:
                    ok = False
                    break
                dvals[i] = d
            if ok:
                if ccount + 1 == target:
                    for i in range(ccount):
                        out[i] = chosen[i]
                    out[target - 1] = k
                    return out
                for i in range(ccount):
                    used[dvals[i]] = 1
                chosen[ccount] = k
                ccount += 1
                cand[depth] = k + 1
                depth += 1
                cand[depth] = k + 1
                placed = True
                break
            k += 1
        if placed:
            continue
        depth -= 1
        if depth < 0:
            return out[:0]
        ccount -= 1
        last = chosen[ccount]
        for i in range(ccount):
            used[last - chosen[i]] = 0


try:  # pragma: no cover - import guard
    from numba import njit

    minspan_search = njit(cache=True)(_minspan_kernel)
    witness_search = njit(cache=True)(_witness_kernel)
except ImportError:  # pragma: no cover
    minspan_search = _minspan_kernel
    witness_search = _witness_kernel

"""The two-band split: a modular Sidon set becomes an integer Sidon set
supported on two outer intervals of [-p^2, p^2].

With s_1 < ... < s_p the modular elements, the middle band around p^2 / 2 is
dropped and the low block is shifted down by the modulus:

    S = {s_i - (p^2 - 1) : i <= l - 1}  union  {s_i : i >= y + 1}

where l counts elements at most (1/2 - eps^2/8) p^2 and y counts elements
strictly below (1/2 + eps^2/8) p^2. Distinct sums mod p^2 - 1 stay distinct
as integers because each block is narrower than half the modulus.

All threshold comparisons use exact rationals: an off-by-one at a threshold
changes l, y, and the output set.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .intset import IntegerSet, SumCollision
from .sidon import ModularSidonSet, is_sidon


class EpsilonOutOfRange(ValueError):
    def __init__(self, epsilon: Fraction):
        super().__init__(f"epsilon must satisfy 0 < epsilon < 1, got {epsilon}")
        self.epsilon = epsilon


def check_epsilon(epsilon) -> Fraction:
    eps = Fraction(epsilon)
    if not 0 < eps < 1:
        raise EpsilonOutOfRange(eps)
    return eps


@dataclass(frozen=True)
class SplitResult:
    """The set S with the split bookkeeping (l, y, and the middle-band loss)."""

    script_s: IntegerSet
    p: int
    epsilon: Fraction
    l_index: int
    y_index: int

    @property
    def dropped_middle_count(self) -> int:
        return self.y_index - self.l_index


@dataclass(frozen=True)
class SplitVerdict:
    """Independent re-check of a SplitResult; all failures are fields.

    size_bound_holds is separate and non-fatal: the split guarantees
    |S| >= (1 - 3 eps / 4) p only for sufficiently large p.
    """

    membership_ok: bool
    sidon_witness: Optional[SumCollision]
    cardinality_ok: bool
    size_bound_holds: bool

    @property
    def invariants_ok(self) -> bool:
        return self.membership_ok and self.sidon_witness is None and self.cardinality_ok


def split_construction(mod_set: ModularSidonSet, epsilon) -> SplitResult:
    eps = check_epsilon(epsilon)
    p = mod_set.p
    psq = p * p
    low_threshold = (Fraction(1, 2) - eps**2 / 8) * psq
    high_threshold = (Fraction(1, 2) + eps**2 / 8) * psq
    s = sorted(mod_set.elements)
    l_index = sum(1 for v in s if v <= low_threshold)
    y_index = sum(1 for v in s if v < high_threshold)
    shifted = [s[i] - (psq - 1) for i in range(l_index - 1)]
    kept = s[y_index:]
    return SplitResult(
        script_s=IntegerSet(shifted + kept),
        p=p,
        epsilon=eps,
        l_index=l_index,
        y_index=y_index,
    )


def in_outer_bands(value: int, p: int, epsilon) -> bool:
    """Membership in [-p^2, (-1/2 - eps^2/8)p^2 + 1] or [(1/2 + eps^2/8)p^2, p^2].

    The +1 on the negative block: shifting s_i <= (1/2 - eps^2/8)p^2 down by
    p^2 - 1 lands at most one past the band edge. The slack is immaterial to
    every later use of the bands, so the checker tolerates it rather than
    silently tightening the construction.
    """
    eps = check_epsilon(epsilon)
    psq = p * p
    negative_top = (Fraction(-1, 2) - eps**2 / 8) * psq + 1
    positive_bottom = (Fraction(1, 2) + eps**2 / 8) * psq
    return -psq <= value <= negative_top or positive_bottom <= value <= psq


def size_lower_bound(p: int, epsilon) -> Fraction:
    """The split's guaranteed size, (1 - 3 eps / 4) p."""
    return (1 - Fraction(3, 4) * check_epsilon(epsilon)) * p


def verify_split(result: SplitResult) -> SplitVerdict:
    eps = check_epsilon(result.epsilon)
    p = result.p
    elements = result.script_s
    membership_ok = all(in_outer_bands(v, p, eps) for v in elements)
    sidon_witness = is_sidon(elements)
    cardinality_ok = len(elements) == p - result.dropped_middle_count - 1
    size_bound_holds = len(elements) >= size_lower_bound(p, eps)
    return SplitVerdict(
        membership_ok=membership_ok,
        sidon_witness=sidon_witness,
        cardinality_ok=cardinality_ok,
        size_bound_holds=size_bound_holds,
    )

"""The inductive construction of a unique representation basis.

Starting from A_1 = {-1, 1}, x_1 = 1, each round h alternates two moves:

- pair fill: m is the integer of minimum absolute value not yet represented;
  with b = 4 a* + |m|, the pair {-b, b + m} represents m exactly once, and if
  -m is still missed, b~ = 4b + 5|m| and {-b~, b~ - m} repairs it. The new
  sums stay unique because 2A, A - b, A + (b + m) and {-2b, m, 2b + 2m} are
  four pairwise disjoint sets.
- injection: a prime p exceeding max(64 a*^2 / eps, x_h) is chosen, the Bose
  modular Sidon set mod p^2 - 1 is split into the two outer bands of
  [-p^2, p^2], pruned against A, and unioned in; x_{h+1} = p^2. The band gap
  keeps cross sums away from every old sum.

Every stage re-checks the four inductive hypotheses before proceeding:
(I) all pair sums distinct, (II) every |n| <= h represented exactly once,
(III) count in [-x_h, x_h] at least (1 - eps) sqrt(x_h), (IV) 0 never enters.

Paper mode enforces the prime threshold, so hypothesis III is asserted; the
thresholds make p grow doubly exponentially, which is why only one round is
feasible at full fidelity. Toy mode forces a small prime to exercise the
multi-round control flow: all structural invariants are still verified
exhaustively, but the growth bound is recorded rather than asserted, and
sum collisions that the undersized prime lets through are pruned away
iteratively (and logged) instead of being impossible by construction.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Optional

from .intset import DEFAULT_PAIR_BUDGET, IntegerSet
from .primes import is_prime, next_prime_above
from .sidon import bose_construction
from .split import (
    SplitResult,
    check_epsilon,
    split_construction,
    verify_split,
)

DEFAULT_SAMPLE_SIZE = 1_000_000

# decimal digits in rendered ratios (truncated, never rounded)
RATIO_DIGITS = 12


class InvariantViolation(Exception):
    """A verified-before-returning check failed; carries stage and witness."""

    def __init__(self, stage: str, detail: str):
        super().__init__(f"{stage}: {detail}")
        self.stage = stage
        self.detail = detail


@dataclass(frozen=True)
class BuilderConfig:
    epsilon: Fraction
    rounds: int
    mode: str = "paper"
    forced_p: Optional[int] = None
    pair_budget: int = DEFAULT_PAIR_BUDGET
    sample_size: int = DEFAULT_SAMPLE_SIZE
    sample_seed: Optional[int] = None

    def __post_init__(self):
        check_epsilon(self.epsilon)
        if self.rounds < 1:
            raise ValueError("rounds must be positive")
        if self.mode not in ("paper", "toy"):
            raise ValueError(f"mode must be 'paper' or 'toy', got {self.mode!r}")
        if self.mode == "toy":
            if self.forced_p is None:
                raise ValueError("toy mode requires forced_p")
            if not is_prime(self.forced_p):
                raise ValueError(f"forced_p={self.forced_p} is not prime")
        elif self.forced_p is not None:
            raise ValueError("paper mode forbids forced_p")


@dataclass(frozen=True)
class Removal:
    """One pruning action on the injected Sidon set, with its reason.

    reason 'difference': s' - s equals a positive difference of A;
    reason 'sum': s + s' lands in the sumset 2A (s = s' covers doubles);
    reason 'collision': toy mode only — the undersized prime allowed a sum
    collision with old elements, so the new elements involved are dropped.
    """

    reason: str
    value: int
    removed: tuple[int, ...]


@dataclass(frozen=True)
class StageRecord:
    h: int
    m: int
    b: int
    b_tilde: Optional[int]
    p: int
    x: int  # x_{h+1} = p^2
    a_star: int  # max |a| over A_even
    A_odd: IntegerSet  # A_{2h-1}
    A_even: IntegerSet  # A_{2h}
    pruned: tuple[Removal, ...]


@dataclass(frozen=True)
class Checkpoint:
    """A(-x, x) at a stage boundary; the ratio is the exact pair (count^2, x)."""

    x: int
    count: int

    @property
    def ratio_num(self) -> int:
        return self.count * self.count

    @property
    def ratio_den_sq(self) -> int:
        return self.x

    def ratio_decimal(self, digits: int = RATIO_DIGITS) -> str:
        return _sqrt_ratio_decimal(self.count, self.x, digits)

    def passes(self, epsilon: Fraction) -> bool:
        """count >= (1 - eps) sqrt(x), compared in exact integers."""
        bound = 1 - Fraction(epsilon)
        num, den = bound.numerator, bound.denominator
        return self.count * self.count * den * den >= num * num * self.x


def _sqrt_ratio_decimal(count: int, x: int, digits: int = RATIO_DIGITS) -> str:
    """count / sqrt(x) truncated to the given digits, via integer isqrt."""
    if x <= 0:
        raise ValueError("x must be positive")
    scaled = isqrt(count * count * 10 ** (2 * digits) // x)
    text = str(scaled).rjust(digits + 1, "0")
    return f"{text[:-digits]}.{text[-digits:]}"


@dataclass(frozen=True)
class InjectionResult:
    a_next: IntegerSet
    x_next: int
    split: SplitResult
    s_tilde: IntegerSet
    removals: tuple[Removal, ...]


@dataclass(frozen=True)
class BuilderTranscript:
    config: BuilderConfig
    initial_set: IntegerSet
    x1: int
    stages: tuple[StageRecord, ...]
    final_set: IntegerSet
    checkpoints: tuple[Checkpoint, ...]

    def to_json_dict(self) -> dict:
        cfg = {
            "epsilon": str(Fraction(self.config.epsilon)),
            "rounds": self.config.rounds,
            "mode": self.config.mode,
            "forced_p": self.config.forced_p,
            "pair_budget": self.config.pair_budget,
            "sample_size": self.config.sample_size,
            "sample_seed": self.config.sample_seed,
        }
        stages = [
            {
                "h": s.h,
                "m": str(s.m),
                "b": str(s.b),
                **({"b_tilde": str(s.b_tilde)} if s.b_tilde is not None else {}),
                "p": str(s.p),
                "x": str(s.x),
                "a_star": str(s.a_star),
                "A_odd": s.A_odd.to_json_list(),
                "A_even": s.A_even.to_json_list(),
                "pruned": [
                    {
                        "reason": r.reason,
                        "value": str(r.value),
                        "removed": [str(v) for v in r.removed],
                    }
                    for r in s.pruned
                ],
            }
            for s in self.stages
        ]
        checkpoints = [
            {
                "x": str(c.x),
                "count": str(c.count),
                "ratio_num": str(c.ratio_num),
                "ratio_den_sq": str(c.ratio_den_sq),
                "ratio_decimal": c.ratio_decimal(),
            }
            for c in self.checkpoints
        ]
        return {
            "config": cfg,
            "initial_set": self.initial_set.to_json_list(),
            "x1": str(self.x1),
            "stages": stages,
            "final_set": self.final_set.to_json_list(),
            "checkpoints": checkpoints,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json_dict(), separators=(",", ":"))

    @classmethod
    def from_json_dict(cls, data: dict) -> "BuilderTranscript":
        cfg = data["config"]
        config = BuilderConfig(
            epsilon=Fraction(cfg["epsilon"]),
            rounds=cfg["rounds"],
            mode=cfg["mode"],
            forced_p=cfg["forced_p"],
            pair_budget=cfg["pair_budget"],
            sample_size=cfg["sample_size"],
            sample_seed=cfg["sample_seed"],
        )
        stages = tuple(
            StageRecord(
                h=s["h"],
                m=int(s["m"]),
                b=int(s["b"]),
                b_tilde=int(s["b_tilde"]) if "b_tilde" in s else None,
                p=int(s["p"]),
                x=int(s["x"]),
                a_star=int(s["a_star"]),
                A_odd=IntegerSet.from_json_list(s["A_odd"]),
                A_even=IntegerSet.from_json_list(s["A_even"]),
                pruned=tuple(
                    Removal(
                        reason=r["reason"],
                        value=int(r["value"]),
                        removed=tuple(int(v) for v in r["removed"]),
                    )
                    for r in s["pruned"]
                ),
            )
            for s in data["stages"]
        )
        checkpoints = tuple(
            Checkpoint(x=int(c["x"]), count=int(c["count"]))
            for c in data["checkpoints"]
        )
        return cls(
            config=config,
            initial_set=IntegerSet.from_json_list(data["initial_set"]),
            x1=int(data["x1"]),
            stages=stages,
            final_set=IntegerSet.from_json_list(data["final_set"]),
            checkpoints=checkpoints,
        )

    @classmethod
    def loads(cls, text: str) -> "BuilderTranscript":
        return cls.from_json_dict(json.loads(text))


def initial_state() -> tuple[IntegerSet, int]:
    """A_1 = {-1, 1} and x_1 = 1."""
    return IntegerSet((-1, 1)), 1


def find_min_unrepresented(A: IntegerSet) -> int:
    """The integer m of minimum |m| with no pair sum, ties broken positive."""
    if len(A) == 0:
        raise ValueError("A must be nonempty")
    e = list(A)
    sums = {a + a2 for i, a in enumerate(e) for a2 in e[i:]}
    if 0 not in sums:
        return 0
    k = 1
    while True:  # terminates: |k| > 2 max|A| is never a pair sum
        if k not in sums:
            return k
        if -k not in sums:
            return -k
        k += 1


def _sumset(A: IntegerSet) -> set[int]:
    e = list(A)
    return {a + a2 for i, a in enumerate(e) for a2 in e[i:]}


def _assert_four_disjoint(A: IntegerSet, u: int, v: int, stage: str) -> None:
    """2A, A+u, A+v, {2u, u+v, 2v} must be pairwise disjoint: then the two
    new elements u, v add each new sum exactly once."""
    groups = [
        ("2A", _sumset(A)),
        ("A+u", {a + u for a in A}),
        ("A+v", {a + v for a in A}),
        ("{2u,u+v,2v}", {2 * u, u + v, 2 * v}),
    ]
    for i in range(len(groups)):
        for j in range(i + 1, len(groups)):
            overlap = groups[i][1] & groups[j][1]
            if overlap:
                raise InvariantViolation(
                    stage,
                    f"pair-fill sum sets {groups[i][0]} and {groups[j][0]} "
                    f"share {sorted(overlap)[:3]}",
                )


def pair_fill_step(
    A: IntegerSet, pair_budget: int = DEFAULT_PAIR_BUDGET
) -> tuple[IntegerSet, int, int, Optional[int]]:
    """Repair the smallest unrepresented integer: returns (B, m, b, b~)."""
    from .verify import assert_unique_sums_checked

    stage = "pair_fill"
    if 0 in A:
        raise InvariantViolation(stage, "0 in A (hypothesis IV)")
    assert_unique_sums_checked(A, pair_budget, stage=stage)
    m = find_min_unrepresented(A)
    a_star = A.max_abs()
    b = 4 * a_star + abs(m)
    _assert_four_disjoint(A, -b, b + m, stage)
    B = A.union(IntegerSet((-b, b + m)))
    b_tilde: Optional[int] = None
    if B.rep_count_unordered(-m) == 0:
        b_tilde = 4 * b + 5 * abs(m)
        _assert_four_disjoint(B, -b_tilde, b_tilde - m, stage)
        B = B.union(IntegerSet((-b_tilde, b_tilde - m)))
    for target, expect in ((m, 1), (-m, 1)):
        got = B.rep_count_unordered(target)
        if got != expect:
            raise InvariantViolation(stage, f"r({target}) = {got}, expected {expect}")
    if 0 in B:
        raise InvariantViolation(stage, "0 entered the set")
    assert_unique_sums_checked(B, pair_budget, stage=stage)
    return B, m, b, b_tilde


def choose_prime(a_star: int, epsilon, x_h: int) -> int:
    """Smallest prime strictly above max(64 a*^2 / eps, x_h), exact rationals."""
    eps = check_epsilon(epsilon)
    bound = max(Fraction(64 * a_star * a_star) / eps, Fraction(x_h))
    return next_prime_above(bound.numerator // bound.denominator)


def toy_prime(forced_p: int, x_h: int) -> int:
    """The forced prime, advanced just far enough to keep x strictly growing.

    Repeating forced_p across rounds would freeze x at forced_p^2, so later
    rounds use the smallest prime q >= forced_p with q^2 > x_h.
    """
    if not is_prime(forced_p):
        raise ValueError(f"forced_p={forced_p} is not prime")
    q = forced_p
    while q * q <= x_h:
        q = next_prime_above(q)
    return q


def prune_sidon(
    script_s: IntegerSet, A: IntegerSet
) -> tuple[IntegerSet, tuple[Removal, ...]]:
    """Drop elements of script_s whose pairs collide with differences or sums
    of A; doubles 2s in 2A count as (degenerate) pairs. Removals are computed
    against the original script_s, then applied as one batch."""
    import numpy as np

    if len(script_s) == 0:
        return script_s, ()
    ss = np.array(list(script_s), dtype=np.int64)
    removals: list[Removal] = []
    doomed: set[int] = set()

    def _pairs_at_offset(target: np.ndarray) -> np.ndarray:
        idx = np.searchsorted(ss, target)
        idx[idx >= len(ss)] = len(ss) - 1
        return np.nonzero(ss[idx] == target)[0]

    for d in sorted(v for v in A.difference_set() if v > 0):
        hits = _pairs_at_offset(ss + d)
        for i in hits:
            s = int(ss[i])
            removals.append(Removal(reason="difference", value=d, removed=(s, s + d)))
            doomed.update((s, s + d))
    for t in sorted(A.double_sumset()):
        hits = _pairs_at_offset(t - ss)
        for i in hits:
            s = int(ss[i])
            other = t - s
            if s > other:
                continue  # each pair once, from its smaller member
            removed = (s,) if s == other else (s, other)
            removals.append(Removal(reason="sum", value=t, removed=removed))
            doomed.update(removed)
    pruned = script_s.difference(IntegerSet(doomed))
    return pruned, tuple(removals)


def _check_paper_bounds(
    s_tilde: IntegerSet, a_star: int, eps: Fraction, p: int
) -> None:
    """The quantitative facts the proof's case analysis leans on."""
    stage = "injection"
    psq = p * p
    size_floor = (1 - eps) * p
    if len(s_tilde) < size_floor:
        raise InvariantViolation(
            stage, f"|pruned set| = {len(s_tilde)} < (1-eps)p = {float(size_floor):.1f}"
        )
    pruning_floor = (1 - Fraction(3, 4) * eps) * p - 16 * a_star * a_star
    if len(s_tilde) < pruning_floor:
        raise InvariantViolation(
            stage,
            f"|pruned set| = {len(s_tilde)} below (1-3eps/4)p - 16 a*^2",
        )
    # Case 3 gap: every injected element satisfies |s| >= p^2 / 2 > 8 a*^4
    if 2 * min(abs(v) for v in s_tilde) < psq:
        raise InvariantViolation(stage, "injected element below p^2/2 in magnitude")
    if psq <= 16 * a_star**4:
        raise InvariantViolation(stage, "p^2/2 > 8 a*^4 fails; prime too small")
    # Case 5 gap: |z1 + z2 - y2| over the two bands stays >= eps^2 p^2 / 4
    # up to the shift slack of 1 on the negative band edge (and > a*, the
    # load-bearing comparison). Checked by interval arithmetic over the
    # actual band extents.
    neg = [v for v in s_tilde if v < 0]
    pos = [v for v in s_tilde if v > 0]
    bands = [(min(vs), max(vs)) for vs in (neg, pos) if vs]
    gap_floor = eps**2 * psq / 4 - 2
    for lo1, hi1 in bands:
        for lo2, hi2 in bands:
            for lo3, hi3 in bands:
                lo = lo1 + lo2 - hi3
                hi = hi1 + hi2 - lo3
                min_abs = 0 if lo <= 0 <= hi else min(abs(lo), abs(hi))
                if min_abs < gap_floor or min_abs <= a_star:
                    raise InvariantViolation(
                        stage,
                        f"case-5 gap {min_abs} below eps^2 p^2/4 - 2 = "
                        f"{float(gap_floor):.1f} or below a* = {a_star}",
                    )


def injection_step(
    A_even: IntegerSet,
    epsilon,
    p: int,
    mode: str = "paper",
    pair_budget: int = DEFAULT_PAIR_BUDGET,
    sample_size: int = DEFAULT_SAMPLE_SIZE,
    sample_seed: Optional[int] = None,
) -> InjectionResult:
    """Union A with the pruned two-band Sidon set; x moves to p^2."""
    from .verify import assert_unique_sums_checked

    stage = "injection"
    eps = check_epsilon(epsilon)
    if 0 in A_even:
        raise InvariantViolation(stage, "0 in A (hypothesis IV)")
    assert_unique_sums_checked(A_even, pair_budget, stage=stage)
    a_star = A_even.max_abs()
    split = split_construction(bose_construction(p), eps)
    verdict = verify_split(split)
    if not verdict.invariants_ok:
        raise InvariantViolation(stage, f"split verification failed: {verdict}")
    s_tilde, removals = prune_sidon(split.script_s, A_even)
    all_removals = list(removals)
    if mode == "paper":
        _check_paper_bounds(s_tilde, a_star, eps, p)
        result = A_even.union(s_tilde)
        assert_unique_sums_checked(
            result,
            pair_budget,
            stage=stage,
            sample_size=sample_size,
            sample_seed=sample_seed,
            window_half=4 * a_star * a_star,
        )
    else:
        # Toy mode: the prime is below the paper-mode threshold, so collisions
        # with old sums can survive pruning; drop the new elements involved.
        while True:
            result = A_even.union(s_tilde)
            witness = assert_unique_sums_checked(
                result, pair_budget, stage=stage, collect=True
            )
            if witness is None:
                break
            guilty = tuple(
                v for v in {witness.a, witness.a2, witness.c, witness.c2}
                if v in s_tilde
            )
            if not guilty:
                raise InvariantViolation(
                    stage, f"collision inside previously verified set: {witness}"
                )
            all_removals.append(
                Removal(
                    reason="collision",
                    value=witness.a + witness.a2,
                    removed=tuple(sorted(guilty)),
                )
            )
            s_tilde = s_tilde.difference(IntegerSet(guilty))
    if 0 in result:
        raise InvariantViolation(stage, "0 entered the set")
    x_next = p * p
    if result.count_window(x_next) < len(s_tilde):
        raise InvariantViolation(stage, "window count below injected size")
    return InjectionResult(
        a_next=result,
        x_next=x_next,
        split=split,
        s_tilde=s_tilde,
        removals=tuple(all_removals),
    )


def _assert_hypothesis_ii(A: IntegerSet, h: int, stage: str) -> None:
    for n in range(-h, h + 1):
        got = A.rep_count_unordered(n)
        if got != 1:
            raise InvariantViolation(stage, f"hypothesis II: r({n}) = {got} != 1")


def build(config: BuilderConfig) -> BuilderTranscript:
    eps = Fraction(config.epsilon)
    A, x = initial_state()
    initial_set = A
    checkpoints = [Checkpoint(x=x, count=A.count_window(x))]
    stages: list[StageRecord] = []
    for h in range(1, config.rounds + 1):
        stage = f"stage h={h}"
        A_odd = A
        if config.mode == "paper" and not checkpoints[-1].passes(eps):
            raise InvariantViolation(stage, "hypothesis III failed at checkpoint")
        A_even, m, b, b_tilde = pair_fill_step(A_odd, config.pair_budget)
        _assert_hypothesis_ii(A_even, h, stage)
        a_star = A_even.max_abs()
        if config.mode == "paper":
            p = choose_prime(a_star, eps, x)
        else:
            p = toy_prime(config.forced_p, x)
        inj = injection_step(
            A_even,
            eps,
            p,
            mode=config.mode,
            pair_budget=config.pair_budget,
            sample_size=config.sample_size,
            sample_seed=config.sample_seed,
        )
        if not (A_odd.issubset(A_even) and A_even.issubset(inj.a_next)):
            raise InvariantViolation(stage, "subset monotonicity failed")
        if inj.x_next <= x:
            raise InvariantViolation(stage, f"x must grow: {x} -> {inj.x_next}")
        stages.append(
            StageRecord(
                h=h,
                m=m,
                b=b,
                b_tilde=b_tilde,
                p=p,
                x=inj.x_next,
                a_star=a_star,
                A_odd=A_odd,
                A_even=A_even,
                pruned=inj.removals,
            )
        )
        A, x = inj.a_next, inj.x_next
        checkpoints.append(Checkpoint(x=x, count=A.count_window(x)))
        if config.mode == "paper" and not checkpoints[-1].passes(eps):
            raise InvariantViolation(stage, "hypothesis III failed after injection")
    return BuilderTranscript(
        config=config,
        initial_set=initial_set,
        x1=1,
        stages=tuple(stages),
        final_set=A,
        checkpoints=tuple(checkpoints),
    )

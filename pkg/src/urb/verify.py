"""Trust-nothing transcript verification, sampled sum checks, growth reports.

The verifier replays every stage from A_1 = {-1, 1} using only the recorded
m and p choices, recomputing the Bose set, the split, and the pruning from
scratch, and compares each derived object against the transcript. Nothing
recorded is taken at face value: a forged prime, a deleted element, or a
tampered pruning log all surface as structured mismatches.

Sets too large for the exhaustive pair scan are checked in sampled mode:
targets drawn uniformly from the achievable sum range plus adversarial
blocks near 0 and near +-2 max|A| (where collisions between old and new
sums would concentrate), and an exhaustive sweep of the small central
window, which is where every pair sum of the bounded old elements lands.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .builder import (
    RATIO_DIGITS,
    BuilderTranscript,
    InvariantViolation,
    _sqrt_ratio_decimal,
    choose_prime,
    initial_state,
    injection_step,
    pair_fill_step,
    toy_prime,
)
from .intset import (
    IntegerSet,
    SumCollision,
    _pairs_with_sum,
    assert_unique_sums,
    pair_count,
)
from .primes import is_prime

# width of each adversarial sample block around its center
ADVERSARIAL_HALF_WIDTH = 1_000_000


def _rep_scan_kernel(elems, targets):
    # first index into targets whose unordered representation count is >= 2,
    # or -1; two-pointer sweep per target over the ascending elements
    for t in range(len(targets)):
        goal = targets[t]
        i = 0
        j = len(elems) - 1
        count = 0
        while i <= j:
            s = elems[i] + elems[j]
            if s == goal:
                count += 1
                if count >= 2:
                    break
                i += 1
                j -= 1
            elif s < goal:
                i += 1
            else:
                j -= 1
        if count >= 2:
            return t
    return -1


def _window_counts_kernel(elems, lo, hi):
    out = np.zeros(hi - lo + 1, np.int64)
    for t in range(lo, hi + 1):
        i = 0
        j = len(elems) - 1
        count = 0
        while i <= j:
            s = elems[i] + elems[j]
            if s == t:
                count += 1
                i += 1
                j -= 1
            elif s < t:
                i += 1
            else:
                j -= 1
        out[t - lo] = count
    return out


try:  # pragma: no cover - import guard
    from numba import njit

    rep_scan = njit(cache=True)(_rep_scan_kernel)
    window_counts_scan = njit(cache=True)(_window_counts_kernel)
except ImportError:  # pragma: no cover
    rep_scan = _rep_scan_kernel
    window_counts_scan = _window_counts_kernel


def sample_targets(A: IntegerSet, sample_size: int, seed: int) -> np.ndarray:
    """Half uniform over the achievable sum range, half adversarial near 0
    and near +-2 max|A|. Deterministic for a given seed."""
    e = A.elements
    lo, hi = 2 * e[0], 2 * e[-1]
    rng = np.random.default_rng(seed)
    n_uniform = sample_size // 2
    blocks = [rng.integers(lo, hi + 1, size=n_uniform, dtype=np.int64)]
    m = A.max_abs()
    centers = [0, 2 * m, -2 * m]
    per_block = (sample_size - n_uniform) // 3
    sizes = [sample_size - n_uniform - 2 * per_block, per_block, per_block]
    w = ADVERSARIAL_HALF_WIDTH
    for center, size in zip(centers, sizes):
        block = rng.integers(center - w, center + w + 1, size=size, dtype=np.int64)
        blocks.append(np.clip(block, lo, hi))
    return np.concatenate(blocks)


def sampled_unique_sums(
    A: IntegerSet, sample_size: int, seed: int
) -> Optional[SumCollision]:
    """None when r_A(n) <= 1 for every sampled target n, else a witness."""
    if seed is None:
        raise ValueError("sampled verification requires an explicit seed")
    if len(A) == 0:
        return None
    targets = sample_targets(A, sample_size, seed)
    elems = np.array(A.elements, dtype=np.int64)
    hit = int(rep_scan(elems, targets))
    if hit < 0:
        return None
    pairs = _pairs_with_sum(A.elements, int(targets[hit]))
    return SumCollision(*(pairs[0] + pairs[1]))


def window_rep_counts(A: IntegerSet, lo: int, hi: int) -> np.ndarray:
    """r_A(n) for every n in [lo, hi], as an array indexed by n - lo."""
    if lo > hi:
        raise ValueError("empty window")
    elems = np.array(A.elements, dtype=np.int64)
    return window_counts_scan(elems, lo, hi)


def assert_unique_sums_checked(
    A: IntegerSet,
    pair_budget: int,
    stage: str,
    sample_size: Optional[int] = None,
    sample_seed: Optional[int] = None,
    window_half: Optional[int] = None,
    collect: bool = False,
) -> Optional[SumCollision]:
    """Hypothesis I gate: exhaustive within the pair budget, sampled plus an
    exhaustive central window beyond it. Raises InvariantViolation on a
    collision unless collect=True (then the witness is returned)."""
    if pair_count(len(A)) <= pair_budget:
        witness = assert_unique_sums(A, pair_budget=pair_budget)
    else:
        if sample_size is None or sample_seed is None:
            raise InvariantViolation(
                stage,
                "set exceeds the exhaustive pair budget and no sample size/seed "
                "was configured for sampled verification",
            )
        witness = sampled_unique_sums(A, sample_size, sample_seed)
        if witness is None and window_half:
            counts = window_rep_counts(A, -window_half, window_half)
            bad = np.nonzero(counts >= 2)[0]
            if bad.size:
                n = int(bad[0]) - window_half
                pairs = _pairs_with_sum(A.elements, n)
                witness = SumCollision(*(pairs[0] + pairs[1]))
    if witness is not None and not collect:
        raise InvariantViolation(stage, f"sum collision: {witness}")
    return witness


@dataclass(frozen=True)
class Mismatch:
    stage: str
    field: str
    expected: str
    found: str


@dataclass(frozen=True)
class VerificationReport:
    mismatches: tuple[Mismatch, ...]

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def to_json_dict(self) -> dict:
        return {
            "ok": self.ok,
            "mismatches": [
                {
                    "stage": m.stage,
                    "field": m.field,
                    "expected": m.expected,
                    "found": m.found,
                }
                for m in self.mismatches
            ],
        }


def _set_digest(A: IntegerSet) -> str:
    if len(A) <= 8:
        return "{" + ",".join(str(v) for v in A) + "}"
    head = ",".join(str(v) for v in list(A)[:3])
    return f"{{{head},... }} ({len(A)} elements)"


def verify_transcript(transcript: BuilderTranscript) -> VerificationReport:
    """Replay the whole build from A_1 and report every divergence."""
    cfg = transcript.config
    eps = Fraction(cfg.epsilon)
    mismatches: list[Mismatch] = []

    def note(stage: str, field: str, expected, found) -> None:
        mismatches.append(Mismatch(stage, field, str(expected), str(found)))

    A0, x0 = initial_state()
    if transcript.initial_set != A0:
        note("initial", "initial_set", _set_digest(A0), _set_digest(transcript.initial_set))
        return VerificationReport(tuple(mismatches))
    if transcript.x1 != x0:
        note("initial", "x1", x0, transcript.x1)
    if len(transcript.stages) != cfg.rounds:
        note("initial", "stage count", cfg.rounds, len(transcript.stages))
    A, x = A0, x0
    expected_checkpoints = [(x, A.count_window(x))]
    for index, rec in enumerate(transcript.stages, start=1):
        stage = f"stage h={index}"
        if rec.h != index:
            note(stage, "h", index, rec.h)
        if rec.A_odd != A:
            note(stage, "A_odd", _set_digest(A), _set_digest(rec.A_odd))
            break
        try:
            A_even, m, b, b_tilde = pair_fill_step(A, cfg.pair_budget)
        except InvariantViolation as err:
            note(stage, "pair_fill", "invariants hold", err.detail)
            break
        for field, expected, found in (
            ("m", m, rec.m),
            ("b", b, rec.b),
            ("b_tilde", b_tilde, rec.b_tilde),
            ("a_star", A_even.max_abs(), rec.a_star),
        ):
            if expected != found:
                note(stage, field, expected, found)
        if rec.A_even != A_even:
            note(stage, "A_even", _set_digest(A_even), _set_digest(rec.A_even))
            break
        bad = [n for n in range(-index, index + 1) if A_even.rep_count_unordered(n) != 1]
        if bad:
            note(stage, "hypothesis II", "r(n)=1 for |n|<=h", f"fails at n={bad[0]}")
        if not is_prime(rec.p):
            note(stage, "p", "a prime", rec.p)
            break
        expected_p = (
            choose_prime(A_even.max_abs(), eps, x)
            if cfg.mode == "paper"
            else toy_prime(cfg.forced_p, x)
        )
        if rec.p != expected_p:
            note(stage, "p", expected_p, rec.p)
            break
        try:
            inj = injection_step(
                A_even,
                eps,
                rec.p,
                mode=cfg.mode,
                pair_budget=cfg.pair_budget,
                sample_size=cfg.sample_size,
                sample_seed=cfg.sample_seed,
            )
        except InvariantViolation as err:
            note(stage, "injection", "invariants hold", err.detail)
            break
        if rec.x != inj.x_next:
            note(stage, "x", inj.x_next, rec.x)
        if inj.x_next <= x:
            note(stage, "x monotonicity", f"> {x}", inj.x_next)
        if rec.pruned != inj.removals:
            note(stage, "pruned", f"{len(inj.removals)} removals", f"{len(rec.pruned)} removals")
        recorded_next = (
            transcript.stages[index].A_odd
            if index < len(transcript.stages)
            else transcript.final_set
        )
        if recorded_next != inj.a_next:
            note(
                stage,
                "A_odd next" if index < len(transcript.stages) else "final_set",
                _set_digest(inj.a_next),
                _set_digest(recorded_next),
            )
            break
        if not (A.issubset(A_even) and A_even.issubset(inj.a_next)):
            note(stage, "subset chain", "A_odd <= A_even <= A_next", "violated")
        if 0 in inj.a_next:
            note(stage, "hypothesis IV", "0 not in A", "0 in A")
        A, x = inj.a_next, inj.x_next
        expected_checkpoints.append((x, A.count_window(x)))
    else:
        if transcript.final_set != A:
            note("final", "final_set", _set_digest(A), _set_digest(transcript.final_set))
        recorded = [(c.x, c.count) for c in transcript.checkpoints]
        if recorded != expected_checkpoints:
            note("final", "checkpoints", expected_checkpoints, recorded)
    return VerificationReport(tuple(mismatches))


@dataclass(frozen=True)
class GrowthRow:
    x: int
    count: int
    passes: bool
    bound_claimed: bool

    @property
    def ratio_num(self) -> int:
        return self.count * self.count

    @property
    def ratio_den_sq(self) -> int:
        return self.x

    def ratio_decimal(self, digits: int = RATIO_DIGITS) -> str:
        return _sqrt_ratio_decimal(self.count, self.x, digits)


@dataclass(frozen=True)
class GrowthReport:
    epsilon: Fraction
    rows: tuple[GrowthRow, ...]

    @property
    def best_row(self) -> GrowthRow:
        return max(self.rows, key=lambda r: Fraction(r.ratio_num, r.ratio_den_sq))

    def to_csv(self) -> str:
        lines = ["x,count,ratio_decimal,pass"]
        for r in self.rows:
            lines.append(f"{r.x},{r.count},{r.ratio_decimal()},{str(r.passes).lower()}")
        return "\n".join(lines) + "\n"

    def to_json_dict(self) -> dict:
        return {
            "epsilon": str(self.epsilon),
            "rows": [
                {
                    "x": str(r.x),
                    "count": str(r.count),
                    "ratio_num": str(r.ratio_num),
                    "ratio_den_sq": str(r.ratio_den_sq),
                    "ratio_decimal": r.ratio_decimal(),
                    "pass": r.passes,
                    "bound_claimed": r.bound_claimed,
                }
                for r in self.rows
            ],
            "best_ratio_decimal": self.best_row.ratio_decimal(),
        }


def growth_report(transcript: BuilderTranscript) -> GrowthReport:
    """One row per checkpoint: count vs (1 - eps) sqrt(x) in exact integers.

    In toy mode the bound is recorded but not claimed: the forced prime sits
    below the threshold that makes the paper-mode inequality chain applicable.
    """
    eps = Fraction(transcript.config.epsilon)
    claimed = transcript.config.mode == "paper"
    bound = 1 - eps
    num, den = bound.numerator, bound.denominator
    rows = tuple(
        GrowthRow(
            x=c.x,
            count=c.count,
            passes=c.count * c.count * den * den >= num * num * c.x,
            bound_claimed=claimed,
        )
        for c in transcript.checkpoints
    )
    return GrowthReport(epsilon=eps, rows=rows)

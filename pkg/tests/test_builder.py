from fractions import Fraction

import pytest

from urb.builder import (
    BuilderConfig,
    BuilderTranscript,
    Checkpoint,
    InvariantViolation,
    build,
    choose_prime,
    find_min_unrepresented,
    initial_state,
    injection_step,
    pair_fill_step,
    prune_sidon,
    toy_prime,
)
from urb.intset import IntegerSet
from urb.split import split_construction
from urb.sidon import bose_construction

HALF = Fraction(1, 2)


def toy_config(**overrides):
    kwargs = dict(
        epsilon=HALF, rounds=2, mode="toy", forced_p=101, sample_seed=7
    )
    kwargs.update(overrides)
    return BuilderConfig(**kwargs)


def test_config_validation():
    with pytest.raises(ValueError):
        BuilderConfig(epsilon=HALF, rounds=1, mode="toy")  # toy needs forced_p
    with pytest.raises(ValueError):
        BuilderConfig(epsilon=HALF, rounds=1, mode="toy", forced_p=100)
    with pytest.raises(ValueError):
        BuilderConfig(epsilon=HALF, rounds=1, mode="paper", forced_p=101)
    with pytest.raises(ValueError):
        BuilderConfig(epsilon=Fraction(2), rounds=1, mode="paper")
    with pytest.raises(ValueError):
        BuilderConfig(epsilon=HALF, rounds=0, mode="paper")


def test_initial_state():
    A, x = initial_state()
    assert A.elements == (-1, 1)
    assert x == 1


def test_find_min_unrepresented_on_a1():
    # A1 = {-1, 1} represents -2, 0, 2; the missing value of least absolute
    # value is 1 (positive preferred on ties).
    assert find_min_unrepresented(IntegerSet([-1, 1])) == 1


def test_find_min_unrepresented_zero_first():
    # {-3, 1} has sums {-6, -2, 2}; 0 is the smallest missing value.
    assert find_min_unrepresented(IntegerSet([-3, 1])) == 0


def test_find_min_unrepresented_tie_prefers_positive():
    # {-2, 2} has sums {-4, 0, 4}; both 1 and -1 are missing, pick 1.
    assert find_min_unrepresented(IntegerSet([-2, 2])) == 1


def test_pair_fill_first_stage_hand_values():
    A, _ = initial_state()
    B, m, b, b_tilde = pair_fill_step(A)
    # a* = 1, m = 1, b = 4*1 + 1 = 5, pair {-5, 6}; -1 then needs the second
    # pair with b~ = 4*5 + 5 = 25: {-25, 24}.
    assert m == 1
    assert b == 5
    assert b_tilde == 25
    assert B.elements == (-25, -5, -1, 1, 6, 24)
    for n in (-1, 0, 1):
        assert B.rep_count_unordered(n) == 1


def test_choose_prime_hand_values():
    assert choose_prime(1, HALF, 1) == 131  # 64*1/(1/2) = 128
    assert choose_prime(25, Fraction(9, 10), 10201) == 44449


def test_toy_prime_respects_x_monotonicity():
    assert toy_prime(101, 1) == 101
    # q^2 must exceed x_h, so a forced prime that is too small advances.
    assert toy_prime(101, 101 * 101) == 103


def test_prune_sidon_removes_difference_collisions():
    A = IntegerSet([-1, 1])
    split = split_construction(bose_construction(101), HALF)
    pruned, removals = prune_sidon(split.script_s, A)
    assert pruned.issubset(split.script_s)
    # every removal names elements of the original split set
    for r in removals:
        assert r.reason in ("difference", "sum")
        assert all(v in split.script_s for v in r.removed)
    # no surviving pair has a difference in (A - A) or a sum in 2A
    diffs = set(A.difference_set().elements)
    doubles = set(A.double_sumset().elements)
    e = pruned.elements
    for i in range(len(e)):
        for j in range(i + 1, len(e)):
            assert e[j] - e[i] not in diffs or e[j] - e[i] == 0
            assert e[i] + e[j] not in doubles


def test_injection_toy_keeps_unique_sums():
    A, _ = initial_state()
    B, _, _, _ = pair_fill_step(A)
    result = injection_step(B, HALF, 101, mode="toy")
    assert result.x_next == 101 * 101
    assert B.issubset(result.a_next)
    assert 0 not in result.a_next
    # unique sums on the whole union, exhaustively
    from urb.intset import assert_unique_sums

    assert assert_unique_sums(result.a_next) is None


def test_build_toy_two_rounds():
    t = build(toy_config())
    assert len(t.stages) == 2
    assert t.stages[0].p == 101
    assert t.x1 == 1
    assert t.initial_set.elements == (-1, 1)
    # r(n) = 1 for |n| <= 2 after two rounds
    for n in range(-2, 3):
        assert t.final_set.rep_count_unordered(n) == 1
    # checkpoints grow with x
    xs = [c.x for c in t.checkpoints]
    assert xs == sorted(xs)


def test_build_is_deterministic():
    a = build(toy_config()).dumps()
    b = build(toy_config()).dumps()
    assert a == b


def test_transcript_round_trip_bytes():
    t = build(toy_config())
    text = t.dumps()
    again = BuilderTranscript.loads(text)
    assert again.dumps() == text
    assert again.final_set == t.final_set
    assert again.config.epsilon == t.config.epsilon


def test_checkpoint_ratio_decimal():
    c = Checkpoint(x=4, count=3)
    # sqrt(9/4) = 1.5
    assert c.ratio_decimal() == "1.500000000000"
    assert c.passes(HALF)  # 1.5 >= 1 - 1/2
    weak = Checkpoint(x=4, count=1)  # ratio 0.5
    assert weak.ratio_decimal() == "0.500000000000"
    assert weak.passes(HALF)  # 0.5 >= 0.5 exactly
    assert not weak.passes(Fraction(1, 4))  # 0.5 < 0.75


def test_invariant_violation_carries_stage():
    err = InvariantViolation("stage h=1", "detail text")
    assert "stage h=1" in str(err) and "detail text" in str(err)

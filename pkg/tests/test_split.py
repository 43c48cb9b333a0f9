from fractions import Fraction

import pytest

from urb.sidon import bose_construction, is_sidon
from urb.split import (
    EpsilonOutOfRange,
    check_epsilon,
    in_outer_bands,
    size_lower_bound,
    split_construction,
    verify_split,
)

HALF = Fraction(1, 2)


def test_check_epsilon_bounds():
    assert check_epsilon(Fraction(1, 3)) == Fraction(1, 3)
    for bad in (Fraction(0), Fraction(1), Fraction(-1, 2), Fraction(3, 2)):
        with pytest.raises(EpsilonOutOfRange):
            check_epsilon(bad)


def test_split_p3_hand_example():
    # Bose set mod 8 is {1, 6, 7}; with eps = 1/2 the cut thresholds are
    # (1/2 -+ 1/32) * 9, so l = 1, y = 1 and nothing is shifted or dropped.
    result = split_construction(bose_construction(3), HALF)
    assert result.l_index == 1
    assert result.y_index == 1
    assert result.script_s.elements == (6, 7)
    assert result.dropped_middle_count == 0


def test_split_indices_are_exact_rational_cuts():
    result = split_construction(bose_construction(101), HALF)
    p2 = 101 * 101
    low_cut = (HALF - HALF**2 / 8) * p2
    high_cut = (HALF + HALF**2 / 8) * p2
    s = bose_construction(101).elements
    assert result.l_index == sum(1 for v in s if v <= low_cut)
    assert result.y_index == sum(1 for v in s if v < high_cut)


@pytest.mark.parametrize("p", [7, 11, 13, 101])
def test_split_membership_and_cardinality(p):
    result = split_construction(bose_construction(p), HALF)
    verdict = verify_split(result)
    assert verdict.membership_ok
    assert verdict.sidon_witness is None
    assert verdict.cardinality_ok
    assert verdict.invariants_ok
    assert len(result.script_s) == p - result.dropped_middle_count - 1
    assert is_sidon(result.script_s) is None


def test_in_outer_bands_edges():
    p, eps = 101, HALF
    p2 = p * p
    hi_inner = (Fraction(1, 2) + eps**2 / 8) * p2  # exclusive lower edge, kept band
    assert not in_outer_bands(int(hi_inner), p, eps)
    assert in_outer_bands(int(hi_inner) + 1, p, eps)
    assert in_outer_bands(p2 - 1, p, eps)
    assert not in_outer_bands(0, p, eps)
    assert in_outer_bands(p2, p, eps)  # bands run out to +-p^2 inclusive
    assert not in_outer_bands(p2 + 1, p, eps)
    assert not in_outer_bands(-p2 - 1, p, eps)


def test_size_lower_bound_value():
    assert size_lower_bound(101, HALF) == Fraction(101) * (1 - Fraction(3, 8))


def test_shifted_band_is_negative():
    result = split_construction(bose_construction(101), HALF)
    negatives = [v for v in result.script_s if v < 0]
    positives = [v for v in result.script_s if v > 0]
    assert len(negatives) == result.l_index - 1
    assert len(positives) == len(result.script_s) - len(negatives)
    modulus = 101 * 101 - 1
    original = set(bose_construction(101).elements)
    assert all(v + modulus in original for v in negatives)
    assert all(v in original for v in positives)

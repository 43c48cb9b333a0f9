"""Unique representation bases of the integers: construction, verification,
and growth reporting, built on Sidon sets."""

from .builder import (
    BuilderConfig,
    BuilderTranscript,
    InvariantViolation,
    build,
)
from .intset import IntegerSet, PairBudgetExceeded, SumCollision, assert_unique_sums
from .sidon import (
    bose_construction,
    greedy_sidon,
    is_modular_sidon,
    is_sidon,
    max_sidon_exact,
    max_sidon_naive,
)
from .split import split_construction, verify_split
from .verify import growth_report, verify_transcript

__version__ = "0.1.0"

__all__ = [
    "BuilderConfig",
    "BuilderTranscript",
    "IntegerSet",
    "InvariantViolation",
    "PairBudgetExceeded",
    "SumCollision",
    "assert_unique_sums",
    "bose_construction",
    "build",
    "greedy_sidon",
    "growth_report",
    "is_modular_sidon",
    "is_sidon",
    "max_sidon_exact",
    "max_sidon_naive",
    "split_construction",
    "verify_split",
    "verify_transcript",
]

"""GF(p) / GF(p^2) arithmetic with canonical, reproducible context choices.

The quadratic extension is GF(p)[x] / (x^2 - r) where r is the smallest
positive quadratic non-residue mod p. The canonical primitive element is the
first full-order element in (c1, c0) ascending order with c1 >= 1. Fixing
both choices makes every downstream construction a reproducible constant.
"""

from __future__ import annotations

from dataclasses import dataclass

from .primes import factorize, is_prime


class NotPrime(ValueError):
    def __init__(self, p: int):
        self.p = p
        super().__init__(f"{p} is not an odd prime")


class ZeroElement(Exception):
    pass


@dataclass(frozen=True)
class FieldElement:
    """c0 + c1*x in GF(p)[x]/(x^2 - r), coefficients reduced mod p."""

    c0: int
    c1: int

    def is_zero(self) -> bool:
        return self.c0 == 0 and self.c1 == 0

    def __repr__(self) -> str:
        return f"({self.c0} + {self.c1}x)"


class FieldContext:
    """Immutable GF(p^2) context: prime p, non-residue r, primitive g."""

    __slots__ = ("p", "r", "g", "order", "order_factors")

    def __init__(self, p: int):
        if p == 2 or not is_prime(p):
            raise NotPrime(p)
        self.p = p
        self.r = _smallest_non_residue(p)
        self.order = p * p - 1
        self.order_factors = factorize(self.order)
        self.g = self._find_primitive()

    def _find_primitive(self) -> FieldElement:
        for c1 in range(1, self.p):
            for c0 in range(self.p):
                cand = FieldElement(c0, c1)
                if self.element_order_is_full(cand):
                    return cand
        raise AssertionError("GF(p^2)* is cyclic; a primitive element must exist")

    def one(self) -> FieldElement:
        return FieldElement(1, 0)

    def mul(self, a: FieldElement, b: FieldElement) -> FieldElement:
        p, r = self.p, self.r
        return FieldElement(
            (a.c0 * b.c0 + r * a.c1 * b.c1) % p,
            (a.c0 * b.c1 + a.c1 * b.c0) % p,
        )

    def pow(self, a: FieldElement, k: int) -> FieldElement:
        if k < 0:
            raise ValueError("negative exponent unsupported")
        acc = self.one()
        base = a
        while k:
            if k & 1:
                acc = self.mul(acc, base)
            base = self.mul(base, base)
            k >>= 1
        return acc

    def element_order_is_full(self, a: FieldElement) -> bool:
        """True iff a generates GF(p^2)*, via a^((p^2-1)/q) != 1 per prime q."""
        if a.is_zero():
            raise ZeroElement("order of zero is undefined")
        one = self.one()
        for q, _ in self.order_factors:
            if self.pow(a, self.order // q) == one:
                return False
        return True

    def summary(self) -> dict:
        """Reproducibility audit block embedded in CLI JSON output."""
        return {
            "p": self.p,
            "r": self.r,
            "g": {"c0": self.g.c0, "c1": self.g.c1},
            "order_factors": [[q, e] for q, e in self.order_factors],
        }


def _smallest_non_residue(p: int) -> int:
    for r in range(2, p):
        if pow(r, (p - 1) // 2, p) == p - 1:
            return r
    raise AssertionError("every odd prime has a non-residue below p")


def make_context(p: int) -> FieldContext:
    return FieldContext(p)

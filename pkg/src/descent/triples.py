"""Primitive Pythagorean triples and their generator pairs.

A primitive triple (a, b, c) with a odd, b even arises from exactly one
coprime, opposite-parity pair p > q >= 1 via

    a = p**2 - q**2,  b = 2*p*q,  c = p**2 + q**2.

This module composes triples from generator pairs, inverts the map (for
both the sum orientation a**2 + b**2 = c**2 and the difference orientation
a**2 - b**2 = c**2), and checks the classical divisibility facts: one leg
is divisible by 3, the even leg by 4, and one member by 5.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from math import gcd, isqrt

from .errors import (
    BothOddError,
    DegenerateError,
    EvenHypotenuseError,
    InvalidGeneratorError,
    InvariantViolationError,
    NotASquareError,
    NotCoprimeError,
)

__all__ = [
    "GeneratorPair",
    "PrimitiveTriple",
    "DiffBranch",
    "DivisibilityReport",
    "compose_triple",
    "decompose_sum",
    "decompose_diff",
    "divisibility_report",
]


@dataclass(frozen=True)
class GeneratorPair:
    """Coprime pair p > q >= 1 of opposite parity."""

    p: int
    q: int

    def __post_init__(self) -> None:
        if not (self.p > self.q >= 1):
            raise InvalidGeneratorError(f"need p > q >= 1, got ({self.p}, {self.q})")
        if gcd(self.p, self.q) != 1:
            raise InvalidGeneratorError(f"({self.p}, {self.q}) not coprime")
        if (self.p + self.q) % 2 == 0:
            raise InvalidGeneratorError(f"({self.p}, {self.q}) have equal parity")


@dataclass(frozen=True)
class PrimitiveTriple:
    """Primitive triple with its generator pair; a odd, b even."""

    a: int
    b: int
    c: int
    gen: GeneratorPair


class DiffBranch(enum.Enum):
    """Which slot the smaller member of a square difference landed in."""

    ODD_B = "odd_b"  # b = p**2 - q**2
    EVEN_B = "even_b"  # b = 2*p*q


@dataclass(frozen=True)
class DivisibilityReport:
    """Which member carries each guaranteed divisor ("a", "b", or "c")."""

    div3: str
    div4: str
    div5: str


def compose_triple(p: int, q: int) -> PrimitiveTriple:
    """Build the primitive triple generated by (p, q)."""
    gen = GeneratorPair(p, q)
    return PrimitiveTriple(a=p * p - q * q, b=2 * p * q, c=p * p + q * q, gen=gen)


def decompose_sum(a: int, b: int) -> GeneratorPair:
    """Invert the triple map: legs (a, b) in either order -> (p, q).

    Requires gcd(a, b) = 1 and a**2 + b**2 a perfect square. The odd leg is
    identified internally, so callers need not order the arguments. The
    returned pair always satisfies the GeneratorPair invariants; BothOddError
    cannot fire on square-sum inputs and stays as a guard.
    """
    if a * b == 0:
        raise DegenerateError("legs must be positive")
    if gcd(a, b) != 1:
        raise NotCoprimeError(f"gcd({a}, {b}) > 1")
    s = a * a + b * b
    c = isqrt(s)
    if c * c != s:
        raise NotASquareError(f"{a}**2 + {b}**2 = {s} is not a perfect square")
    if a % 2 == 1 and b % 2 == 1:
        # Two odd squares sum to 2 mod 4; unreachable once the sum is square.
        raise BothOddError("sum of two odd squares is never a square")
    odd, even = (a, b) if a % 2 == 1 else (b, a)
    p = isqrt((c + odd) // 2)
    q = isqrt((c - odd) // 2)
    if p * p - q * q != odd or 2 * p * q != even:
        raise InvariantViolationError(f"no generator pair reproduces ({a}, {b})")
    return GeneratorPair(p, q)


def decompose_diff(a: int, b: int) -> tuple[GeneratorPair, DiffBranch]:
    """Invert a square difference: a**2 - b**2 = c**2 -> ((p, q), branch).

    Requires gcd(a, b) = 1, a > b, and a**2 - b**2 a perfect square. Returns
    (p, q) with a = p**2 + q**2 and either b = p**2 - q**2 (branch ODD_B) or
    b = 2*p*q (branch EVEN_B). a even cannot occur on valid inputs.
    """
    if gcd(a, b) != 1:
        raise NotCoprimeError(f"gcd({a}, {b}) > 1")
    if a <= b:
        raise ValueError(f"need a > b, got ({a}, {b})")
    d = a * a - b * b
    c = isqrt(d)
    if c * c != d:
        raise NotASquareError(f"{a}**2 - {b}**2 = {d} is not a perfect square")
    if a % 2 == 0:
        raise EvenHypotenuseError("larger member of a square difference must be odd")
    gen = decompose_sum(b, c)
    branch = DiffBranch.ODD_B if b % 2 == 1 else DiffBranch.EVEN_B
    return gen, branch


def divisibility_report(t: PrimitiveTriple) -> DivisibilityReport:
    """Locate the members of t divisible by 3, 4, and 5.

    One leg is always divisible by 3, the even leg by 4, and one of the
    three members by 5; a missing divisor would violate the triple
    invariants and raises InvariantViolationError.
    """
    if t.a % 3 == 0:
        div3 = "a"
    elif t.b % 3 == 0:
        div3 = "b"
    else:
        raise InvariantViolationError(f"no leg of {t} divisible by 3")
    if t.b % 4 != 0:
        raise InvariantViolationError(f"even leg of {t} not divisible by 4")
    if t.a % 5 == 0:
        div5 = "a"
    elif t.b % 5 == 0:
        div5 = "b"
    elif t.c % 5 == 0:
        div5 = "c"
    else:
        raise InvariantViolationError(f"no member of {t} divisible by 5")
    return DivisibilityReport(div3=div3, div4="b", div5=div5)

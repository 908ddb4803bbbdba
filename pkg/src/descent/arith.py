"""Exact integer and rational primitives.

Everything here is pure arbitrary-precision arithmetic: integer square
roots, perfect-power tests, coprime power splitting, and fraction
normalization. No floating point touches the domain values.

The perfect-square test carries a residue fast path (tables mod 64, 63
and 65) because square testing dominates scan throughput; the unfiltered
variants exist so scans can be re-checked through a deliberately naive
second route.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt

from .errors import (
    FactorNotAPowerError,
    NotAPowerError,
    NotPairwiseCoprimeError,
    ZeroDenominatorError,
)

__all__ = [
    "gcd",
    "isqrt",
    "is_square",
    "is_square_unfiltered",
    "is_fourth_power",
    "is_fourth_power_unfiltered",
    "coprime_power_split",
    "normalize",
]


def _residue_table(modulus: int, exponent: int) -> bytes:
    table = bytearray(modulus)
    for i in range(modulus):
        table[pow(i, exponent, modulus)] = 1
    return bytes(table)


# Quadratic residue tables. Together they reject > 95% of non-squares
# before an isqrt is computed; they never reject a true square.
_SQ64 = _residue_table(64, 2)
_SQ63 = _residue_table(63, 2)
_SQ65 = _residue_table(65, 2)

# Fourth-power residue tables for the biquadrate test.
_QP64 = _residue_table(64, 4)
_QP63 = _residue_table(63, 4)
_QP65 = _residue_table(65, 4)


def is_square(n: int) -> bool:
    """True iff n is a perfect square. Negative inputs are never squares."""
    if n < 0:
        return False
    if not (_SQ64[n & 63] and _SQ63[n % 63] and _SQ65[n % 65]):
        return False
    r = isqrt(n)
    return r * r == n


def is_square_unfiltered(n: int) -> bool:
    """Perfect-square test by isqrt alone, no residue filters.

    Kept as an independent second route for scan cross-checks.
    """
    if n < 0:
        return False
    r = isqrt(n)
    return r * r == n


def is_fourth_power(n: int) -> bool:
    """True iff n = r**4 for some integer r >= 0."""
    if n < 0:
        return False
    if not (_QP64[n & 63] and _QP63[n % 63] and _QP65[n % 65]):
        return False
    r = isqrt(n)
    if r * r != n:
        return False
    s = isqrt(r)
    return s * s == r


def is_fourth_power_unfiltered(n: int) -> bool:
    """Biquadrate test via two isqrt calls, no residue filters."""
    if n < 0:
        return False
    r = isqrt(n)
    if r * r != n:
        return False
    s = isqrt(r)
    return s * s == r


def _kth_root(n: int, k: int) -> int:
    """Floor of the k-th root of n >= 0, exact for any magnitude."""
    if n < 0:
        raise ValueError("negative radicand")
    if k == 2:
        return isqrt(n)
    if n == 0:
        return 0
    # Newton iteration seeded from the bit length; pure integer steps.
    r = 1 << -(-n.bit_length() // k)
    while True:
        nxt = ((k - 1) * r + n // r ** (k - 1)) // k
        if nxt >= r:
            break
        r = nxt
    while r ** k > n:
        r -= 1
    while (r + 1) ** k <= n:
        r += 1
    return r


def coprime_power_split(factors: list[int], k: int) -> list[int]:
    """Split a perfect k-th power with pairwise-coprime factors into roots.

    If the product of the (pairwise coprime, positive) factors is a perfect
    k-th power, every factor must itself be one; returns their k-th roots.

    Raises NotPairwiseCoprimeError, NotAPowerError, or (never on inputs
    satisfying the preconditions) FactorNotAPowerError.
    """
    if k < 2:
        raise ValueError("exponent must be >= 2")
    if not factors:
        raise ValueError("empty factor list")
    if any(f <= 0 for f in factors):
        raise ValueError("factors must be positive")
    for i, f in enumerate(factors):
        for g in factors[i + 1 :]:
            if gcd(f, g) != 1:
                raise NotPairwiseCoprimeError(f"gcd({f}, {g}) > 1")
    product = 1
    for f in factors:
        product *= f
    root = _kth_root(product, k)
    if root**k != product:
        raise NotAPowerError(f"product {product} is not a {k}-th power")
    roots = []
    for f in factors:
        r = _kth_root(f, k)
        if r**k != f:
            raise FactorNotAPowerError(f"factor {f} is not a {k}-th power")
        roots.append(r)
    return roots


def normalize(numerator: int, denominator: int) -> Fraction:
    """Reduce a raw fraction to its unique canonical representative."""
    if denominator == 0:
        raise ZeroDenominatorError("denominator must be nonzero")
    return Fraction(numerator, denominator)

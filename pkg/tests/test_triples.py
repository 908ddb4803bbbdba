"""Triple composition/decomposition: frozen examples and exhaustive properties."""

from __future__ import annotations

from math import gcd, isqrt

import pytest

from descent.errors import (
    DegenerateError,
    InvalidGeneratorError,
    NotASquareError,
    NotCoprimeError,
)
from descent.triples import (
    DiffBranch,
    GeneratorPair,
    compose_triple,
    decompose_diff,
    decompose_sum,
    divisibility_report,
)


def valid_pairs(p_max: int):
    for p in range(2, p_max + 1):
        for q in range(1, p):
            if gcd(p, q) == 1 and (p + q) % 2 == 1:
                yield p, q


def brute_decompose_sum(a: int, b: int, p_max: int):
    """Oracle: search all generator pairs for one reproducing the legs."""
    odd, even = (a, b) if a % 2 == 1 else (b, a)
    for p, q in valid_pairs(p_max):
        if p * p - q * q == odd and 2 * p * q == even:
            return p, q
    return None


def test_compose_examples():
    t = compose_triple(2, 1)
    assert (t.a, t.b, t.c) == (3, 4, 5)
    t = compose_triple(3, 2)
    assert (t.a, t.b, t.c) == (5, 12, 13)
    with pytest.raises(InvalidGeneratorError):
        compose_triple(3, 3)
    with pytest.raises(InvalidGeneratorError):
        compose_triple(5, 3)  # both odd
    with pytest.raises(InvalidGeneratorError):
        compose_triple(1, 0)


def test_decompose_sum_examples():
    assert decompose_sum(3, 4) == GeneratorPair(2, 1)
    assert decompose_sum(4, 3) == GeneratorPair(2, 1)  # order-insensitive
    assert brute_decompose_sum(21, 20, 6) == (5, 2)
    assert decompose_sum(21, 20) == GeneratorPair(5, 2)
    with pytest.raises(NotASquareError):
        decompose_sum(3, 5)  # 34 is not a square
    with pytest.raises(NotCoprimeError):
        decompose_sum(6, 8)
    with pytest.raises(DegenerateError):
        decompose_sum(0, 4)


def test_decompose_diff_examples():
    # Oracles by brute force: 5 = 2^2+1^2 with 3 = 2^2-1^2 (odd branch)
    # and 4 = 2*2*1 (even branch).
    assert brute_decompose_sum(3, 4, 3) == (2, 1)
    gen, branch = decompose_diff(5, 3)
    assert (gen, branch) == (GeneratorPair(2, 1), DiffBranch.ODD_B)
    gen, branch = decompose_diff(5, 4)
    assert (gen, branch) == (GeneratorPair(2, 1), DiffBranch.EVEN_B)
    with pytest.raises(NotASquareError):
        decompose_diff(5, 2)  # 21 is not a square
    with pytest.raises(NotCoprimeError):
        decompose_diff(9, 3)
    with pytest.raises(ValueError):
        decompose_diff(3, 5)


def test_divisibility_examples():
    reports = {
        (2, 1): ("a", "b", "c"),  # (3, 4, 5)
        (5, 2): ("a", "b", "b"),  # (21, 20, 29)
        (3, 2): ("b", "b", "a"),  # (5, 12, 13)
    }
    for (p, q), (d3, d4, d5) in reports.items():
        rep = divisibility_report(compose_triple(p, q))
        assert (rep.div3, rep.div4, rep.div5) == (d3, d4, d5)


def test_roundtrip_small():
    for p, q in valid_pairs(60):
        t = compose_triple(p, q)
        assert decompose_sum(t.a, t.b) == t.gen


def test_descent_bound():
    # Generators are strictly dominated by the legs they produce: p < a
    # and 2*p <= b, the termination measure of every descent step.
    for p, q in valid_pairs(80):
        t = compose_triple(p, q)
        assert p < t.a
        assert 2 * p <= t.b


def test_exhaustive_coprime_square_sums_decompose():
    # Every coprime leg pair with a square sum decomposes; the odd-odd
    # error never fires on such inputs (their sums are 2 mod 4).
    found = 0
    for a in range(1, 1001):
        aa = a * a
        for b in range(1, 1001):
            s = aa + b * b
            c = isqrt(s)
            if c * c != s or gcd(a, b) != 1:
                continue
            found += 1
            gen = decompose_sum(a, b)
            odd, even = (a, b) if a % 2 == 1 else (b, a)
            assert gen.p**2 - gen.q**2 == odd and 2 * gen.p * gen.q == even
    assert found == 358  # 179 primitive leg pairs below the bound, both orders


def test_both_odd_pairs_never_have_square_sums():
    # Odd squares sum to 2 mod 4, so the both-odd guard can never fire on
    # a square-sum input; two odd legs always fail the squareness check.
    for a in range(1, 201, 2):
        for b in range(1, 201, 2):
            s = a * a + b * b
            c = isqrt(s)
            assert c * c != s
    with pytest.raises(NotASquareError):
        decompose_sum(3, 5)


def test_even_larger_member_never_has_square_difference():
    # a even with coprime b gives a^2 - b^2 = 3 mod 4, never a square, so
    # EvenHypotenuseError is unreachable through decompose_diff.
    for a in range(2, 201, 2):
        for b in range(1, a):
            if gcd(a, b) != 1:
                continue
            d = a * a - b * b
            c = isqrt(d)
            assert c * c != d

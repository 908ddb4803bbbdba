"""Descent steps: frozen examples, identities, exhaustive non-reduction."""

from __future__ import annotations

import random
from math import gcd, isqrt

import pytest

from descent.engine import (
    CONDITIONS,
    CONTRADICTION,
    EXCEPTION,
    CubeCandidate,
    check_t3_t4_identities,
    descend_t1,
    descend_t2,
    descend_t8,
    merged_trace_values,
    reduce_cube_form,
    violated_condition_holds,
)
from descent.errors import (
    NotCoprimeError,
    OrderViolationError,
    ParityViolationError,
)


def brute_is_square(n: int) -> bool:
    if n < 0:
        return False
    r = isqrt(n)
    return r * r == n


def test_descend_t1_examples():
    out = descend_t1(1, 0)
    assert out.tag == EXCEPTION and out.exception_name == "vanishing term"
    assert not brute_is_square(3**4 + 2**4)  # 97
    out = descend_t1(3, 2)
    assert out.tag == CONTRADICTION
    assert out.violated == "a^4 + b^4 is a perfect square"
    with pytest.raises(NotCoprimeError):
        descend_t1(2, 2)


def test_descend_t2_examples():
    out = descend_t2(5, 5)
    assert out.tag == EXCEPTION and out.exception_name == "a = b"
    assert not brute_is_square(3**4 - 1)  # 80
    out = descend_t2(3, 1)
    assert out.tag == CONTRADICTION
    assert out.violated == "a^4 - b^4 is a perfect square"
    out = descend_t2(1, 0)
    assert out.tag == EXCEPTION and out.exception_name == "b = 0"
    with pytest.raises(OrderViolationError):
        descend_t2(2, 3)
    with pytest.raises(NotCoprimeError):
        descend_t2(9, 6)


def test_descend_t8_examples():
    out = descend_t8(1, 0)
    assert out.tag == EXCEPTION and out.exception_name == "b = 0"
    assert not brute_is_square(1 + 2)
    out = descend_t8(1, 1)
    assert out.tag == CONTRADICTION
    assert out.violated == "a^4 + 2*b^4 is a perfect square"
    assert not brute_is_square(3**4 + 2 * 2**4)  # 113
    out = descend_t8(3, 2)
    assert out.tag == CONTRADICTION


def test_identity_report_examples():
    rep = check_t3_t4_identities(9, 1)
    assert rep.doubled_sum_identity
    assert (rep.half_diff, rep.half_sum) == (4, 5)
    assert rep.half_diff_square and not rep.half_sum_square
    assert rep.halves_quartic_identity is None

    rep = check_t3_t4_identities(3, 1)
    assert rep.doubled_sum_identity
    assert (rep.half_diff, rep.half_sum) == (1, 2)
    assert rep.half_diff_square and not rep.half_sum_square

    # Both halves square: a = p^2 + q^2, b = q^2 - p^2 with (p, q) = (1, 2).
    rep = check_t3_t4_identities(5, 3)
    assert rep.half_diff_square and rep.half_sum_square
    assert rep.halves_quartic_identity is True
    assert (5 * 5 + 3 * 3) // 2 == 1**4 + 2**4

    with pytest.raises(ParityViolationError):
        check_t3_t4_identities(2, 1)
    with pytest.raises(OrderViolationError):
        check_t3_t4_identities(1, 3)
    with pytest.raises(NotCoprimeError):
        check_t3_t4_identities(9, 3)


def test_reduce_cube_form_examples():
    out = reduce_cube_form(CubeCandidate(1, 3))
    assert out.tag == EXCEPTION and out.exception_name == "cube 8 case"
    assert merged_trace_values(out)["value"] == 9

    assert 1 * 2 * (4 - 6 + 3) == 2 and not brute_is_square(2)
    out = reduce_cube_form(CubeCandidate(1, 2))
    assert out.tag == CONTRADICTION
    assert out.violated == "b*c*(c^2 - 3*b*c + 3*b^2) is a perfect square"

    out = reduce_cube_form(CubeCandidate(1, 1))
    assert out.tag == EXCEPTION and out.exception_name == "a = 0 degenerate"
    assert merged_trace_values(out)["value"] == 1

    out = reduce_cube_form(CubeCandidate(0, 1))
    assert out.tag == EXCEPTION and out.exception_name == "b = 0 degenerate"

    with pytest.raises(NotCoprimeError):
        reduce_cube_form(CubeCandidate(2, 4))
    with pytest.raises(ValueError):
        reduce_cube_form(CubeCandidate(1, 0))


def test_parametrization_identity():
    rng = random.Random(19)
    for _ in range(10_000):
        p, q = rng.randrange(0, 10**6), rng.randrange(0, 10**6)
        assert (p * p - q * q) ** 2 + (2 * p * q) ** 2 == (p * p + q * q) ** 2


def test_shifted_substitution_identity():
    # t = p - q, u = p - 3*q turns (p^2 + 3*q^2)*(p - q)*(p - 3*q) into
    # t*u*(3*t^2 - 3*t*u + u^2) exactly.
    rng = random.Random(23)
    for _ in range(10_000):
        p, q = rng.randrange(0, 10**6), rng.randrange(0, 10**6)
        t, u = p - q, p - 3 * q
        assert (p * p + 3 * q * q) * (p - q) * (p - 3 * q) == t * u * (3 * t * t - 3 * t * u + u * u)


def test_doubling_parametrization_identity():
    # p = a^2 + m*b^2, q = a^2 - m*b^2 gives p^2 + q^2 = 2*a^4 + 2*m^2*b^4.
    rng = random.Random(29)
    for _ in range(10_000):
        a, b, m = rng.randrange(0, 10**4), rng.randrange(0, 10**4), rng.randrange(0, 10**4)
        p, q = a * a + m * b * b, a * a - m * b * b
        assert p * p + q * q == 2 * a**4 + 2 * m * m * b**4


def test_exhaustive_no_reduction_small():
    for a in range(0, 81):
        for b in range(0, 81):
            if gcd(a, b) != 1:
                continue
            out = descend_t1(a, b)
            assert out.tag != "reduced"
            if out.tag == CONTRADICTION:
                assert violated_condition_holds(out) is False
            out = descend_t8(a, b)
            assert out.tag != "reduced"
            if out.tag == CONTRADICTION:
                assert violated_condition_holds(out) is False
            if a >= b:
                out = descend_t2(a, b)
                assert out.tag != "reduced"
                if out.tag == CONTRADICTION:
                    assert violated_condition_holds(out) is False


def test_cube_form_no_reduction_small():
    for b in range(0, 81):
        for c in range(1, 81):
            if gcd(b, c) != 1:
                continue
            out = reduce_cube_form(CubeCandidate(b, c))
            assert out.tag != "reduced"
            if out.tag == CONTRADICTION:
                assert violated_condition_holds(out) is False
            else:
                assert out.exception_name in (
                    "cube 8 case", "a = 0 degenerate", "b = 0 degenerate"
                )


def test_exception_names_match_theorem_statements():
    # Zero legs are only coprime next to 1, so those exceptions live there.
    assert descend_t1(1, 0).exception_name == "vanishing term"
    assert descend_t1(0, 1).exception_name == "vanishing term"
    assert descend_t2(1, 0).exception_name == "b = 0"
    assert descend_t8(1, 0).exception_name == "b = 0"
    for a in range(1, 40):
        assert descend_t2(a, a).exception_name == "a = b"


def test_all_conditions_evaluable():
    # Every registered condition evaluates on a synthetic full binding.
    values = {k: 3 for k in ("a", "b", "c", "p", "q", "m", "n", "k", "d", "e", "o", "r", "t", "u")}
    for name, pred in CONDITIONS.items():
        assert pred(values) in (True, False), name


def test_trace_records_inputs():
    out = descend_t1(3, 2)
    assert out.trace[0] == ("input", {"a": 3, "b": 2})
    merged = merged_trace_values(out)
    assert merged["a"] == 3 and merged["b"] == 2

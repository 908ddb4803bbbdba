"""Executable infinite-descent steps.

Each operation takes a candidate solution for one of the non-square
claims, replays the corresponding reduction with exact arithmetic, and
returns one of three tagged outcomes:

  Reduced        a strictly smaller candidate of the same shape (the
                 descent map itself; mathematically unreachable on real
                 inputs, but implemented and assertion-checked so every
                 intermediate identity is encoded and testable),
  Exception      one of the documented degenerate cases,
  Contradiction  the first condition, in proof order, that fails on the
                 bound values; the named condition re-evaluates to False
                 on the recorded trace.

The trace records every (step label, bound symbols) pair, which makes a
Contradiction a self-contained certificate that the input was not a
counterexample.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

from .arith import coprime_power_split, is_square
from .errors import (
    FactorNotAPowerError,
    NotCoprimeError,
    OrderViolationError,
    ParityViolationError,
)
from .triples import DiffBranch, decompose_diff, decompose_sum

__all__ = [
    "REDUCED",
    "EXCEPTION",
    "CONTRADICTION",
    "DescentOutcome",
    "CubeCandidate",
    "IdentityReport",
    "descend_t1",
    "descend_t2",
    "descend_t8",
    "check_t3_t4_identities",
    "reduce_cube_form",
    "CONDITIONS",
    "merged_trace_values",
    "violated_condition_holds",
]

REDUCED = "reduced"
EXCEPTION = "exception"
CONTRADICTION = "contradiction"

TraceStep = tuple[str, dict[str, int]]


@dataclass(frozen=True)
class DescentOutcome:
    """Tagged result of one descent step with its evidence trace."""

    tag: str
    reduced: tuple[int, int] | None = None
    exception_name: str | None = None
    violated: str | None = None
    trace: tuple[TraceStep, ...] = ()

    @property
    def is_reduced(self) -> bool:
        return self.tag == REDUCED


@dataclass(frozen=True)
class CubeCandidate:
    """Substituted pair (b, c) with a = c - b for the cube-plus-one form."""

    b: int
    c: int

    def __post_init__(self) -> None:
        if self.c <= 0 or self.b < 0:
            raise ValueError(f"need c > 0 and b >= 0, got ({self.b}, {self.c})")
        if gcd(self.b, self.c) != 1:
            raise NotCoprimeError(f"gcd({self.b}, {self.c}) > 1")


class _Trace:
    def __init__(self) -> None:
        self.steps: list[TraceStep] = []

    def bind(self, label: str, **values: int) -> None:
        self.steps.append((label, dict(values)))

    def reduced(self, x: int, y: int, cap: int) -> DescentOutcome:
        assert max(x, y) < cap, "descent must shrink the candidate"
        return DescentOutcome(REDUCED, reduced=(x, y), trace=tuple(self.steps))

    def exception(self, name: str) -> DescentOutcome:
        return DescentOutcome(EXCEPTION, exception_name=name, trace=tuple(self.steps))

    def contradiction(self, violated: str) -> DescentOutcome:
        assert violated in CONDITIONS, f"unregistered condition {violated!r}"
        return DescentOutcome(CONTRADICTION, violated=violated, trace=tuple(self.steps))


def descend_t1(a: int, b: int) -> DescentOutcome:
    """One descent step for: a^4 + b^4 is never a square when a*b > 0.

    Requires gcd(a, b) = 1. A hypothetical square sum of two positive
    fourth powers is mapped to a strictly smaller pair with the same
    property; real inputs end in the vanishing-term exception or a
    contradiction certificate.
    """
    if gcd(a, b) != 1:
        raise NotCoprimeError(f"gcd({a}, {b}) > 1")
    t = _Trace()
    t.bind("input", a=a, b=b)
    if a * b == 0:
        return t.exception("vanishing term")
    if not is_square(a**4 + b**4):
        return t.contradiction("a^4 + b^4 is a perfect square")
    # From here on every step is forced; the branch is live only for the
    # hypothetical counterexample the theorem rules out.
    odd, even = (a, b) if a % 2 == 1 else (b, a)
    gen = decompose_sum(odd * odd, even * even)
    p, q = gen.p, gen.q
    t.bind("generator", p=p, q=q)
    if p % 2 == 0:
        return t.contradiction("p is odd")
    try:
        s, u = coprime_power_split([p, 2 * q], 2)
    except FactorNotAPowerError:
        return t.contradiction("p and 2*q are both perfect squares")
    t.bind("square_split", s=s, u=u)
    inner, branch = decompose_diff(p, q)
    m, n = inner.p, inner.q
    t.bind("inner_generator", m=m, n=n)
    if branch is not DiffBranch.EVEN_B:
        return t.contradiction("q is even")
    try:
        x, y = coprime_power_split([m, n], 2)
    except FactorNotAPowerError:
        return t.contradiction("m and n are both perfect squares")
    t.bind("roots", x=x, y=y)
    assert p == m * m + n * n == x**4 + y**4 and p == s * s
    assert is_square(x**4 + y**4)
    return t.reduced(x, y, max(a, b))


def descend_t2(a: int, b: int) -> DescentOutcome:
    """One descent step for: a^4 - b^4 is never a square unless b = 0 or a = b.

    Requires gcd(a, b) = 1 (checked after the a = b exception, which is
    legitimate for any a) and a > b otherwise.
    """
    t = _Trace()
    t.bind("input", a=a, b=b)
    if a == b:
        return t.exception("a = b")
    if gcd(a, b) != 1:
        raise NotCoprimeError(f"gcd({a}, {b}) > 1")
    if b == 0:
        return t.exception("b = 0")
    if a < b:
        raise OrderViolationError(f"need a > b, got ({a}, {b})")
    if not is_square(a**4 - b**4):
        return t.contradiction("a^4 - b^4 is a perfect square")
    if a % 2 == 0:
        return t.contradiction("a is odd")
    gen, branch = decompose_diff(a * a, b * b)
    p, q = gen.p, gen.q
    t.bind("generator", p=p, q=q)
    if branch is DiffBranch.ODD_B:
        # Odd smaller square: a^2*b^2 = p^4 - q^4, so (p, q) is a smaller
        # candidate of the same shape with its smaller member even.
        assert is_square(p**4 - q**4)
        return t.reduced(p, q, max(a, b))
    # Even smaller square: b^2 = 2*p*q and a^2 = p^2 + q^2.
    e, o = (p, q) if p % 2 == 0 else (q, p)
    t.bind("parity_oriented", e=e, o=o)
    try:
        g, v = coprime_power_split([2 * e, o], 2)
    except FactorNotAPowerError:
        return t.contradiction("2*e and o are both perfect squares")
    t.bind("leg_split", g=g, v=v)
    inner = decompose_sum(p, q)
    m, n = inner.p, inner.q
    t.bind("inner_generator", m=m, n=n)
    try:
        x, y = coprime_power_split([m, n], 2)
    except FactorNotAPowerError:
        return t.contradiction("m and n are both perfect squares")
    t.bind("roots", x=x, y=y)
    assert o == x**4 - y**4 == v * v
    return t.reduced(x, y, max(a, b))


def descend_t8(a: int, b: int) -> DescentOutcome:
    """One descent step for: a^4 + 2*b^4 is never a square unless b = 0.

    Requires gcd(a, b) = 1. The replay reconstructs the rational root
    slope with exact fractions and follows the parity case analysis down
    to a smaller pair (x, y) with x^4 + 2*y^4 square.
    """
    if gcd(a, b) != 1:
        raise NotCoprimeError(f"gcd({a}, {b}) > 1")
    t = _Trace()
    t.bind("input", a=a, b=b)
    if b == 0:
        return t.exception("b = 0")
    value = a**4 + 2 * b**4
    if not is_square(value):
        return t.contradiction("a^4 + 2*b^4 is a perfect square")
    w = isqrt(value)
    ratio = Fraction(w - a * a, b * b)
    m, n = ratio.numerator, ratio.denominator
    t.bind("root_ratio", w=w, m=m, n=n)
    if m % 2 == 1:
        # b^2 = 2*m*n and a^2 = 2*n^2 - m^2 exactly; both parities of n
        # contradict a residue.
        if n % 2 == 1:
            return t.contradiction("2*m*n is congruent to a square mod 4")
        return t.contradiction("a^2 + m^2 is divisible by 8")
    k = m // 2
    t.bind("halved", k=k)
    if k % 2 == 1:
        return t.contradiction("2*k*n is congruent to a square mod 4")
    try:
        g, c = coprime_power_split([2 * k, n], 2)
    except FactorNotAPowerError:
        return t.contradiction("2*k and n are both perfect squares")
    d = g // 2
    t.bind("split", c=c, d=d, g=g)
    assert a * a == c**4 - 8 * d**4
    sub = Fraction(c * c - a, 2 * d * d)
    p, q = sub.numerator, sub.denominator
    t.bind("sub_ratio", p=p, q=q)
    if p % 2 == 1:
        if d * d != p * q:
            return t.contradiction("d^2 = p*q")
        try:
            x, y = coprime_power_split([p, q], 2)
        except FactorNotAPowerError:
            return t.contradiction("p and q are both perfect squares")
        t.bind("roots", x=x, y=y)
        assert c * c == x**4 + 2 * y**4
        return t.reduced(x, y, max(a, b))
    r = p // 2
    t.bind("sub_halved", r=r)
    if d * d != q * r:
        return t.contradiction("d^2 = q*r")
    try:
        x, y = coprime_power_split([q, r], 2)
    except FactorNotAPowerError:
        return t.contradiction("q and r are both perfect squares")
    t.bind("roots", x=x, y=y)
    assert c * c == x**4 + 2 * y**4
    return t.reduced(x, y, max(a, b))


@dataclass(frozen=True)
class IdentityReport:
    """Exact identity checks for the doubled-quartic reductions."""

    a: int
    b: int
    doubled_sum_identity: bool  # 2a^4+2b^4 == (a^2+b^2)^2 + (a^2-b^2)^2
    half_diff: int  # (a-b)/2
    half_sum: int  # (a+b)/2
    half_diff_square: bool
    half_sum_square: bool
    halves_quartic_identity: bool | None  # (a^2+b^2)/2 == p^4+q^4 when both halves square


def check_t3_t4_identities(a: int, b: int) -> IdentityReport:
    """Verify the doubled-quartic identities for one odd coprime pair a > b."""
    if a % 2 == 0 or b % 2 == 0:
        raise ParityViolationError(f"need both odd, got ({a}, {b})")
    if gcd(a, b) != 1:
        raise NotCoprimeError(f"gcd({a}, {b}) > 1")
    if a <= b:
        raise OrderViolationError(f"need a > b, got ({a}, {b})")
    doubled = 2 * a**4 + 2 * b**4
    decomposed = (a * a + b * b) ** 2 + (a * a - b * b) ** 2
    half_diff = (a - b) // 2
    half_sum = (a + b) // 2
    p, q = isqrt(half_diff), isqrt(half_sum)
    hd_sq, hs_sq = p * p == half_diff, q * q == half_sum
    quartic = None
    if hd_sq and hs_sq:
        quartic = (a * a + b * b) // 2 == p**4 + q**4
    return IdentityReport(
        a=a, b=b,
        doubled_sum_identity=doubled == decomposed,
        half_diff=half_diff, half_sum=half_sum,
        half_diff_square=hd_sq, half_sum_square=hs_sq,
        halves_quartic_identity=quartic,
    )


def _cube_shape(b: int, c: int) -> int:
    return b * c * (c * c - 3 * b * c + 3 * b * b)


def reduce_cube_form(cand: CubeCandidate) -> DescentOutcome:
    """One height-reduction step for: b*c*(c^2 - 3*b*c + 3*b^2) is never a
    square except the documented degenerate pairs.

    The pair encodes the cube candidate a/b with a = c - b. The c = 3*b
    exception is the cube 8 (a/b = 2); c = b is the vanishing cube; all
    rational root slopes are replayed with exact fractions.
    """
    b, c = cand.b, cand.c
    t = _Trace()
    value = _cube_shape(b, c)
    t.bind("input", b=b, c=c, value=value)
    if c == 3 * b:
        assert value == (3 * b * b) ** 2
        return t.exception("cube 8 case")
    if c == b:
        assert value == b**4
        return t.exception("a = 0 degenerate")
    if b == 0:
        assert value == 0
        return t.exception("b = 0 degenerate")
    if not is_square(value):
        return t.contradiction("b*c*(c^2 - 3*b*c + 3*b^2) is a perfect square")
    # Hypothetical square: replay the three-branch height reduction.
    if c % 3 == 0:
        d = c // 3
        t.bind("third", d=d)
        assert value == 9 * _cube_shape(d, b)
        assert is_square(_cube_shape(d, b))
        return t.reduced(d, b, max(b, c))
    trinomial = c * c - 3 * b * c + 3 * b * b
    try:
        coprime_power_split([b, c, trinomial], 2)
    except FactorNotAPowerError:
        return t.contradiction("b, c and c^2 - 3*b*c + 3*b^2 are all perfect squares")
    w = isqrt(trinomial)
    ratio = Fraction(w + c, b)
    m, n = ratio.numerator, ratio.denominator
    t.bind("slope", w=w, m=m, n=n)
    if m % 3 != 0:
        if m * m - 3 * n * n != c:
            return t.contradiction("c is congruent to a square mod 3")
        s = isqrt(c)
        sub = Fraction(m - s, n)
        p, q = sub.numerator, sub.denominator
        t.bind("sub_slope", s=s, p=p, q=q)
        if p <= 0:
            return t.contradiction("reduced slope is positive")
        assert 2 * m * p * q == n * (p * p + 3 * q * q)
        reduced_value = _cube_shape(q, p)
        if b * p * q != n * n * (p * p - 3 * p * q + 3 * q * q):
            return t.contradiction("b*p*q = n^2*(p^2 - 3*p*q + 3*q^2)")
        assert is_square(reduced_value)
        return t.reduced(q, p, max(b, c))
    k3 = m // 3
    t.bind("slope_third", k=k3)
    if n * n - 3 * k3 * k3 != c:
        return t.contradiction("c is congruent to a square mod 3")
    s = isqrt(c)
    sub = Fraction(n - s, k3)
    p, q = sub.numerator, sub.denominator
    t.bind("sub_slope", s=s, p=p, q=q)
    u, v = p - q, p - 3 * q
    t.bind("shifted", t=u, u=v)
    if u <= 0 or v <= 0:
        return t.contradiction("reduced cube candidate is positive")
    assert (p * p + 3 * q * q) * (p - q) * (p - 3 * q) == _cube_shape(u, v)
    assert is_square(_cube_shape(u, v))
    return t.reduced(u, v, max(b, c))


def _sq(n: int) -> bool:
    return is_square(n)


# Every condition a Contradiction can name, as a positive predicate over
# the merged trace bindings; the predicate must evaluate False there.
CONDITIONS = {
    "a^4 + b^4 is a perfect square": lambda v: _sq(v["a"] ** 4 + v["b"] ** 4),
    "a^4 - b^4 is a perfect square": lambda v: _sq(v["a"] ** 4 - v["b"] ** 4),
    "a^4 + 2*b^4 is a perfect square": lambda v: _sq(v["a"] ** 4 + 2 * v["b"] ** 4),
    "p is odd": lambda v: v["p"] % 2 == 1,
    "a is odd": lambda v: v["a"] % 2 == 1,
    "q is even": lambda v: v["q"] % 2 == 0,
    "p and 2*q are both perfect squares": lambda v: _sq(v["p"]) and _sq(2 * v["q"]),
    "m and n are both perfect squares": lambda v: _sq(v["m"]) and _sq(v["n"]),
    "2*e and o are both perfect squares": lambda v: _sq(2 * v["e"]) and _sq(v["o"]),
    "2*m*n is congruent to a square mod 4": lambda v: (2 * v["m"] * v["n"]) % 4 in (0, 1),
    "a^2 + m^2 is divisible by 8": lambda v: (v["a"] ** 2 + v["m"] ** 2) % 8 == 0,
    "2*k*n is congruent to a square mod 4": lambda v: (2 * v["k"] * v["n"]) % 4 in (0, 1),
    "2*k and n are both perfect squares": lambda v: _sq(2 * v["k"]) and _sq(v["n"]),
    "d^2 = p*q": lambda v: v["d"] ** 2 == v["p"] * v["q"],
    "d^2 = q*r": lambda v: v["d"] ** 2 == v["q"] * v["r"],
    "p and q are both perfect squares": lambda v: _sq(v["p"]) and _sq(v["q"]),
    "q and r are both perfect squares": lambda v: _sq(v["q"]) and _sq(v["r"]),
    "b*c*(c^2 - 3*b*c + 3*b^2) is a perfect square": lambda v: _sq(
        v["b"] * v["c"] * (v["c"] ** 2 - 3 * v["b"] * v["c"] + 3 * v["b"] ** 2)
    ),
    "b, c and c^2 - 3*b*c + 3*b^2 are all perfect squares": lambda v: (
        _sq(v["b"]) and _sq(v["c"])
        and _sq(v["c"] ** 2 - 3 * v["b"] * v["c"] + 3 * v["b"] ** 2)
    ),
    "c is congruent to a square mod 3": lambda v: v["c"] % 3 in (0, 1),
    "reduced slope is positive": lambda v: v["p"] > 0,
    "reduced cube candidate is positive": lambda v: v["t"] > 0 and v["u"] > 0,
    "b*p*q = n^2*(p^2 - 3*p*q + 3*q^2)": lambda v: (
        v["b"] * v["p"] * v["q"]
        == v["n"] ** 2 * (v["p"] ** 2 - 3 * v["p"] * v["q"] + 3 * v["q"] ** 2)
    ),
}


def merged_trace_values(outcome: DescentOutcome) -> dict[str, int]:
    """Flatten the trace bindings in order; later steps shadow earlier ones."""
    merged: dict[str, int] = {}
    for _, values in outcome.trace:
        merged.update(values)
    return merged


def violated_condition_holds(outcome: DescentOutcome) -> bool:
    """Re-evaluate a Contradiction's named condition on its own trace."""
    if outcome.tag != CONTRADICTION:
        raise ValueError("outcome is not a contradiction")
    return CONDITIONS[outcome.violated](merged_trace_values(outcome))

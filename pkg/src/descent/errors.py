"""Exception types shared across the package."""

from __future__ import annotations


class DescentError(Exception):
    """Base class for all domain errors raised by this package."""


class NotPairwiseCoprimeError(DescentError):
    """Two factors of a supposed coprime factorization share a divisor > 1."""


class NotAPowerError(DescentError):
    """The product of the factors is not a perfect k-th power."""


class FactorNotAPowerError(DescentError):
    """A pairwise-coprime factor of a perfect power is itself not a power.

    Unreachable when the preconditions of :func:`coprime_power_split` hold;
    its absence on constructed inputs is itself a tested invariant.
    """


class ZeroDenominatorError(DescentError):
    """A fraction was given a zero denominator."""


class InvalidGeneratorError(DescentError):
    """A generator pair violates p > q >= 1, coprimality, or opposite parity."""


class NotCoprimeError(DescentError):
    """Inputs required to be coprime are not."""


class NotASquareError(DescentError):
    """A value required to be a perfect square is not."""


class BothOddError(DescentError):
    """Both legs are odd; the sum of two odd squares is never a square."""


class DegenerateError(DescentError):
    """A degenerate input (a zero leg) where a primitive triple is required."""


class EvenHypotenuseError(DescentError):
    """The larger member of a square difference is even.

    Cannot happen when the difference of coprime squares is itself a square;
    unreachability on valid inputs is tested.
    """


class ArityMismatchError(DescentError):
    """A form was evaluated with the wrong parameter names or count."""


class UnsupportedExponentError(DescentError):
    """Family derivation requested for an exponent outside the verified base set."""


class OrderViolationError(DescentError):
    """Arguments violate a required strict ordering (a > b)."""


class ParityViolationError(DescentError):
    """Arguments violate a required parity (both must be odd)."""


class InvariantViolationError(DescentError):
    """A structural invariant that should be unreachable was violated."""

"""Scalar domains used throughout: exact rationals and complex floats.

All exact computations run over ``fractions.Fraction``; float computations use
builtin ``complex``.  The two modes are never mixed implicitly.
"""

from __future__ import annotations

import random
from fractions import Fraction

Rational = Fraction
Scalar = object  # Fraction | int | float | complex | Dual


class FlagMirrorError(Exception):
    """Base class for errors raised by this package."""


class ConfigurationError(FlagMirrorError):
    """Inconsistent inputs (wrong rep for a transform, bad suite config, ...)."""


class DomainError(FlagMirrorError):
    """Input outside an operation's domain (zero torus coordinate, rank < 1, ...)."""


class SingularInputError(DomainError):
    """A denominator vanished at the given point."""

    def __init__(self, message: str, subexpression: str | None = None):
        super().__init__(message)
        self.subexpression = subexpression


class NotInOpenSetError(FlagMirrorError):
    """Membership failure: the element is not in the open set being factorized.

    This is a meaningful predicate (the complement of the open stratum), not a
    malfunction.
    """


class ValidationError(FlagMirrorError):
    """A representation or transform failed one of its defining checks."""

    def __init__(self, message: str, relation: str | None = None):
        super().__init__(message)
        self.relation = relation


class InvariantError(FlagMirrorError):
    """An internal invariant was violated; indicates a bug, mapped to exit 3."""


class ResourceError(FlagMirrorError):
    """An enumeration guard was exceeded."""


def is_exact(x) -> bool:
    return isinstance(x, (int, Fraction))


def exact_zero(x) -> bool:
    """Exact equality with zero; never use on floats."""
    return x == 0


def magnitude(x) -> float:
    """|x| as a float, for residual reporting in either arithmetic mode."""
    if isinstance(x, Fraction):
        return abs(float(x))
    return abs(x)


def random_positive_rational(rng: random.Random, bits: int = 60) -> Fraction:
    """A random positive rational with numerator/denominator up to ``bits`` bits.

    Used for Schwartz-Zippel style exact identity testing; at 60 bits the
    probability of hitting a zero of any fixed nonzero polynomial of moderate
    degree is negligible.
    """
    num = rng.getrandbits(bits) + 1
    den = rng.getrandbits(bits) + 1
    return Fraction(num, den)


def random_rational(rng: random.Random, bits: int = 30) -> Fraction:
    """A random signed rational (both signs, may be zero in the numerator)."""
    num = rng.getrandbits(bits) - (1 << (bits - 1))
    den = rng.getrandbits(bits) + 1
    return Fraction(num, den)


def random_small_rational(rng: random.Random, denominator_max: int = 16,
                          numerator_max: int = 16) -> Fraction:
    """A small positive rational, convenient for readable chart samples."""
    return Fraction(rng.randint(1, numerator_max), rng.randint(1, denominator_max))

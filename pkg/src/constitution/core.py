"""Approval profiles, the canonical delta grid and supermajority rules.

A supermajority rule ``d^delta`` accepts a proposal iff the approving
fraction strictly exceeds ``delta``.  With ``n`` agents only a handful of
thresholds behave differently, so a rule is stored by its minimal
acceptance count ``m`` and every delta in ``[1/2, 1)`` is snapped onto the
finite grid of canonical representatives.

All arithmetic is exact; deltas are :class:`fractions.Fraction` values.
"""

from __future__ import annotations

import enum
import functools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

HALF = Fraction(1, 2)

Profile = tuple  # tuple of 0/1 ints, one per agent
RationalLike = Union[Fraction, int, str]


class ConstitutionError(Exception):
    """Base class for errors raised by this package."""


class DimensionError(ConstitutionError, ValueError):
    """Sizes of rules, profiles or ideal points disagree."""


class DomainError(ConstitutionError, ValueError):
    """A value lies outside the admissible range."""


class DegenerateAmendmentError(DomainError):
    """An amendment (or comparison) of a value with itself was requested."""


class CapacityError(ConstitutionError, ValueError):
    """The requested enumeration exceeds its size bound."""


class CycleError(ConstitutionError, RuntimeError):
    """Amendment iteration exceeded its step cap."""


class ParseError(ConstitutionError, ValueError):
    """Input text could not be parsed."""


class Decision(enum.IntEnum):
    REJECT = 0
    ACCEPT = 1

    def __str__(self):
        return self.name.lower()


# -- rationals ---------------------------------------------------------------


def to_fraction(value: RationalLike) -> Fraction:
    """Convert ``"p/q"``, an exact decimal string, an int or a Fraction.

    Floats are refused: ``0.1`` has no exact binary value and silently
    accepting it would smuggle rounding into threshold comparisons.
    """
    if isinstance(value, bool):
        raise ParseError(f"not a rational: {value!r}")
    if isinstance(value, (Fraction, int)):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if "e" in text.lower() or not text:
            raise ParseError(f"not a rational: {value!r}")
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"not a rational: {value!r}") from exc
    raise ParseError(f"not a rational: {value!r}")


def format_fraction(value: Fraction) -> str:
    """Render ``value`` as ``"p/q"`` in lowest terms, or ``"p"`` when q = 1."""
    return str(Fraction(value))


# -- profiles ----------------------------------------------------------------


def make_profile(bits: Sequence) -> Profile:
    """Normalise a sequence of booleans (or 0/1) into a profile tuple."""
    out = []
    for b in bits:
        if b in (0, 1):  # also admits True/False
            out.append(int(b))
        else:
            raise DomainError(f"profile entries must be 0 or 1, got {b!r}")
    if not out:
        raise DimensionError("a profile needs at least one agent")
    return tuple(out)


def parse_profile(text: str) -> Profile:
    """Parse a ``'0'``/``'1'`` string such as ``"11010"``."""
    text = text.strip()
    if not text or set(text) - {"0", "1"}:
        raise ParseError(f"profile must be a non-empty 0/1 string, got {text!r}")
    return tuple(int(c) for c in text)


def format_profile(profile: Sequence) -> str:
    return "".join("1" if b else "0" for b in profile)


def approvals(profile: Sequence) -> int:
    """Number of approving agents in ``profile``."""
    return sum(map(bool, profile))


# -- rules -------------------------------------------------------------------


def majority_count(n: int) -> int:
    """Smallest count that is a strict majority of ``n``."""
    return n // 2 + 1


@dataclass(frozen=True, order=True)
class Rule:
    """A supermajority rule over ``n`` agents accepting iff approvals >= ``m``."""

    n: int
    m: int

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise DomainError(f"community size must be a positive integer, got {self.n!r}")
        if not majority_count(self.n) <= self.m <= self.n:
            raise DomainError(
                f"acceptance count m={self.m} outside [{majority_count(self.n)}, {self.n}] for n={self.n}"
            )

    @property
    def delta(self) -> Fraction:
        return canonical_delta(self)

    @classmethod
    def from_delta(cls, n: int, x: RationalLike) -> "Rule":
        return snap_delta(n, x)

    def __str__(self):
        return f"d^{format_fraction(self.delta)} (n={self.n}, m={self.m})"


def decide(rule: Rule, profile: Sequence) -> Decision:
    """Accept iff the profile carries at least ``rule.m`` approvals."""
    if len(profile) != rule.n:
        raise DimensionError(f"profile has {len(profile)} votes, rule expects {rule.n}")
    return Decision.ACCEPT if approvals(profile) >= rule.m else Decision.REJECT


def canonical_delta(rule: Rule) -> Fraction:
    return _canonical(rule.n, rule.m)


@functools.lru_cache(maxsize=4096)
def _canonical(n: int, m: int) -> Fraction:
    return max(HALF, Fraction(m - 1, n))


def delta_grid(n: int) -> list[Fraction]:
    """Canonical deltas of all behaviourally distinct rules for ``n`` agents.

    >>> [str(x) for x in delta_grid(5)]
    ['1/2', '3/5', '4/5']
    """
    return list(grid_tuple(n))


@functools.lru_cache(maxsize=256)
def grid_tuple(n: int) -> tuple:
    if not isinstance(n, int) or n < 1:
        raise DomainError(f"community size must be a positive integer, got {n!r}")
    return tuple(canonical_delta(Rule(n, m)) for m in range(majority_count(n), n + 1))


@functools.lru_cache(maxsize=256)
def grid_set(n: int) -> frozenset:
    return frozenset(grid_tuple(n))


@functools.lru_cache(maxsize=256)
def grid_levels(n: int) -> dict:
    """Map each grid delta to its acceptance count ``m``.

    Canonical deltas increase strictly with ``m``, so ``m`` can stand in for
    delta in every order comparison.
    """
    return {x: m for m, x in enumerate(grid_tuple(n), start=majority_count(n))}


def snap_delta(n: int, x: RationalLike) -> Rule:
    """The rule whose behaviour matches "accept iff approvals > x*n"."""
    x = check_delta(x)
    return Rule(n, math.floor(x * n) + 1)


def check_delta(x: RationalLike) -> Fraction:
    """Return ``x`` as a Fraction, raising :class:`DomainError` outside [1/2, 1)."""
    x = to_fraction(x)
    if not HALF <= x < 1:
        raise DomainError(f"delta must lie in [1/2, 1), got {format_fraction(x)}")
    return x

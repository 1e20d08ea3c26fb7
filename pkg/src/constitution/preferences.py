"""Single-peaked preferences over supermajority thresholds.

Each agent has an ideal threshold on the delta grid.  Between two
thresholds on the same side of the ideal the closer one is preferred; the
ideal itself beats everything; thresholds on opposite sides of the ideal
are incomparable.
"""

from __future__ import annotations

import bisect
import enum
import warnings
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .core import (
    DegenerateAmendmentError,
    DimensionError,
    DomainError,
    ParseError,
    check_delta,
    grid_levels,
    grid_tuple,
    format_fraction,
    majority_count,
    snap_delta,
    to_fraction,
)


class SnapWarning(UserWarning):
    """Some ideal points were moved onto the delta grid."""


class Preference(enum.Enum):
    FIRST = "first"
    SECOND = "second"
    INCOMPARABLE = "incomparable"


@dataclass(frozen=True)
class IdealProfile:
    """Ideal thresholds of ``n`` agents, each a member of ``delta_grid(n)``.

    Build instances through :meth:`from_values`, which snaps off-grid
    values down to the nearest grid point and records who was moved.
    """

    ideals: tuple
    snapped: tuple = field(default=(), compare=False)
    levels: tuple = field(default=(), init=False, repr=False, compare=False)
    ranked_levels: tuple = field(default=(), init=False, repr=False, compare=False)

    def __post_init__(self):
        if not self.ideals:
            raise DimensionError("an ideal profile needs at least one agent")
        grid = grid_levels(len(self.ideals))
        off = [i for i, x in enumerate(self.ideals) if x not in grid]
        if off:
            raise DomainError(f"ideal points of agents {off} are not on the delta grid; use from_values")
        object.__setattr__(self, "levels", tuple(grid[x] for x in self.ideals))
        object.__setattr__(self, "ranked_levels", tuple(sorted(self.levels)))

    @property
    def n(self) -> int:
        return len(self.ideals)

    def __len__(self):
        return len(self.ideals)

    def __iter__(self):
        return iter(self.ideals)

    @classmethod
    def from_values(cls, values: Iterable, n: int | None = None, warn: bool = True) -> "IdealProfile":
        """Snap rational (or ``"p/q"``/decimal string) ideal points onto the grid."""
        raw = [check_delta(to_fraction(v)) for v in values]
        if n is not None and n != len(raw):
            raise DimensionError(f"declared n={n} but {len(raw)} ideal points given")
        if not raw:
            raise DimensionError("an ideal profile needs at least one agent")
        size = len(raw)
        snapped_values = tuple(snap_delta(size, x).delta for x in raw)
        moved = tuple(i for i, (a, b) in enumerate(zip(raw, snapped_values)) if a != b)
        if moved and warn:
            warnings.warn(
                "snapped ideal points of agents "
                + ", ".join(f"{i} ({format_fraction(raw[i])} -> {format_fraction(snapped_values[i])})" for i in moved),
                SnapWarning,
                stacklevel=2,
            )
        return cls(snapped_values, moved)

    @classmethod
    def from_levels(cls, n: int, levels: Sequence[int]) -> "IdealProfile":
        """Build from grid levels (acceptance counts ``m``) without hashing rationals."""
        levels = tuple(levels)
        if len(levels) != n:
            raise DimensionError(f"declared n={n} but {len(levels)} levels given")
        lo = majority_count(n)
        if any(not (isinstance(m, int) and lo <= m <= n) for m in levels):
            raise DomainError(f"levels for n={n} must be integers in [{lo}, {n}]")
        grid = grid_tuple(n)
        profile = object.__new__(cls)
        for name, value in (
            ("ideals", tuple(grid[m - lo] for m in levels)),
            ("snapped", ()),
            ("levels", levels),
            ("ranked_levels", tuple(sorted(levels))),
        ):
            object.__setattr__(profile, name, value)
        return profile

    def to_dict(self) -> dict:
        return {"n": self.n, "ideals": [format_fraction(x) for x in self.ideals]}

    @classmethod
    def from_dict(cls, doc: dict, warn: bool = True) -> "IdealProfile":
        try:
            values = doc["ideals"]
        except (KeyError, TypeError) as exc:
            raise ParseError("ideal profile document needs an 'ideals' list") from exc
        if not isinstance(values, list):
            raise ParseError("'ideals' must be a list")
        return cls.from_values(values, n=doc.get("n"), warn=warn)


def _prefers(ideal, p, q) -> bool:
    """Whether an agent peaked at ``ideal`` strictly prefers ``p`` to ``q``."""
    if p == q:
        return False
    if p == ideal:
        return True
    return ideal < p < q or ideal > p > q


def compare(ideal, p, p_prime) -> Preference:
    """How an agent with the given ideal point ranks ``p`` against ``p_prime``.

    >>> compare(Fraction(4, 5), Fraction(3, 5), Fraction(1, 2))
    <Preference.FIRST: 'first'>
    """
    ideal, p, p_prime = check_delta(ideal), check_delta(p), check_delta(p_prime)
    if _prefers(ideal, p, p_prime):
        return Preference.FIRST
    if _prefers(ideal, p_prime, p):
        return Preference.SECOND
    return Preference.INCOMPARABLE


def _level(n: int, value) -> int:
    try:
        return grid_levels(n)[value]
    except (KeyError, TypeError):
        value = check_delta(value)
        if value in grid_levels(n):
            return grid_levels(n)[value]
        raise DomainError(f"{format_fraction(value)} is not on the delta grid for n={n}") from None


def amendment_ballot(ideals: IdealProfile, delta, delta_prime) -> tuple:
    """Approval profile on the proposal to replace ``delta`` by ``delta_prime``.

    Agent ``i`` approves iff ``delta_prime`` lies between its ideal point
    (inclusive) and ``delta`` (exclusive).
    """
    old, new = _level(ideals.n, delta), _level(ideals.n, delta_prime)
    if old == new:
        raise DegenerateAmendmentError(f"amending {format_fraction(delta)} to itself")
    return ballot_from_levels(ideals.levels, old, new)


def ballot_from_levels(levels: Sequence[int], old: int, new: int) -> tuple:
    """:func:`amendment_ballot` with every threshold given as its grid level."""
    if new > old:
        return tuple([1 if x >= new else 0 for x in levels])
    if new < old:
        return tuple([1 if x <= new else 0 for x in levels])
    return (0,) * len(levels)


def supporters(ideals: Sequence, p, p_prime) -> int:
    """Number of agents strictly preferring ``p`` to ``p_prime``.

    With single-peaked preferences these are the agents whose ideal point
    is ``p`` or lies beyond it, away from ``p_prime``.
    """
    if p == p_prime:
        return 0
    if p < p_prime:
        return sum(1 for x in ideals if x <= p)
    return sum(1 for x in ideals if x >= p)


def dominates(ideals: IdealProfile, p, p_prime) -> bool:
    """True iff a strict majority strictly prefers ``p`` to ``p_prime``."""
    p, p_prime = check_delta(p), check_delta(p_prime)
    if p == p_prime:
        raise DegenerateAmendmentError(f"comparing {format_fraction(p)} with itself")
    return 2 * supporters(ideals.ideals, p, p_prime) > ideals.n


def most_preferred(ideals: IdealProfile, candidates: Iterable) -> frozenset:
    """Candidates not dominated by any other candidate."""
    n, grid = ideals.n, grid_levels(ideals.n)
    cands = set(candidates)
    if not cands:
        raise DomainError("most_preferred needs at least one candidate")
    if not all(c in grid for c in cands):
        cands = {check_delta(c) for c in cands}
    cands = sorted(cands)
    if all(c in grid for c in cands):
        # order-preserving relabelling onto integer levels
        keys, xs = [grid[c] for c in cands], ideals.levels
    else:
        keys, xs = cands, ideals.ideals
    keep = set(undominated_keys(xs, keys, n))
    return frozenset(p for p, kp in zip(cands, keys) if kp in keep)


def undominated_keys(xs: Sequence, keys: Sequence, n: int) -> list:
    """Members of ``keys`` that no other key beats by a strict majority of ``xs``.

    ``xs`` and ``keys`` must be on the same scale: both rationals, or both
    grid levels.
    """
    ranked = sorted(xs)

    def beats(kq, kp):
        # supporters of kq over kp, counted on the sorted ideals
        held = bisect.bisect_right(ranked, kq) if kq < kp else len(ranked) - bisect.bisect_left(ranked, kq)
        return 2 * held > n

    return [kp for kp in keys if not any(kq != kp and beats(kq, kp) for kq in keys)]

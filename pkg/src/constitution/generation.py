"""Seeded random ideal profiles."""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from fractions import Fraction

from .core import ParseError, format_fraction, grid_tuple, majority_count, snap_delta, to_fraction
from .preferences import IdealProfile

_CLUSTERED = re.compile(r"^clustered\((.*)\)$")


@dataclass(frozen=True)
class Distribution:
    """``uniform`` over the grid, or ``clustered`` on weighted peaks.

    Peaks are snapped onto each community's grid when sampling.
    """

    name: str
    peaks: tuple = ()  # ((delta, weight), ...)

    @classmethod
    def parse(cls, text: str) -> "Distribution":
        """Parse ``"uniform"`` or ``"clustered(1/2:0.6,4/5:0.4)"``."""
        text = text.strip()
        if text == "uniform":
            return cls("uniform")
        match = _CLUSTERED.match(text)
        if not match:
            raise ParseError(f"unknown distribution {text!r}; expected 'uniform' or 'clustered(p:w,...)'")
        peaks = []
        for item in match.group(1).split(","):
            try:
                where, weight = item.split(":")
            except ValueError as exc:
                raise ParseError(f"bad cluster entry {item!r}; expected delta:weight") from exc
            weight = to_fraction(weight)
            if weight <= 0:
                raise ParseError(f"cluster weight must be positive, got {item!r}")
            peaks.append((to_fraction(where), weight))
        if not peaks:
            raise ParseError("clustered distribution needs at least one peak")
        return cls("clustered", tuple(peaks))

    def __str__(self):
        if self.name == "uniform":
            return "uniform"
        return "clustered(" + ",".join(f"{format_fraction(p)}:{format_fraction(w)}" for p, w in self.peaks) + ")"

    def sample(self, rng: random.Random, n: int) -> IdealProfile:
        if self.name == "uniform":
            grid = grid_tuple(n)
            return IdealProfile(tuple(rng.choice(grid) for _ in range(n)))
        points = [snap_delta(n, p).delta for p, _ in self.peaks]
        weights = [float(w) for _, w in self.peaks]
        return IdealProfile(tuple(rng.choices(points, weights, k=n)))


def random_profiles(n: int, count: int, seed: int, distribution: Distribution | str = "uniform") -> list[IdealProfile]:
    if isinstance(distribution, str):
        distribution = Distribution.parse(distribution)
    rng = random.Random(seed)
    return [distribution.sample(rng, n) for _ in range(count)]


def mixed_profile(rng: random.Random, n: int, index: int) -> IdealProfile:
    """Uniform profiles interleaved with random two-peak clusters.

    Uniform draws rarely produce large supermajorities at high thresholds;
    the clustered half exercises the amendment branches there.
    """
    levels = range(majority_count(n), n + 1)
    if index % 2 == 0:
        return IdealProfile.from_levels(n, [rng.choice(levels) for _ in range(n)])
    low, high = rng.choice(levels), rng.choice(levels)
    weight = Fraction(rng.randint(1, 9), 10)
    return IdealProfile.from_levels(n, [low if rng.random() < float(weight) else high for _ in range(n)])

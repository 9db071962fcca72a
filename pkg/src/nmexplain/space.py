"""Finite integer feature grids.

Every universally quantified definition in this package (coverage,
entailment, specificity, the bounded property checks) is decided by
enumeration over a finite grid, so the grid is the single source of
truth for "all inputs". Values are exact integers; there are no
tolerances anywhere.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

Point = tuple[int, ...]

DEFAULT_GRID_CAP = 1_000_000


class SpaceError(ValueError):
    pass


class GridTooLargeError(SpaceError):
    """Raised instead of enumerating a grid above the configured cap."""

    def __init__(self, cardinality: int, cap: int):
        super().__init__(f"grid has {cardinality} points, above the cap of {cap}")
        self.cardinality = cardinality
        self.cap = cap


@dataclass(frozen=True)
class Feature:
    """One integer axis: values min, min+step, ..., max."""

    name: str
    min: int
    max: int
    step: int = 1

    def __post_init__(self):
        if not self.name or not self.name[0].isalpha():
            raise SpaceError(f"bad feature name {self.name!r}")
        if self.min > self.max:
            raise SpaceError(f"feature {self.name}: min {self.min} > max {self.max}")
        if self.step <= 0:
            raise SpaceError(f"feature {self.name}: step must be positive")
        if (self.max - self.min) % self.step != 0:
            raise SpaceError(
                f"feature {self.name}: step {self.step} does not divide {self.max - self.min}"
            )

    def axis(self) -> range:
        return range(self.min, self.max + 1, self.step)

    def contains(self, value: int) -> bool:
        return self.min <= value <= self.max and (value - self.min) % self.step == 0


@dataclass(frozen=True)
class FeatureSpace:
    features: tuple[Feature, ...]

    def __post_init__(self):
        if not self.features:
            raise SpaceError("a feature space needs at least one feature")
        names = [f.name for f in self.features]
        if len(set(names)) != len(names):
            raise SpaceError(f"duplicate feature names in {names}")

    @cached_property
    def _index(self) -> dict[str, int]:
        return {f.name: i for i, f in enumerate(self.features)}

    def index_of(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise SpaceError(f"unknown feature {name!r}") from None

    def has_feature(self, name: str) -> bool:
        return name in self._index

    @property
    def cardinality(self) -> int:
        n = 1
        for f in self.features:
            n *= (f.max - f.min) // f.step + 1
        return n

    def contains(self, point: Point) -> bool:
        return len(point) == len(self.features) and all(
            f.contains(v) for f, v in zip(self.features, point)
        )

    def check_point(self, point) -> Point:
        """Validate and normalize an on-grid point (raises SpaceError)."""
        pt = tuple(int(v) for v in point)
        if not self.contains(pt):
            raise SpaceError(f"point {pt} is not on the grid")
        return pt

    def points(self, cap: int = DEFAULT_GRID_CAP) -> tuple[Point, ...]:
        """All grid points, exactly once, in lexicographic feature order."""
        if self.cardinality > cap:
            raise GridTooLargeError(self.cardinality, cap)
        return self._all_points

    @cached_property
    def _all_points(self) -> tuple[Point, ...]:
        return tuple(itertools.product(*(f.axis() for f in self.features)))


def grid_points(space: FeatureSpace, cap: int = DEFAULT_GRID_CAP) -> tuple[Point, ...]:
    return space.points(cap)


def validate_labels(labels) -> tuple[str, ...]:
    """A label set: at least two distinct string ids, order preserved."""
    out = tuple(str(x) for x in labels)
    if len(out) < 2:
        raise SpaceError("need at least two labels")
    if len(set(out)) != len(out):
        raise SpaceError(f"duplicate labels in {out}")
    return out

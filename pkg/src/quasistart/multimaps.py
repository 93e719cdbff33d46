"""Set-valued and single-valued maps on a finite space, and their special points.

Because every image is a finite set, the one-point reductions of the
Hausdorff distance are used throughout:

    H({x}, Fx) = max_{y in Fx} d(x, y)      (start value)
    H(Fx, {x}) = max_{y in Fx} d(y, x)      (end value)

and infima over the space are attained minima.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .space import FiniteQuasiSpace, StructuralError, as_rational, diameter

__all__ = [
    "SetValuedMap",
    "SingleMap",
    "PointClassification",
    "ApproxValue",
    "LevelSets",
    "start_value",
    "end_value",
    "mix_value",
    "classify_point",
    "classify_all",
    "eps_points",
    "value_table",
    "approx_value",
    "approx_value_single",
    "level_sets",
]


class SetValuedMap:
    """A total map from labels to nonempty sets of labels."""

    __slots__ = ("images",)

    def __init__(self, table: Mapping[str, Iterable[str]]):
        images = {}
        for x, image in table.items():
            image = frozenset(str(y) for y in image)
            if not image:
                raise StructuralError(f"empty image at {x!r}")
            images[str(x)] = image
        object.__setattr__(self, "images", images)

    def __setattr__(self, name, value):
        raise AttributeError("SetValuedMap is immutable")

    def __getitem__(self, x: str) -> frozenset:
        return self.images[x]

    def __eq__(self, other) -> bool:
        if not isinstance(other, SetValuedMap):
            return NotImplemented
        return self.images == other.images

    def __repr__(self) -> str:
        body = ", ".join(f"{x}: {sorted(v)}" for x, v in self.images.items())
        return f"SetValuedMap({{{body}}})"

    def validate(self, space: FiniteQuasiSpace) -> "SetValuedMap":
        missing = [x for x in space.labels if x not in self.images]
        if missing:
            raise StructuralError(f"map is not total; no image for {missing}")
        extra = [x for x in self.images if x not in space]
        if extra:
            raise StructuralError(f"map has images for unknown points {extra}")
        for x, image in self.images.items():
            stray = sorted(y for y in image if y not in space)
            if stray:
                raise StructuralError(f"image of {x!r} leaves the space: {stray}")
        return self

    @classmethod
    def from_function(cls, space: FiniteQuasiSpace, fn) -> "SetValuedMap":
        return cls({x: fn(x) for x in space.labels})

    @classmethod
    def from_single(cls, f: "SingleMap") -> "SetValuedMap":
        return cls({x: {y} for x, y in f.table.items()})


class SingleMap:
    """A total self-map with an optional alpha weight on ordered pairs."""

    __slots__ = ("table", "alpha")

    def __init__(self, table: Mapping[str, str], alpha: Mapping[tuple[str, str], object] | None = None):
        object.__setattr__(self, "table", {str(x): str(y) for x, y in table.items()})
        if alpha is not None:
            alpha = {(str(x), str(y)): as_rational(v) for (x, y), v in alpha.items()}
            if any(v < 0 for v in alpha.values()):
                raise StructuralError("alpha must be nonnegative")
        object.__setattr__(self, "alpha", alpha)

    def __setattr__(self, name, value):
        raise AttributeError("SingleMap is immutable")

    def __call__(self, x: str) -> str:
        return self.table[x]

    def __eq__(self, other) -> bool:
        if not isinstance(other, SingleMap):
            return NotImplemented
        return self.table == other.table and self.alpha == other.alpha

    def __repr__(self) -> str:
        return f"SingleMap({self.table!r}, alpha={'yes' if self.alpha else 'no'})"

    def a(self, x: str, y: str) -> Fraction:
        if self.alpha is None:
            raise StructuralError("this map carries no alpha table")
        return self.alpha[(x, y)]

    def validate(self, space: FiniteQuasiSpace) -> "SingleMap":
        for x in space.labels:
            if x not in self.table:
                raise StructuralError(f"map is not total; no image for {x!r}")
            if self.table[x] not in space:
                raise StructuralError(f"image of {x!r} is not a point: {self.table[x]!r}")
        if len(self.table) != len(space):
            raise StructuralError("map has images for unknown points")
        if self.alpha is not None:
            want = {(x, y) for x in space.labels for y in space.labels}
            if set(self.alpha) != want:
                raise StructuralError("alpha must be given on every ordered pair of points")
        return self

    def with_alpha(self, alpha) -> "SingleMap":
        return SingleMap(self.table, alpha)

    def transposed(self) -> "SingleMap":
        """Same map, alpha(x, y) replaced by alpha(y, x)."""
        alpha = None if self.alpha is None else {(y, x): v for (x, y), v in self.alpha.items()}
        return SingleMap(self.table, alpha)


def start_value(space: FiniteQuasiSpace, F: SetValuedMap, x: str) -> Fraction:
    row = space.row(x)
    return max(map(row.__getitem__, map(space.index, F[x])))


def end_value(space: FiniteQuasiSpace, F: SetValuedMap, x: str) -> Fraction:
    j = space.index(x)
    m = space.dist
    return max(m[i][j] for i in map(space.index, F[x]))


def mix_value(space: FiniteQuasiSpace, F: SetValuedMap, x: str) -> Fraction:
    """sup over Fx of dˢ(x, y); equals max(start value, end value)."""
    i = space.index(x)
    m = space.dist
    return max(max(m[i][j], m[j][i]) for j in (space.index(y) for y in F[x]))


@dataclass(frozen=True)
class PointClassification:
    point: str
    fixed: bool
    startpoint: bool
    endpoint: bool
    start_value: Fraction
    end_value: Fraction


def classify_point(space: FiniteQuasiSpace, F: SetValuedMap, x: str) -> PointClassification:
    s = start_value(space, F, x)
    e = end_value(space, F, x)
    return PointClassification(x, x in F[x], s == 0, e == 0, s, e)


def classify_all(space: FiniteQuasiSpace, F: SetValuedMap) -> list[PointClassification]:
    F.validate(space)
    return [classify_point(space, F, x) for x in space.labels]


def _check_eps(eps) -> Fraction:
    eps = as_rational(eps)
    if not 0 < eps < 1:
        raise ValueError(f"epsilon must lie in (0, 1), got {eps}")
    return eps


_KINDS = {"start": start_value, "end": end_value, "mix": mix_value}


def value_table(space: FiniteQuasiSpace, F: SetValuedMap, kind: str = "start") -> dict:
    """Start, end or mix value of every point, keyed by label."""
    try:
        value = _KINDS[kind]
    except KeyError:
        raise ValueError(f"kind must be one of {sorted(_KINDS)}, got {kind!r}") from None
    return {x: value(space, F, x) for x in space.labels}


def eps_points(space: FiniteQuasiSpace, F: SetValuedMap, eps, side: str = "start", *, values=None) -> frozenset:
    """Points whose start (or end) value is strictly below ``eps``.

    ``values`` may pass a precomputed :func:`value_table` for ``side`` when
    many thresholds are queried on a large space.
    """
    eps = _check_eps(eps)
    if side not in ("start", "end"):
        raise ValueError(f"side must be 'start' or 'end', got {side!r}")
    if values is None:
        values = value_table(space, F, side)
    return frozenset(x for x in space.labels if values[x] < eps)


@dataclass(frozen=True)
class ApproxValue:
    value: Fraction
    witness: str

    @property
    def has_property(self) -> bool:
        return self.value == 0


def approx_value(space: FiniteQuasiSpace, F: SetValuedMap, kind: str = "start") -> ApproxValue:
    """min over x of the start, end or mix value, with the first minimizer."""
    try:
        value = _KINDS[kind]
    except KeyError:
        raise ValueError(f"kind must be one of {sorted(_KINDS)}, got {kind!r}") from None
    best = None
    for x in space.labels:
        v = value(space, F, x)
        if best is None or v < best.value:
            best = ApproxValue(v, x)
    return best


def approx_value_single(space: FiniteQuasiSpace, f: SingleMap, side: str = "start") -> ApproxValue:
    """min over x of d(x, fx) (``start``) or d(fx, x) (``end``)."""
    if side not in ("start", "end"):
        raise ValueError(f"side must be 'start' or 'end', got {side!r}")
    best = None
    for x in space.labels:
        v = space.d(x, f(x)) if side == "start" else space.d(f(x), x)
        if best is None or v < best.value:
            best = ApproxValue(v, x)
    return best


@dataclass(frozen=True)
class LevelSets:
    levels: tuple[frozenset, ...]  # levels[n - 1] is C_n
    diameters: tuple[Fraction | None, ...]  # None for an empty level
    core: frozenset

    def __getitem__(self, n: int) -> frozenset:
        return self.levels[n - 1]


def level_sets(space: FiniteQuasiSpace, F: SetValuedMap, n_max: int) -> LevelSets:
    """C_n = {x : mix value of x <= 1/n} for n = 1..n_max, plus the zero set."""
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    mixes = {x: mix_value(space, F, x) for x in space.labels}
    levels = []
    for n in range(1, n_max + 1):
        bound = Fraction(1, n)
        levels.append(frozenset(x for x, v in mixes.items() if v <= bound))
    diams = tuple(diameter(space, C) if C else None for C in levels)
    core = frozenset(x for x, v in mixes.items() if v == 0)
    return LevelSets(tuple(levels), diams, core)

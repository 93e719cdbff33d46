"""Finite quasi-pseudometric spaces with exact rational distances.

A space is an ordered tuple of point labels together with a square matrix of
nonnegative :class:`fractions.Fraction` entries, ``dist[i][j] = d(x_i, x_j)``.
Nothing here is symmetric unless the matrix says so.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable, Sequence

__all__ = [
    "INFINITY",
    "StructuralError",
    "AxiomError",
    "Violation",
    "SpaceDiagnostics",
    "FiniteQuasiSpace",
    "as_rational",
    "validate_space",
    "conjugate",
    "symmetrize",
    "open_ball",
    "closed_ball",
    "diameter",
    "closure",
    "is_join_closed",
    "is_bounded",
]

# Reserved for the extended codomain of set distances; finite spaces never
# produce it.
INFINITY = float("inf")

PointSet = frozenset


class StructuralError(ValueError):
    """Input is not a square matrix of rationals (or labels do not match)."""


class AxiomError(ValueError):
    """The matrix is well formed but breaks a quasi-pseudometric axiom."""

    def __init__(self, diagnostics: "SpaceDiagnostics"):
        self.diagnostics = diagnostics
        first = diagnostics.violations[0]
        super().__init__(
            f"{len(diagnostics.violations)} axiom violation(s); first: {first}"
        )


def as_rational(value) -> Fraction:
    """Coerce ``value`` to a Fraction, refusing anything inexact.

    Accepts Fraction, int and strings such as ``"3"``, ``"-2/7"``.  Floats
    and bools are rejected outright.
    """
    if isinstance(value, bool):
        raise StructuralError(f"boolean {value!r} is not a rational")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not text or any(ch in text for ch in ".eE_ "):
            raise StructuralError(f"{value!r} is not written as p/q or an integer")
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise StructuralError(f"{value!r} is not a rational: {exc}") from None
    raise StructuralError(f"{value!r} ({type(value).__name__}) is not a rational")


@dataclass(frozen=True)
class Violation:
    kind: str  # negative-entry | nonzero-diagonal | triangle | T0
    witness: tuple
    lhs: Fraction | None = None
    rhs: Fraction | None = None

    def __str__(self) -> str:
        pts = ", ".join(str(w) for w in self.witness)
        if self.lhs is None:
            return f"{self.kind} at ({pts})"
        return f"{self.kind} at ({pts}): {self.lhs} vs {self.rhs}"


@dataclass(frozen=True)
class SpaceDiagnostics:
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def kinds(self) -> set[str]:
        return {v.kind for v in self.violations}


def _coerce_matrix(dist) -> tuple[tuple[Fraction, ...], ...]:
    try:
        rows = [list(row) for row in dist]
    except TypeError:
        raise StructuralError("distance matrix must be a sequence of rows") from None
    n = len(rows)
    for i, row in enumerate(rows):
        if len(row) != n:
            raise StructuralError(f"row {i} has {len(row)} entries, expected {n}")
    return tuple(tuple(v if type(v) is Fraction else as_rational(v) for v in row) for row in rows)


def validate_space(dist, require_t0: bool = False, labels: Sequence[str] | None = None) -> SpaceDiagnostics:
    """List every quasi-pseudometric axiom violation of ``dist``.

    Witnesses are labels when ``labels`` is given, otherwise row indices.
    Raises :class:`StructuralError` for a non-square or non-rational matrix.
    The triangle scan is the full n**3 sweep.
    """
    m = _coerce_matrix(dist)
    n = len(m)
    if labels is None:
        names: Sequence = range(n)
    else:
        names = list(labels)
        if len(names) != n:
            raise StructuralError(f"{len(names)} labels for a {n}x{n} matrix")

    found: list[Violation] = []
    for i, j in product(range(n), repeat=2):
        if m[i][j] < 0:
            found.append(Violation("negative-entry", (names[i], names[j]), m[i][j], Fraction(0)))
    for i in range(n):
        if m[i][i] != 0:
            found.append(Violation("nonzero-diagonal", (names[i], names[i]), m[i][i], Fraction(0)))
    for i, j, k in product(range(n), repeat=3):
        rhs = m[i][j] + m[j][k]
        if m[i][k] > rhs:
            found.append(Violation("triangle", (names[i], names[j], names[k]), m[i][k], rhs))
    if require_t0:
        for i in range(n):
            for j in range(i + 1, n):
                if m[i][j] == 0 and m[j][i] == 0:
                    found.append(Violation("T0", (names[i], names[j])))
    return SpaceDiagnostics(tuple(found))


class FiniteQuasiSpace:
    """An ordered finite set of labelled points with an exact distance matrix.

    >>> s = FiniteQuasiSpace(["0", "1"], [[0, 0], [1, 0]])
    >>> s.d("1", "0")
    Fraction(1, 1)

    Construction validates the axioms (and T0 when ``require_t0``) and raises
    :class:`AxiomError` on failure.  Pass ``check=False`` only for matrices
    known to be valid by construction.
    """

    __slots__ = ("labels", "dist", "_index")

    def __init__(self, labels: Iterable[str], dist, *, require_t0: bool = False, check: bool = True):
        labels = tuple(str(x) for x in labels)
        if len(set(labels)) != len(labels):
            raise StructuralError("point labels must be distinct")
        if not labels:
            raise StructuralError("a space needs at least one point")
        matrix = _coerce_matrix(dist)
        if len(matrix) != len(labels):
            raise StructuralError(f"{len(labels)} labels for a {len(matrix)}x{len(matrix)} matrix")
        if check:
            diag = validate_space(matrix, require_t0=require_t0, labels=labels)
            if not diag.ok:
                raise AxiomError(diag)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "dist", matrix)
        object.__setattr__(self, "_index", {x: i for i, x in enumerate(labels)})

    def __setattr__(self, name, value):
        raise AttributeError("FiniteQuasiSpace is immutable")

    def __len__(self) -> int:
        return len(self.labels)

    def __iter__(self):
        return iter(self.labels)

    def __contains__(self, x) -> bool:
        return x in self._index

    def __eq__(self, other) -> bool:
        if not isinstance(other, FiniteQuasiSpace):
            return NotImplemented
        return self.labels == other.labels and self.dist == other.dist

    def __hash__(self) -> int:
        return hash((self.labels, self.dist))

    def __repr__(self) -> str:
        return f"FiniteQuasiSpace({list(self.labels)!r}, n={len(self)})"

    def index(self, x: str) -> int:
        try:
            return self._index[x]
        except KeyError:
            raise KeyError(f"{x!r} is not a point of the space") from None

    def d(self, x: str, y: str) -> Fraction:
        return self.dist[self.index(x)][self.index(y)]

    def row(self, x: str) -> tuple[Fraction, ...]:
        return self.dist[self.index(x)]

    def points(self, subset: Iterable[str] | None = None) -> tuple[str, ...]:
        """Labels in space order, optionally restricted to ``subset``."""
        if subset is None:
            return self.labels
        subset = self.check_subset(subset)
        return tuple(x for x in self.labels if x in subset)

    def check_subset(self, subset: Iterable[str]) -> frozenset:
        subset = frozenset(subset)
        missing = [x for x in subset if x not in self._index]
        if missing:
            raise KeyError(f"not points of the space: {sorted(missing)}")
        return subset

    def is_t0(self) -> bool:
        n = len(self)
        m = self.dist
        return all(m[i][j] > 0 or m[j][i] > 0 for i in range(n) for j in range(i + 1, n))

    def restrict(self, subset: Iterable[str]) -> "FiniteQuasiSpace":
        """Subspace on ``subset`` (still a valid space; axioms restrict)."""
        keep = [self.index(x) for x in self.points(subset)]
        if not keep:
            raise StructuralError("cannot restrict to an empty set")
        return FiniteQuasiSpace(
            [self.labels[i] for i in keep],
            [[self.dist[i][j] for j in keep] for i in keep],
            check=False,
        )


def conjugate(space: FiniteQuasiSpace) -> FiniteQuasiSpace:
    """The space with distance d⁻¹(x, y) = d(y, x)."""
    return FiniteQuasiSpace(space.labels, tuple(zip(*space.dist)), check=False)


def symmetrize(space: FiniteQuasiSpace) -> FiniteQuasiSpace:
    """Entrywise max of d and its conjugate; a metric when ``space`` is T0."""
    m = space.dist
    n = len(m)
    sym = [[max(m[i][j], m[j][i]) for j in range(n)] for i in range(n)]
    return FiniteQuasiSpace(space.labels, sym, check=False)


def open_ball(space: FiniteQuasiSpace, x: str, eps) -> frozenset:
    eps = as_rational(eps)
    if eps <= 0:
        raise ValueError(f"open ball radius must be positive, got {eps}")
    return frozenset(y for y, dxy in zip(space.labels, space.row(x)) if dxy < eps)


def closed_ball(space: FiniteQuasiSpace, x: str, eps) -> frozenset:
    eps = as_rational(eps)
    if eps < 0:
        raise ValueError(f"closed ball radius must be nonnegative, got {eps}")
    return frozenset(y for y, dxy in zip(space.labels, space.row(x)) if dxy <= eps)


def diameter(space: FiniteQuasiSpace, A: Iterable[str]) -> Fraction:
    A = space.points(A)
    if not A:
        raise ValueError("diameter of the empty set is undefined")
    idx = [space.index(a) for a in A]
    return max(space.dist[i][j] for i in idx for j in idx)


_SIDES = ("forward", "backward", "symmetric")


def closure(space: FiniteQuasiSpace, A: Iterable[str], side: str = "forward") -> frozenset:
    """Closure of ``A`` in the topology of d, d⁻¹ or dˢ.

    On a finite space a point is adherent to A exactly when its distance to A
    in the chosen orientation is zero.
    """
    if side not in _SIDES:
        raise ValueError(f"side must be one of {_SIDES}, got {side!r}")
    A = space.check_subset(A)
    if not A:
        return frozenset()
    cols = [space.index(a) for a in A]
    m = space.dist
    out = set()
    for i, x in enumerate(space.labels):
        for j in cols:
            fwd, bwd = m[i][j], m[j][i]
            if side == "forward":
                zero = fwd == 0
            elif side == "backward":
                zero = bwd == 0
            else:
                zero = fwd == 0 and bwd == 0
            if zero:
                out.add(x)
                break
    return frozenset(out)


def is_join_closed(space: FiniteQuasiSpace, A: Iterable[str]) -> bool:
    """True when ``A`` is closed for the symmetrized topology (empty set: True)."""
    A = space.check_subset(A)
    return closure(space, A, "symmetric") == A


def is_bounded(space: FiniteQuasiSpace, A: Iterable[str]) -> bool:
    # Every subset of a finite space has finite diameter; kept so callers can
    # state the boundedness hypothesis explicitly.
    space.check_subset(A)
    return True

"""Point-to-set distances and the Hausdorff quasi-pseudometric on nonempty subsets."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable, Sequence

from .space import (
    FiniteQuasiSpace,
    SpaceDiagnostics,
    Violation,
    closure,
    is_bounded,
    is_join_closed,
)

__all__ = [
    "HyperDistanceReport",
    "dist_point_to_set",
    "dist_set_to_point",
    "hausdorff",
    "hausdorff_sym",
    "hyperspace_axiom_check",
    "cb_membership",
    "s_cl_membership",
]


def _nonempty(space: FiniteQuasiSpace, A: Iterable[str], name: str = "set") -> tuple[str, ...]:
    pts = space.points(A)
    if not pts:
        raise ValueError(f"{name} must be nonempty")
    return pts


def dist_point_to_set(space: FiniteQuasiSpace, x: str, A: Iterable[str]) -> Fraction:
    """inf over a in A of d(x, a)."""
    row = space.row(x)
    return min(row[space.index(a)] for a in _nonempty(space, A))


def dist_set_to_point(space: FiniteQuasiSpace, A: Iterable[str], x: str) -> Fraction:
    """inf over a in A of d(a, x)."""
    j = space.index(x)
    return min(space.dist[space.index(a)][j] for a in _nonempty(space, A))


@dataclass(frozen=True)
class HyperDistanceReport:
    """H(A, B) together with the points that realize it.

    ``side`` is ``"forward"`` when the value comes from sup_a d(a, B); then
    ``witness`` is that a and ``partner`` its nearest point of B, so
    ``d(witness, partner) == value``.  For ``"backward"`` the value is
    sup_b d(A, b), ``witness`` is b and ``d(partner, witness) == value``.
    """

    value: Fraction
    side: str
    witness: str
    partner: str

    def recompute(self, space: FiniteQuasiSpace) -> Fraction:
        if self.side == "forward":
            return space.d(self.witness, self.partner)
        return space.d(self.partner, self.witness)


def hausdorff(space: FiniteQuasiSpace, A: Iterable[str], B: Iterable[str]) -> HyperDistanceReport:
    A = _nonempty(space, A, "A")
    B = _nonempty(space, B, "B")
    m = space.dist
    ia = [space.index(a) for a in A]
    ib = [space.index(b) for b in B]

    # first strict maximum in label order wins; forward side wins ties
    best = None
    for i, a in zip(ia, A):
        j, b = min(zip(ib, B), key=lambda jb: m[i][jb[0]])
        if best is None or m[i][j] > best[0]:
            best = (m[i][j], "forward", a, b)
    for j, b in zip(ib, B):
        i, a = min(zip(ia, A), key=lambda ia_: m[ia_[0]][j])
        if m[i][j] > best[0]:
            best = (m[i][j], "backward", b, a)
    return HyperDistanceReport(*best)


def hausdorff_value(space: FiniteQuasiSpace, A: Sequence[int], B: Sequence[int]) -> Fraction:
    """H on index lists, without witnesses.  Used by the exhaustive checkers."""
    m = space.dist
    fwd = max(min(m[i][j] for j in B) for i in A)
    bwd = max(min(m[i][j] for i in A) for j in B)
    return fwd if fwd >= bwd else bwd


def hausdorff_sym(space: FiniteQuasiSpace, A: Iterable[str], B: Iterable[str]) -> Fraction:
    return max(hausdorff(space, A, B).value, hausdorff(space, B, A).value)


def s_cl_membership(space: FiniteQuasiSpace, A: Iterable[str]) -> bool:
    A = space.check_subset(A)
    return A == closure(space, A, "forward") & closure(space, A, "backward")


def cb_membership(space: FiniteQuasiSpace, A: Iterable[str]) -> bool:
    A = space.check_subset(A)
    return bool(A) and is_bounded(space, A) and is_join_closed(space, A)


def hyperspace_axiom_check(
    space: FiniteQuasiSpace,
    family: Iterable[Iterable[str]],
    check_t0: bool | None = None,
) -> SpaceDiagnostics:
    """Check that H restricted to ``family`` is a quasi-pseudometric.

    Reflexivity and every triangle are checked.  The T0 condition is checked
    when ``check_t0`` is true, or (``None``) when every member of the family
    lies in S_cl(X).  Witnesses are tuples of sorted label tuples.
    """
    sets = []
    for A in family:
        pts = space.points(A)
        if not pts:
            raise ValueError("hyperspace members must be nonempty")
        sets.append(pts)
    if check_t0 is None:
        check_t0 = all(s_cl_membership(space, A) for A in sets)

    idx = [[space.index(a) for a in A] for A in sets]
    k = len(sets)
    H = [[hausdorff_value(space, idx[p], idx[q]) for q in range(k)] for p in range(k)]

    found: list[Violation] = []
    zero = Fraction(0)
    for p in range(k):
        if H[p][p] != 0:
            found.append(Violation("nonzero-diagonal", (sets[p], sets[p]), H[p][p], zero))
    for p, q, r in product(range(k), repeat=3):
        rhs = H[p][q] + H[q][r]
        if H[p][r] > rhs:
            found.append(Violation("triangle", (sets[p], sets[q], sets[r]), H[p][r], rhs))
    if check_t0:
        for p in range(k):
            for q in range(p + 1, k):
                if frozenset(sets[p]) != frozenset(sets[q]) and H[p][q] == 0 and H[q][p] == 0:
                    found.append(Violation("T0", (sets[p], sets[q])))
    return SpaceDiagnostics(tuple(found))

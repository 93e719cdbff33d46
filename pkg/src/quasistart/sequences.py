"""Convergence and Cauchy verdicts for finite sequence traces.

A trace is a finite list of labels.  If ``repeat_index`` is set, the block
``points[repeat_index:]`` is understood to repeat forever (an eventually
constant sequence is the case of a one-point block), and verdicts are exact.
Otherwise the trace is finite evidence only: with L points, the tail starting
at ``L // 2`` must meet the condition for every threshold 1/k, k = 1..L, and a
pass is reported as ``holds-up-to-horizon``.  Since a tail supremum below 1/L
is below every coarser threshold, the horizon test reduces to ``sup < 1/L``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Sequence

from .space import FiniteQuasiSpace, conjugate

__all__ = [
    "Status",
    "Verdict",
    "SequenceTrace",
    "HierarchyReport",
    "classify_convergence",
    "classify_cauchy",
    "check_hierarchy",
    "semicontinuity_probe",
    "CAUCHY_KINDS",
]


class Status(str, Enum):
    HOLDS = "holds"
    FAILS = "fails"
    HORIZON = "holds-up-to-horizon"


_RANK = {Status.FAILS: 0, Status.HORIZON: 1, Status.HOLDS: 2}


@dataclass(frozen=True)
class Verdict:
    status: Status
    epsilon: Fraction | None = None
    indices: tuple[int, ...] = ()
    auxiliary: str | None = None
    note: str = ""

    @property
    def holds(self) -> bool:
        return self.status is not Status.FAILS

    @property
    def rank(self) -> int:
        return _RANK[self.status]


@dataclass(frozen=True)
class SequenceTrace:
    points: tuple[str, ...]
    repeat_index: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))
        if not self.points:
            raise ValueError("a trace needs at least one point")
        if self.repeat_index is not None and not 0 <= self.repeat_index < len(self.points):
            raise ValueError(f"repeat_index {self.repeat_index} outside trace of length {len(self.points)}")

    @classmethod
    def constant_tail(cls, points: Iterable[str]) -> "SequenceTrace":
        """Trace whose last point repeats forever."""
        points = tuple(points)
        return cls(points, len(points) - 1)

    @property
    def exact(self) -> bool:
        return self.repeat_index is not None

    @property
    def eventually_constant(self) -> bool:
        return self.repeat_index == len(self.points) - 1

    def tail(self) -> tuple[int, ...]:
        """Indices whose values control the verdict."""
        if self.exact:
            start = self.repeat_index
            block = list(range(start, len(self.points)))
            # two laps of the block so that every ordered pair occurs with k <= n
            return tuple(block + block)
        return tuple(range(len(self.points) // 2, len(self.points)))


def _check_trace(space: FiniteQuasiSpace, trace: SequenceTrace) -> None:
    for x in trace.points:
        space.index(x)


def _verdict(trace: SequenceTrace, sup: Fraction, where: tuple[int, ...], aux: str | None = None) -> Verdict:
    if trace.exact:
        if sup == 0:
            return Verdict(Status.HOLDS, auxiliary=aux)
        return Verdict(Status.FAILS, epsilon=sup, indices=where, auxiliary=aux)
    horizon = len(trace.points)
    if sup < Fraction(1, horizon):
        return Verdict(Status.HORIZON, auxiliary=aux)
    # coarsest threshold 1/k that the tail already misses
    k = math.ceil(1 / sup)
    return Verdict(Status.FAILS, epsilon=Fraction(1, k), indices=where, auxiliary=aux)


def _tail_sup(values: Sequence[tuple[Fraction, tuple[int, ...]]]) -> tuple[Fraction, tuple[int, ...]]:
    best = values[0]
    for v in values[1:]:
        if v[0] > best[0]:
            best = v
    return best


_MODES = ("d", "d-inverse", "d-sym")


def classify_convergence(space: FiniteQuasiSpace, trace: SequenceTrace, candidate: str, mode: str = "d") -> Verdict:
    """Does ``trace`` converge to ``candidate`` for d, d⁻¹ or dˢ?

    Mode ``d`` looks at d(candidate, x_n), ``d-inverse`` at d(x_n, candidate),
    ``d-sym`` at the max of the two.
    """
    if mode not in _MODES:
        raise ValueError(f"mode must be one of {_MODES}, got {mode!r}")
    _check_trace(space, trace)
    c = space.index(candidate)
    m = space.dist
    vals = []
    for n in trace.tail():
        j = space.index(trace.points[n])
        fwd, bwd = m[c][j], m[j][c]
        v = fwd if mode == "d" else bwd if mode == "d-inverse" else max(fwd, bwd)
        vals.append((v, (n,)))
    sup, where = _tail_sup(vals)
    return _verdict(trace, sup, where)


CAUCHY_KINDS = ("left-d", "left-K", "right-d", "right-K", "d-sym")


def classify_cauchy(space: FiniteQuasiSpace, trace: SequenceTrace, kind: str) -> Verdict:
    """Cauchy verdict of the given kind.

    For ``left-d``/``right-d`` the auxiliary point is searched over the whole
    space and the best one is reported in ``Verdict.auxiliary``.
    """
    if kind not in CAUCHY_KINDS:
        raise ValueError(f"unknown Cauchy kind {kind!r}; expected one of {CAUCHY_KINDS}")
    _check_trace(space, trace)
    m = space.dist
    tail = trace.tail()
    idx = [space.index(trace.points[n]) for n in tail]

    if kind in ("left-d", "right-d"):
        best = None
        for y, iy in zip(space.labels, range(len(space))):
            if kind == "left-d":
                vals = [(m[iy][j], (n,)) for n, j in zip(tail, idx)]
            else:
                vals = [(m[j][iy], (n,)) for n, j in zip(tail, idx)]
            cand = _tail_sup(vals) + (y,)
            if best is None or cand[0] < best[0]:
                best = cand
        sup, where, aux = best
        return _verdict(trace, sup, where, aux)

    vals = []
    for a in range(len(tail)):
        for b in range(len(tail)):
            if kind != "d-sym" and a > b:
                continue
            i, j = idx[a], idx[b]
            v = m[j][i] if kind == "right-K" else m[i][j]
            vals.append((v, (tail[a], tail[b])))
    sup, where = _tail_sup(vals)
    return _verdict(trace, sup, where)


@dataclass(frozen=True)
class HierarchyReport:
    verdicts: dict
    violations: tuple[str, ...] = ()
    printed_5ii_discrepancy: str | None = None

    @property
    def consistent(self) -> bool:
        return not self.violations


def check_hierarchy(space: FiniteQuasiSpace, trace: SequenceTrace) -> HierarchyReport:
    """Evaluate all five Cauchy kinds and check the implications between them.

    Checked as consistency requirements (a failure is a bug in this module):
    d-sym => left-K => left-d and the right-hand duals; d-sym holds exactly
    when both K-kinds hold; left-K for d agrees with right-K for d⁻¹.

    The printed pairing "left d-Cauchy for d iff right K-Cauchy for d⁻¹" is
    evaluated as stated.  Right K for d⁻¹ is left K for d, so this pairing
    disagrees on any sequence that is left d-Cauchy but not left K-Cauchy;
    disagreements are returned in ``printed_5ii_discrepancy`` and are not
    counted as violations.
    """
    v = {k: classify_cauchy(space, trace, k) for k in CAUCHY_KINDS}
    conj = conjugate(space)
    right_k_conj = classify_cauchy(conj, trace, "right-K")
    left_d_conj = classify_cauchy(conj, trace, "left-d")

    bad = []
    for strong, weak in (("d-sym", "left-K"), ("left-K", "left-d"), ("d-sym", "right-K"), ("right-K", "right-d")):
        if v[strong].rank > v[weak].rank:
            bad.append(f"{strong} is {v[strong].status.value} but {weak} is {v[weak].status.value}")
    both = min(v["left-K"].rank, v["right-K"].rank)
    if v["d-sym"].rank != both:
        bad.append("d-sym disagrees with (left-K and right-K)")
    if v["left-K"].status != right_k_conj.status:
        bad.append("left-K on d disagrees with right-K on the conjugate")
    if v["right-d"].status != left_d_conj.status:
        bad.append("right-d on d disagrees with left-d on the conjugate")

    note = None
    if v["left-d"].status != right_k_conj.status:
        note = (
            f"left-d on d is {v['left-d'].status.value}, "
            f"right-K on the conjugate is {right_k_conj.status.value}"
        )
    return HierarchyReport(v, tuple(bad), note)


class PreconditionError(ValueError):
    """The probe's convergence precondition does not hold for the trace."""

    def __init__(self, message: str, verdict: Verdict):
        super().__init__(message)
        self.verdict = verdict


def semicontinuity_probe(
    space: FiniteQuasiSpace,
    fixed: str,
    trace: SequenceTrace,
    candidate: str,
    *,
    topology: str = "forward",
    vary: str = "second",
) -> Verdict:
    """Finite-trace check of the semicontinuity of d in one argument.

    ``vary="second"`` studies y -> d(fixed, y): upper semicontinuous along
    d-convergent traces (``topology="forward"``) and lower semicontinuous along
    d⁻¹-convergent ones (``"backward"``).  ``vary="first"`` studies
    x -> d(x, fixed): lower semicontinuous for the forward topology, upper for
    the backward one.

    The trace must converge to ``candidate`` in the chosen topology; otherwise
    :class:`PreconditionError` is raised.  The tail of the trace is compared
    with the value at ``candidate``: exactly for repeating traces, with slack
    1/L for a trace of length L otherwise.
    """
    if topology not in ("forward", "backward"):
        raise ValueError(f"topology must be 'forward' or 'backward', got {topology!r}")
    if vary not in ("first", "second"):
        raise ValueError(f"vary must be 'first' or 'second', got {vary!r}")
    mode = "d" if topology == "forward" else "d-inverse"
    conv = classify_convergence(space, trace, candidate, mode)
    if not conv.holds:
        raise PreconditionError(f"trace does not {mode}-converge to {candidate!r}", conv)

    f = space.index(fixed)
    m = space.dist
    c = space.index(candidate)
    if vary == "second":
        value = m[f][c]
        tail = [(m[f][space.index(trace.points[n])], n) for n in trace.tail()]
        upper = topology == "forward"
    else:
        value = m[c][f]
        tail = [(m[space.index(trace.points[n])][f], n) for n in trace.tail()]
        upper = topology == "backward"

    slack = Fraction(0) if trace.exact else Fraction(1, len(trace.points))
    if upper:
        worst, n = max(tail)
        ok = worst <= value + slack if trace.exact else worst < value + slack
        gap = worst - value
    else:
        worst, n = min(tail)
        ok = worst >= value - slack if trace.exact else worst > value - slack
        gap = value - worst
    kind = "usc" if upper else "lsc"
    if ok:
        status = Status.HOLDS if trace.exact else Status.HORIZON
        return Verdict(status, note=kind)
    return Verdict(Status.FAILS, epsilon=gap, indices=(n,), note=kind)

"""Counterexample minimization by point removal and distance simplification."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable

from ..instance import LabInstance
from ..multimaps import SetValuedMap, SingleMap
from ..sequences import SequenceTrace
from ..space import FiniteQuasiSpace, StructuralError, validate_space
from .generate import enforce_t0, metric_closure

__all__ = ["shrink", "remove_point", "with_matrix"]

Assertion = Callable[[LabInstance], "str | None"]


def remove_point(inst: LabInstance, x: str) -> LabInstance | None:
    """The instance on the space without ``x``, or None if that breaks a map."""
    if len(inst.space) < 2 or x in (inst.x0, inst.candidate):
        return None
    if inst.trace is not None and x in inst.trace.points:
        return None
    keep = [y for y in inst.space.labels if y != x]
    F = f = None
    if inst.F is not None:
        table = {y: inst.F[y] - {x} for y in keep}
        if any(not v for v in table.values()):
            return None
        F = SetValuedMap(table)
    if inst.f is not None:
        if any(inst.f(y) == x for y in keep):
            return None
        alpha = None
        if inst.f.alpha is not None:
            alpha = {(a, b): v for (a, b), v in inst.f.alpha.items() if x not in (a, b)}
        f = SingleMap({y: inst.f(y) for y in keep}, alpha)
    return LabInstance(inst.space.restrict(keep), F, f, inst.gamma, inst.psi, inst.c, inst.x0,
                       inst.trace, inst.candidate, {**inst.provenance, "shrunk": True})


def with_matrix(inst: LabInstance, m) -> LabInstance:
    space = FiniteQuasiSpace(inst.space.labels, m, check=False)
    return LabInstance(space, inst.F, inst.f, inst.gamma, inst.psi, inst.c, inst.x0,
                       inst.trace, inst.candidate, {**inst.provenance, "shrunk": True})


def _size(m) -> int:
    return sum(v.numerator + v.denominator for row in m for v in row)


def _simpler_values(v: Fraction):
    yield Fraction(0)
    if v.denominator != 1:
        yield Fraction(math.floor(v))
        yield Fraction(math.ceil(v))
    if v > 1:
        yield Fraction(1)


def _fails(assertion: Assertion, inst: LabInstance) -> bool:
    try:
        return assertion(inst) is not None
    except Exception:
        # a candidate that crashes the check is not a cleaner counterexample
        return False


def shrink(inst: LabInstance, assertion: Assertion, max_rounds: int = 200) -> LabInstance:
    """Smallest failing instance reachable by greedy simplification.

    ``assertion`` returns a message when the instance fails and None when it
    passes; it must fail on ``inst``.  Points are removed first (the
    restriction of a valid space is valid), then single distances are lowered
    to 0 or rounded, with shortest-path re-closure and T0 repair, as long as
    the matrix strictly simplifies and the assertion keeps failing.
    """
    if not _fails(assertion, inst):
        raise ValueError("shrink needs an instance on which the assertion fails")
    t0 = inst.space.is_t0()
    for _ in range(max_rounds):
        changed = False
        for x in inst.space.labels:
            cand = remove_point(inst, x)
            if cand is not None and _fails(assertion, cand):
                inst = cand
                changed = True
                break
        if changed:
            continue
        m = [list(row) for row in inst.space.dist]
        size = _size(m)
        n = len(m)
        for i in range(n):
            for j in range(n):
                if i == j or m[i][j] == 0:
                    continue
                for v in _simpler_values(m[i][j]):
                    trial = [list(row) for row in m]
                    trial[i][j] = v
                    trial = metric_closure(trial)
                    if t0:
                        trial = enforce_t0(trial)
                    if _size(trial) >= size or not validate_space(trial, require_t0=t0).ok:
                        continue
                    try:
                        cand = with_matrix(inst, trial)
                    except StructuralError:
                        continue
                    if _fails(assertion, cand):
                        inst = cand
                        changed = True
                        break
                if changed:
                    break
            if changed:
                break
        if not changed:
            return inst
    return inst

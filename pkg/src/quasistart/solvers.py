"""Iterative solvers for fixed points, startpoints and endpoints, with bound audits.

Every run returns an :class:`IterationLog`.  Each step records the realized
distance next to the bound the convergence argument predicts for it, so that a
log can be re-checked by :meth:`IterationLog.recheck` without the space.
Terminal points are re-classified before a log is returned; a mismatch raises
:class:`VerificationError`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from enum import Enum
from fractions import Fraction
from typing import Callable

from .functions import FunctionSpec, certify_comparison
from .hyperspace import hausdorff_value
from .multimaps import (
    SetValuedMap,
    SingleMap,
    approx_value,
    approx_value_single,
    classify_point,
    end_value,
    level_sets,
    mix_value,
    start_value,
)
from .space import INFINITY, FiniteQuasiSpace, as_rational, conjugate

__all__ = [
    "RunStatus",
    "Step",
    "IterationLog",
    "PairCheck",
    "VerificationError",
    "check_alpha_admissible",
    "check_alpha_gamma",
    "picard_solve",
    "check_psi_contraction",
    "Theorem29Report",
    "theorem29_equivalence",
    "feasibility_audit",
    "startpoint_solve",
    "endpoint_solve",
    "fixed_solve_sym",
    "SingleMapAudit",
    "single_map_approx_audit",
    "default_max_iter",
]


class VerificationError(AssertionError):
    """A solver claimed a terminal point that does not re-verify."""


class RunStatus(str, Enum):
    FIXED = "fixed-point-found"
    STARTPOINT = "startpoint-found"
    ENDPOINT = "endpoint-found"
    CYCLE = "cycle-detected"
    VIOLATED = "hypothesis-violated"
    MAX_ITER = "max-iter"


@dataclass(frozen=True)
class Step:
    n: int
    point: str
    successor: str
    distance: Fraction
    distance_bound: Fraction
    distance_ok: bool
    alpha: Fraction | None = None
    value: Fraction | None = None
    successor_value: Fraction | None = None
    feasibility_bound: Fraction | None = None
    value_bound: Fraction | None = None
    value_ok: bool | None = None
    remaining: Fraction | None = None
    remaining_bound: Fraction | None = None
    remaining_ok: bool | None = None


@dataclass(frozen=True)
class IterationLog:
    solver: str
    mode: str
    seed: str
    steps: tuple[Step, ...]
    status: RunStatus
    terminal: str | None
    hypotheses: tuple[tuple[str, bool], ...] = ()
    witness: str | None = None
    notes: tuple[str, ...] = ()
    unverified: tuple[str, ...] = ()
    windows_ok: bool | None = None

    @property
    def trajectory(self) -> tuple[str, ...]:
        return (self.seed,) + tuple(s.successor for s in self.steps)

    @property
    def found(self) -> bool:
        return self.status in (RunStatus.FIXED, RunStatus.STARTPOINT, RunStatus.ENDPOINT)

    def recheck(self) -> bool:
        """Recompute every logged flag from the logged numbers."""
        for s in self.steps:
            if s.distance_ok != (s.distance <= s.distance_bound):
                return False
            if s.value_ok is not None:
                want = (
                    s.successor_value <= s.feasibility_bound
                    and s.successor_value <= s.value_bound
                    and s.successor_value <= s.value
                )
                if s.value_ok != want:
                    return False
            if s.remaining_ok is not None and s.remaining_ok != (s.remaining <= s.remaining_bound):
                return False
        return True

    def all_bounds_hold(self) -> bool:
        flags = []
        for s in self.steps:
            flags.append(s.distance_ok)
            if s.alpha is not None:
                flags.append(s.alpha >= 1)
            if s.value_ok is not None:
                flags.append(s.value_ok)
            if s.remaining_ok is not None:
                flags.append(s.remaining_ok)
        if self.windows_ok is not None:
            flags.append(self.windows_ok)
        return all(flags)


def default_max_iter(space: FiniteQuasiSpace) -> int:
    return 10 * len(space)


# --------------------------------------------------------------------------
# pair checks


@dataclass(frozen=True)
class PairCheck:
    holds: bool
    violations: tuple[tuple[str, str], ...] = ()
    worst: tuple[str, str] | None = None
    lhs: Fraction | None = None
    rhs: Fraction | None = None
    ratio: Fraction | float | None = None
    certified: bool = True


def _ratio(lhs: Fraction, rhs: Fraction):
    if rhs == 0:
        return INFINITY if lhs > 0 else Fraction(0)
    return lhs / rhs


def _scan(pairs, lhs_rhs: Callable, certified: bool = True) -> PairCheck:
    bad = []
    worst = None
    for x, y in pairs:
        lhs, rhs = lhs_rhs(x, y)
        if lhs > rhs:
            bad.append((x, y))
            r = _ratio(lhs, rhs)
            if worst is None or r > worst[0]:
                worst = (r, (x, y), lhs, rhs)
    if worst is None:
        return PairCheck(True, certified=certified)
    r, pair, lhs, rhs = worst
    return PairCheck(False, tuple(bad), pair, lhs, rhs, r, certified)


def _pairs(space):
    return [(x, y) for x in space.labels for y in space.labels]


def check_alpha_admissible(space: FiniteQuasiSpace, T: SingleMap) -> PairCheck:
    """alpha(x, y) >= 1 must imply alpha(Tx, Ty) >= 1, for every ordered pair."""
    if T.alpha is None:
        raise ValueError("alpha-admissibility needs an alpha table")
    T.validate(space)
    bad = [
        (x, y)
        for x, y in _pairs(space)
        if T.a(x, y) >= 1 and T.a(T(x), T(y)) < 1
    ]
    if not bad:
        return PairCheck(True)
    x, y = bad[0]
    return PairCheck(False, tuple(bad), (x, y), T.a(x, y), T.a(T(x), T(y)))


def check_alpha_gamma(
    space: FiniteQuasiSpace, T: SingleMap, gamma: FunctionSpec, *, accept_heuristic: bool = False
) -> PairCheck:
    """alpha(x, y) d(Tx, Ty) <= gamma(d(x, y)) over all ordered pairs.

    ``gamma`` must be a certified comparison function; a table certified only
    by the ratio heuristic is accepted when ``accept_heuristic`` is set.
    """
    if T.alpha is None:
        raise ValueError("the (alpha, gamma) condition needs an alpha table")
    cert = certify_comparison(gamma)
    ok = cert.comparison or (accept_heuristic and cert.comparison_heuristic)
    if not ok:
        raise ValueError(f"gamma {gamma.kind} {gamma.params} is not a certified comparison function")
    T.validate(space)
    return _scan(
        _pairs(space),
        lambda x, y: (T.a(x, y) * space.d(T(x), T(y)), gamma(space.d(x, y))),
        certified=cert.comparison,
    )


# --------------------------------------------------------------------------
# Picard iteration


def _picard_hypotheses(space, T, gamma, x0, mode, accept_heuristic):
    cert = certify_comparison(gamma)
    hyp = {
        "T0": space.is_t0(),
        "gamma-comparison": cert.comparison or (accept_heuristic and cert.comparison_heuristic),
    }
    hyp["alpha-admissible"] = check_alpha_admissible(space, T).holds
    hyp["alpha-gamma-contractive"] = (
        check_alpha_gamma(space, T, gamma, accept_heuristic=True).holds if hyp["gamma-comparison"] else False
    )
    fwd = T.a(x0, T(x0)) >= 1
    bwd = T.a(T(x0), x0) >= 1
    hyp["seed"] = {"forward": fwd, "backward": bwd, "symmetric": fwd and bwd}[mode]
    return hyp


def picard_solve(
    space: FiniteQuasiSpace,
    T: SingleMap,
    gamma: FunctionSpec,
    x0: str,
    max_iter: int | None = None,
    mode: str = "forward",
    *,
    precheck: bool = True,
    accept_heuristic: bool = False,
    subsequence_variant: bool = False,
) -> IterationLog:
    """Iterate x_{n+1} = T x_n from ``x0`` until a fixed point or a revisit.

    ``mode`` selects the orientation of the logged step distances: d for
    ``forward``, d⁻¹ for ``backward`` and dˢ for ``symmetric``.  The
    backward run is the forward run on the conjugate space with alpha
    transposed.  With ``precheck`` the hypotheses (T0, comparison function,
    alpha-admissibility, the (alpha, gamma) inequality, seed condition) are
    checked first and the run stops with ``hypothesis-violated`` if any fails.
    ``subsequence_variant`` records the alpha-subsequence condition on limits
    as an unverified hypothesis; the iteration itself is unchanged.

    Each step n logs d(x_n, x_{n+1}) against gamma^n(d(x_0, x_1)) and
    alpha(x_n, x_{n+1}).  Afterwards every window n < m is checked against
    the telescoped bound sum_{i=n}^{m-1} gamma^i(d(x_0, x_1)).
    """
    if mode not in ("forward", "backward", "symmetric"):
        raise ValueError(f"mode must be forward, backward or symmetric, got {mode!r}")
    T.validate(space)
    if T.alpha is None:
        raise ValueError("picard_solve needs an alpha table")
    if max_iter is None:
        max_iter = default_max_iter(space)
    unverified = ("alpha-subsequence-condition",) if subsequence_variant else ()

    if mode == "backward":
        log = picard_solve(
            conjugate(space), T.transposed(), gamma, x0, max_iter, "forward",
            precheck=precheck, accept_heuristic=accept_heuristic,
            subsequence_variant=subsequence_variant,
        )
        log = replace(log, mode="backward")
        if log.status is RunStatus.FIXED and T(log.terminal) != log.terminal:
            raise VerificationError(f"{log.terminal!r} is not fixed by T")
        return log

    hyp = _picard_hypotheses(space, T, gamma, x0, mode, accept_heuristic)
    hyp_items = tuple(hyp.items())
    if precheck and not all(hyp.values()):
        failed = [k for k, v in hyp.items() if not v]
        return IterationLog("picard", mode, x0, (), RunStatus.VIOLATED, None, hyp_items,
                            witness=x0, notes=(f"failed: {', '.join(failed)}",), unverified=unverified)

    if mode == "forward":
        metric = space.d
    else:
        def metric(a, b):
            return max(space.d(a, b), space.d(b, a))

    traj = [x0]
    seen = {x0}
    steps: list[Step] = []
    status = RunStatus.MAX_ITER
    d0 = metric(x0, T(x0))
    bound = d0
    for n in range(max_iter + 1):
        x = traj[-1]
        y = T(x)
        if y == x:
            status = RunStatus.FIXED
            break
        if n == max_iter:
            break
        dist = metric(x, y)
        steps.append(Step(n, x, y, dist, bound, dist <= bound, alpha=T.a(x, y)))
        if y in seen:
            status = RunStatus.CYCLE
            traj.append(y)
            break
        seen.add(y)
        traj.append(y)
        bound = gamma(bound)

    windows_ok = None
    if steps:
        powers = [d0]
        for _ in range(len(traj)):
            powers.append(gamma(powers[-1]))
        windows_ok = all(
            metric(traj[a], traj[b]) <= sum(powers[a:b], Fraction(0))
            for a in range(len(traj))
            for b in range(a + 1, len(traj))
        )

    log = IterationLog("picard", mode, x0, tuple(steps), status, traj[-1] if status is RunStatus.FIXED else None,
                       hyp_items, unverified=unverified, windows_ok=windows_ok)
    if status is RunStatus.FIXED:
        if T(log.terminal) != log.terminal:
            raise VerificationError(f"{log.terminal!r} is not fixed by T")
        if not log.all_bounds_hold():
            log = replace(log, status=RunStatus.VIOLATED, witness=log.terminal,
                          notes=log.notes + ("a logged bound failed",))
    return log


# --------------------------------------------------------------------------
# psi-contractions of set-valued maps


def check_psi_contraction(space: FiniteQuasiSpace, F: SetValuedMap, psi: FunctionSpec) -> PairCheck:
    """H(Fx, Fy) <= psi(d(x, y)) for every ordered pair.

    ``certified`` on the result says whether psi is usc, below the identity
    and has t - psi(t) bounded away from zero at infinity.
    """
    F.validate(space)
    cert = certify_comparison(psi).contraction_modulus
    img = {x: [space.index(y) for y in space.points(F[x])] for x in space.labels}
    return _scan(
        _pairs(space),
        lambda x, y: (hausdorff_value(space, img[x], img[y]), psi(space.d(x, y))),
        certified=cert,
    )


@dataclass(frozen=True)
class Theorem29Report:
    precondition: PairCheck
    asserted: bool
    mix_value: Fraction | None = None
    mix_witness: str | None = None
    core: frozenset = frozenset()
    start_end_points: tuple[str, ...] = ()
    fixed_point: str | None = None
    level_diameters: tuple = ()
    gap_violations: tuple = ()  # (n, x, y) with d - psi(d) > 2/n inside C_n
    bug: str | None = None

    @property
    def consistent(self) -> bool:
        return self.bug is None


def theorem29_equivalence(space: FiniteQuasiSpace, F: SetValuedMap, psi: FunctionSpec, n_max: int = 8) -> Theorem29Report:
    """Check: zero mix value iff a unique point is both startpoint and endpoint.

    Only asserted when :func:`check_psi_contraction` holds with a certified
    psi, the space is T0 and every image is join-closed.  When the mix value
    is zero the zero level set must be one point x0 with Fx0 = {x0}.  Inside
    every level set C_n the gap d(x, y) - psi(d(x, y)) must stay <= 2/n.
    """
    from .hyperspace import cb_membership

    pre = check_psi_contraction(space, F, psi)
    applicable = pre.holds and pre.certified and space.is_t0() and all(cb_membership(space, F[x]) for x in space.labels)
    if not applicable:
        return Theorem29Report(pre, False)

    mix = approx_value(space, F, "mix")
    levels = level_sets(space, F, n_max)
    both = tuple(x for x in space.labels if start_value(space, F, x) == 0 and end_value(space, F, x) == 0)

    gaps = []
    for n in range(1, n_max + 1):
        C = space.points(levels[n])
        limit = Fraction(2, n)
        for x in C:
            for y in C:
                t = space.d(x, y)
                if t - psi(t) > limit:
                    gaps.append((n, x, y))

    bug = None
    fixed = None
    if mix.value == 0:
        if len(levels.core) != 1:
            bug = f"zero mix value but core is {sorted(levels.core)}"
        else:
            (x0,) = levels.core
            if both != (x0,):
                bug = f"core {x0!r} but start-and-endpoints are {list(both)}"
            elif F[x0] != frozenset({x0}):
                bug = f"{x0!r} is start and endpoint but F({x0}) = {sorted(F[x0])}"
            else:
                fixed = x0
    elif both:
        bug = f"positive mix value yet {list(both)} are start and endpoints"
    if gaps and bug is None:
        bug = f"level-set gap bound fails at {gaps[0]}"
    return Theorem29Report(pre, True, mix.value, mix.witness, levels.core, both, fixed,
                           levels.diameters, tuple(gaps), bug)


# --------------------------------------------------------------------------
# greedy startpoint / endpoint / fixed-point iterations


def _sym(space, a, b):
    return max(space.d(a, b), space.d(b, a))


def _greedy_parts(space, F, c, kind, strict):
    if kind == "start":
        def value(x):
            return start_value(space, F, x)

        def allowance(x, y):
            return space.d(x, y)

        def step_metric(x, y):
            return space.d(x, y)
    elif kind == "sym":
        def value(x):
            return mix_value(space, F, x)

        if strict:
            def allowance(x, y):
                return space.d(y, x)
        else:
            def allowance(x, y):
                return min(space.d(x, y), space.d(y, x))

        def step_metric(x, y):
            return _sym(space, x, y)
    else:
        raise ValueError(kind)
    return value, allowance, step_metric


def feasibility_audit(space: FiniteQuasiSpace, F: SetValuedMap, c, kind: str = "start", *, strict: bool = False) -> dict:
    """For each point x, the successors y in Fx allowed by the step condition.

    ``kind="start"``: f(y) <= c d(x, y) with f the start value.
    ``kind="end"``: the same on the conjugate space.
    ``kind="sym"``: the two-sided value of y against c min(d(x, y), d(y, x)),
    or c d(y, x) when ``strict``.
    Points mapped to an empty tuple are where the hypothesis fails.
    """
    c = as_rational(c)
    if kind == "end":
        return feasibility_audit(conjugate(space), F, c, "start")
    value, allowance, _ = _greedy_parts(space, F, c, kind, strict)
    vals = {x: value(x) for x in space.labels}
    return {
        x: tuple(y for y in space.points(F[x]) if vals[y] <= c * allowance(x, y))
        for x in space.labels
    }


def _greedy(space, F, c, x0, max_iter, kind, strict, solver, found_status):
    c = as_rational(c)
    if not 0 < c < 1:
        raise ValueError(f"c must lie in (0, 1), got {c}")
    F.validate(space)
    space.index(x0)
    if max_iter is None:
        max_iter = default_max_iter(space)
    value, allowance, step_metric = _greedy_parts(space, F, c, kind, strict)
    vals = {x: value(x) for x in space.labels}
    audit = {
        x: tuple(y for y in space.points(F[x]) if vals[y] <= c * allowance(x, y))
        for x in space.labels
    }
    infeasible = tuple(x for x in space.labels if not audit[x])
    hyp = (("universal-successor", not infeasible),)
    notes = []
    if infeasible:
        notes.append(f"no admissible successor at: {', '.join(infeasible)}")

    traj = [x0]
    steps_raw = []
    status = RunStatus.MAX_ITER
    witness = None
    for n in range(max_iter + 1):
        x = traj[-1]
        # stop before choosing a successor: a point with value 0 is done
        if vals[x] == 0:
            status = found_status
            break
        if n == max_iter:
            break
        options = audit[x]
        if not options:
            status = RunStatus.VIOLATED
            witness = x
            notes.append(f"stuck at {x}: no successor meets the step condition")
            break
        y = min(options, key=lambda p: (vals[p], space.index(p)))
        steps_raw.append((n, x, y))
        if y in traj:
            status = RunStatus.CYCLE
            witness = y
            traj.append(y)
            break
        traj.append(y)

    terminal = traj[-1] if status is found_status else None
    steps = []
    if steps_raw:
        d0 = step_metric(traj[0], traj[1])
        f0 = vals[traj[0]]
        for n, x, y in steps_raw:
            cn = c**n
            dist = step_metric(x, y)
            dbound = cn * d0
            feas = c * allowance(x, y)
            vbound = cn * f0
            v_ok = vals[y] <= feas and vals[y] <= vbound and vals[y] <= vals[x]
            rem = rbound = rem_ok = None
            if terminal is not None:
                rem = step_metric(x, terminal)
                rbound = cn / (1 - c) * d0
                rem_ok = rem <= rbound
            steps.append(Step(n, x, y, dist, dbound, dist <= dbound, None, vals[x], vals[y],
                              feas, vbound, v_ok, rem, rbound, rem_ok))
    if terminal is not None and audit[terminal] == ():
        notes.append(f"terminal point {terminal} has no admissible successor; stopped on value 0 first")

    log = IterationLog(solver, kind, x0, tuple(steps), status, terminal, hyp, witness, tuple(notes))
    if log.found and not log.all_bounds_hold():
        log = replace(log, status=RunStatus.VIOLATED, witness=terminal,
                      notes=log.notes + ("a logged bound failed",))
    return log


def startpoint_solve(space: FiniteQuasiSpace, F: SetValuedMap, c, x0: str, max_iter: int | None = None) -> IterationLog:
    """Greedy descent of f(x) = H({x}, Fx) towards a startpoint.

    From x_n, stop if f(x_n) = 0.  Otherwise move to the y in F x_n with the
    smallest f(y) among those with f(y) <= c d(x_n, y) (ties by label
    order); if there is none, stop with ``hypothesis-violated``.
    """
    log = _greedy(space, F, c, x0, max_iter, "start", False, "startpoint", RunStatus.STARTPOINT)
    if log.status is RunStatus.STARTPOINT and not classify_point(space, F, log.terminal).startpoint:
        raise VerificationError(f"{log.terminal!r} is not a startpoint")
    return log


def endpoint_solve(space: FiniteQuasiSpace, F: SetValuedMap, c, x0: str, max_iter: int | None = None) -> IterationLog:
    """Endpoint search: the startpoint descent run on the conjugate space."""
    log = _greedy(conjugate(space), F, c, x0, max_iter, "start", False, "endpoint", RunStatus.ENDPOINT)
    log = replace(log, mode="end")
    if log.status is RunStatus.ENDPOINT and not classify_point(space, F, log.terminal).endpoint:
        raise VerificationError(f"{log.terminal!r} is not an endpoint")
    return log


def fixed_solve_sym(
    space: FiniteQuasiSpace, F: SetValuedMap, c, x0: str, max_iter: int | None = None, *, strict: bool = False
) -> IterationLog:
    """Greedy descent of the two-sided value max_{y in Fx} dˢ(x, y).

    A successor y of x must satisfy value(y) <= c min(d(x, y), d(y, x)); with
    ``strict`` the allowance is c d(y, x) instead.  Requires a T0 space, so a
    point of value 0 has Fx = {x}.
    """
    if not space.is_t0():
        raise ValueError("fixed_solve_sym needs a T0 space")
    log = _greedy(space, F, c, x0, max_iter, "sym", strict, "fixed-sym", RunStatus.FIXED)
    if strict:
        log = replace(log, mode="sym-strict")
    if log.status is RunStatus.FIXED:
        pc = classify_point(space, F, log.terminal)
        if not (pc.startpoint and pc.endpoint and pc.fixed):
            raise VerificationError(f"{log.terminal!r} is not a fixed point")
    return log


# --------------------------------------------------------------------------
# single-valued maps


@dataclass(frozen=True)
class SingleMapAudit:
    contraction: PairCheck
    asserted: bool
    approx_start: Fraction | None = None
    approx_end: Fraction | None = None
    chain: tuple = ()  # inf d(x,fx), inf over f(X) of d(y,fy), inf psi(d(x,fx))
    fixed_points: tuple[str, ...] = ()
    bug: str | None = None

    @property
    def consistent(self) -> bool:
        return self.bug is None


def single_map_approx_audit(space: FiniteQuasiSpace, f: SingleMap, psi: FunctionSpec) -> SingleMapAudit:
    """d(fx, fy) <= psi(d(x, y)) everywhere should force a fixed point.

    When the inequality holds, psi is a certified modulus and the space is
    T0, both approximate values must be 0 and some x must satisfy fx = x.
    """
    f.validate(space)
    cert = certify_comparison(psi).contraction_modulus
    check = _scan(_pairs(space), lambda x, y: (space.d(f(x), f(y)), psi(space.d(x, y))), certified=cert)
    if not (check.holds and cert and space.is_t0()):
        return SingleMapAudit(check, False)

    s = approx_value_single(space, f, "start").value
    e = approx_value_single(space, f, "end").value
    image = set(f.table.values())
    chain = (
        s,
        min(space.d(y, f(y)) for y in space.points(image)),
        min(psi(space.d(x, f(x))) for x in space.labels),
    )
    fixed = tuple(x for x in space.labels if f(x) == x)
    bug = None
    if s != 0 or e != 0:
        bug = f"approximate values are {s} and {e}, expected 0"
    elif not fixed:
        bug = "no fixed point"
    elif not chain[0] <= chain[1]:
        bug = f"infimum chain broken: {chain}"
    return SingleMapAudit(check, True, s, e, chain, fixed, bug)

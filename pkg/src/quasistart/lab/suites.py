"""Randomized hypothesis => conclusion suites.

Each suite draws instances from a seeded generator, sorts them into bins by
which hypotheses they meet (checked exhaustively), and checks the conclusion
on the applicable ones.  Failing instances are shrunk and kept.  Draw ``i`` of
a run with seed ``s`` uses ``numpy.random.default_rng([s, i])``, so every
instance can be regenerated from its provenance alone.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable

import numpy as np

from ..fileformat import instance_to_dict
from ..functions import FunctionSpec
from ..hyperspace import hausdorff, hyperspace_axiom_check
from ..instance import LabInstance
from ..multimaps import eps_points, end_value, start_value
from ..sequences import (
    PreconditionError,
    SequenceTrace,
    check_hierarchy,
    classify_cauchy,
    classify_convergence,
    semicontinuity_probe,
)
from ..solvers import (
    RunStatus,
    _picard_hypotheses,
    endpoint_solve,
    feasibility_audit,
    fixed_solve_sym,
    picard_solve,
    single_map_approx_audit,
    startpoint_solve,
    theorem29_equivalence,
    check_psi_contraction,
)
from ..space import conjugate
from .generate import chain_instance, cluster_set_map, cluster_single_map, cluster_space, random_set_map, random_single_map, random_space, random_trace
from .shrink import shrink

__all__ = ["Suite", "SUITES", "SuiteReport", "Counterexample", "run_suite", "replay"]

APPLICABLE = "applicable"
SKIPPED = "hypotheses-fail"


@dataclass(frozen=True)
class Suite:
    name: str
    draw: Callable[[np.random.Generator, int], LabInstance]
    classify: Callable[[LabInstance], str]
    check: Callable[[LabInstance], "str | None"]
    checked_bins: tuple[str, ...] = (APPLICABLE,)
    max_size: int | None = None
    counted_bins: tuple[str, ...] = (APPLICABLE,)


@dataclass(frozen=True)
class Counterexample:
    message: str
    instance: LabInstance
    original: LabInstance

    def to_dict(self) -> dict:
        return {
            "message": self.message,
            "instance": instance_to_dict(self.instance),
            "original": instance_to_dict(self.original),
        }


@dataclass(frozen=True)
class SuiteReport:
    suite_id: str
    seed: int
    size_bounds: tuple[int, int]
    trials: int
    draws: int
    applicable: int
    passes: int
    counterexamples: tuple[Counterexample, ...] = ()
    bins: tuple[tuple[str, int], ...] = ()
    wall_time: float = field(default=0.0, compare=False)

    @property
    def ok(self) -> bool:
        return not self.counterexamples and self.applicable >= self.trials

    def to_dict(self, include_timing: bool = False) -> dict:
        doc = {
            "suite": self.suite_id,
            "seed": self.seed,
            "size_bounds": list(self.size_bounds),
            "trials": self.trials,
            "draws": self.draws,
            "applicable": self.applicable,
            "passes": self.passes,
            "bins": dict(self.bins),
            "counterexamples": [c.to_dict() for c in self.counterexamples],
        }
        if include_timing:
            doc["wall_time"] = round(self.wall_time, 3)
        return doc


def _guard(check):
    def wrapped(inst):
        try:
            return check(inst)
        except Exception as exc:  # a crash is a finding, not a harness failure
            return f"{type(exc).__name__}: {exc}"
    return wrapped


_CS = (Fraction(1, 4), Fraction(1, 3), Fraction(1, 2), Fraction(2, 3), Fraction(3, 4))


def _pick(rng, seq):
    return seq[int(rng.integers(len(seq)))]


# ---------------------------------------------------------------- Picard


def _draw_picard(rng, n):
    if rng.random() < 0.5:
        space, T, x0, c = chain_instance(rng, n)
        return LabInstance(space, f=T, gamma=FunctionSpec.linear(c), x0=x0)
    space = random_space(rng, n, t0=True)
    T = random_single_map(rng, space)
    x0 = _pick(rng, space.labels)
    return LabInstance(space, f=T, gamma=FunctionSpec.linear(_pick(rng, _CS)), x0=x0)


def _picard_suite(mode):
    def classify(inst):
        hyp = _picard_hypotheses(inst.space, inst.f, inst.gamma, inst.x0, mode, False)
        return APPLICABLE if all(hyp.values()) else SKIPPED

    def check(inst):
        log = picard_solve(inst.space, inst.f, inst.gamma, inst.x0, mode=mode)
        if log.status is not RunStatus.FIXED:
            return f"status {log.status.value} from {inst.x0}"
        if not log.recheck():
            return "logged flags do not recompute"
        if not log.all_bounds_hold():
            return "a logged step bound fails"
        return None

    return classify, check


# ---------------------------------------------------------------- psi-contractions


def _draw_setmap(rng, n, psi_kind="linear"):
    # a third plain random maps, the rest clustered ones where contractions are common
    if rng.random() < 1 / 3:
        space = random_space(rng, n, t0=True, zero_prob=0.2)
        F = random_set_map(rng, space)
    else:
        space, clusters = cluster_space(rng, n)
        F = cluster_set_map(rng, clusters)
    if psi_kind == "linear":
        psi = FunctionSpec.linear(_pick(rng, (Fraction(0),) + _CS + (Fraction(9, 10),)))
    else:
        k = _pick(rng, _CS)
        knee = Fraction(int(rng.integers(1, 4)))
        psi = FunctionSpec.table([(0, 0), (knee, k * knee), (knee + 1, k * knee + Fraction(1, 2) * (1 - k))])
    return LabInstance(space, F, psi=psi)


def _classify_t29(inst):
    pre = check_psi_contraction(inst.space, inst.F, inst.psi)
    return APPLICABLE if pre.holds and pre.certified else SKIPPED


def _check_t29(inst):
    rep = theorem29_equivalence(inst.space, inst.F, inst.psi)
    if not rep.asserted:
        return "precondition held but the equivalence was not asserted"
    return rep.bug


def _check_c30(inst):
    rep = theorem29_equivalence(inst.space, inst.F, inst.psi)
    if rep.mix_value == 0:
        fixed = [x for x in inst.space.labels if x in inst.F[x]]
        if not fixed:
            return "zero mix value but no fixed point"
    return None


def _draw_single(rng, n):
    if rng.random() < 0.5:
        space = random_space(rng, n, t0=True, zero_prob=0.2)
        f = random_single_map(rng, space, with_alpha=False)
    else:
        space, clusters = cluster_space(rng, n)
        f = cluster_single_map(rng, clusters)
    psi = FunctionSpec.linear(_pick(rng, _CS + (Fraction(9, 10),)))
    return LabInstance(space, f=f, psi=psi)


def _classify_t32(inst):
    audit = single_map_approx_audit(inst.space, inst.f, inst.psi)
    return APPLICABLE if audit.asserted else SKIPPED


def _check_t32(inst):
    return single_map_approx_audit(inst.space, inst.f, inst.psi).bug


# ---------------------------------------------------------------- greedy solvers


def _draw_greedy(rng, n, t0=None):
    if t0 is None:
        t0 = bool(rng.random() < 0.5)
    space = random_space(rng, n, t0=t0)
    styles = ("sink", "sink", "uniform", "constant", "clustered")
    F = random_set_map(rng, space, _pick(rng, styles))
    return LabInstance(space, F, c=_pick(rng, _CS), x0=_pick(rng, space.labels))


def _greedy_suite(kind, solve, found, value_fn, strict=False):
    def classify(inst):
        if kind == "sym" and not inst.space.is_t0():
            return SKIPPED
        audit = feasibility_audit(inst.space, inst.F, inst.c, kind, strict=strict)
        stuck = [x for x, ys in audit.items() if not ys]
        if not stuck:
            return APPLICABLE
        if all(value_fn(inst.space, inst.F, x) == 0 for x in stuck):
            return "stuck-only-at-solutions"
        return SKIPPED

    def check(inst):
        if not any(value_fn(inst.space, inst.F, x) == 0 for x in inst.space.labels):
            return "no solution point exists"
        for x0 in inst.space.labels:
            log = solve(inst.space, inst.F, inst.c, x0)
            if log.status is not found:
                return f"status {log.status.value} from seed {x0}"
            if not log.recheck() or not log.all_bounds_hold():
                return f"bound failure from seed {x0}"
        return None

    return classify, check


def _sym_value(space, F, x):
    return max(start_value(space, F, x), end_value(space, F, x))


def _solve_sym(space, F, c, x0):
    return fixed_solve_sym(space, F, c, x0)


# ---------------------------------------------------------------- epsilon points


def _draw_any_setmap(rng, n):
    space = random_space(rng, n, t0=bool(rng.random() < 0.7))
    return LabInstance(space, random_set_map(rng, space))


def _lemma_check(side):
    value_fn = start_value if side == "start" else end_value

    def check(inst):
        for x in inst.space.labels:
            v = value_fn(inst.space, inst.F, x)
            if v == 0:
                for eps in (Fraction(1, 2), Fraction(1, 10**6)):
                    if x not in eps_points(inst.space, inst.F, eps, side):
                        return f"{x} has value 0 but is not an {eps}-point"
            else:
                eps = min(v, Fraction(1, 2))
                if x in eps_points(inst.space, inst.F, eps, side):
                    return f"{x} has value {v} but is an {eps}-point"
        return None

    return check


# ---------------------------------------------------------------- sequences


def _draw_trace(rng, n):
    space = random_space(rng, n, t0=bool(rng.random() < 0.6))
    return LabInstance(space, trace=random_trace(rng, space))


def _classify_trace(inst):
    rep = check_hierarchy(inst.space, inst.trace)
    return "printed-5ii-differs" if rep.printed_5ii_discrepancy else APPLICABLE


def _check_hierarchy(inst):
    rep = check_hierarchy(inst.space, inst.trace)
    if rep.violations:
        return "; ".join(rep.violations)
    a = classify_cauchy(inst.space, inst.trace, "left-K")
    b = classify_cauchy(conjugate(inst.space), inst.trace, "right-K")
    if a != b:
        return f"left-K {a} differs from conjugate right-K {b}"
    for cand in inst.space.labels:
        v = {m: classify_convergence(inst.space, inst.trace, cand, m).rank for m in ("d", "d-inverse", "d-sym")}
        if v["d-sym"] != min(v["d"], v["d-inverse"]):
            return f"d-sym convergence to {cand} disagrees with the one-sided verdicts"
    return None


def _draw_probe(rng, n):
    space = random_space(rng, n, t0=bool(rng.random() < 0.5))
    cand = _pick(rng, space.labels)
    backward = bool(rng.random() < 0.5)
    near = [y for y in space.labels if (space.d(y, cand) if backward else space.d(cand, y)) == 0]
    head = [_pick(rng, space.labels) for _ in range(int(rng.integers(0, 4)))]
    tail = [_pick(rng, near) for _ in range(int(rng.integers(1, 5)))]
    trace = SequenceTrace(tuple(head + tail), len(head))
    return LabInstance(space, trace=trace, candidate=cand,
                       provenance={"topology": "backward" if backward else "forward"})


def _check_probe(inst):
    for topology in ("forward", "backward"):
        for fixed in inst.space.labels:
            for vary in ("first", "second"):
                try:
                    v = semicontinuity_probe(inst.space, fixed, inst.trace, inst.candidate,
                                             topology=topology, vary=vary)
                except PreconditionError:
                    continue
                if not v.holds:
                    return f"{v.note} probe fails: fixed={fixed}, {topology}, vary {vary}"
    return None


# ---------------------------------------------------------------- hyperspace


def _draw_hyper(rng, n):
    return LabInstance(random_space(rng, n, t0=bool(rng.random() < 0.5)))


def _check_hyper(inst):
    space = inst.space
    labels = space.labels
    family = [c for k in range(1, len(labels) + 1) for c in combinations(labels, k)]
    diag = hyperspace_axiom_check(space, family, check_t0=False)
    if not diag.ok:
        return str(diag.violations[0])
    for x in labels:
        for y in labels:
            if hausdorff(space, [x], [y]).value != space.d(x, y):
                return f"singleton reduction fails at ({x}, {y})"
        for A in family:
            if hausdorff(space, [x], A).value != max(space.d(x, a) for a in A):
                return f"one-point reduction fails at {x}, {A}"
            if hausdorff(space, A, [x]).value != max(space.d(a, x) for a in A):
                return f"dual one-point reduction fails at {A}, {x}"
    return None


# ---------------------------------------------------------------- duality


def _check_duality(inst):
    a = endpoint_solve(inst.space, inst.F, inst.c, inst.x0)
    b = startpoint_solve(conjugate(inst.space), inst.F, inst.c, inst.x0)
    if a.steps != b.steps or a.terminal != b.terminal:
        return "endpoint run differs from startpoint run on the conjugate"
    pairs = {RunStatus.ENDPOINT: RunStatus.STARTPOINT}
    if pairs.get(a.status, a.status) != b.status:
        return f"statuses differ: {a.status.value} vs {b.status.value}"
    return None


def _always(inst):
    return APPLICABLE


def _build() -> dict[str, Suite]:
    s = {}
    for name, mode in (("theorem13", "forward"), ("corollary14", "backward"), ("corollary15", "symmetric")):
        cl, ch = _picard_suite(mode)
        s[name] = Suite(name, _draw_picard, cl, ch)
    s["theorem29"] = Suite("theorem29", _draw_setmap, _classify_t29, _check_t29)
    s["theorem31"] = Suite("theorem31", _draw_setmap, _classify_t29, _check_t29)
    s["theorem29-table"] = Suite("theorem29-table", lambda r, n: _draw_setmap(r, n, "table"), _classify_t29, _check_t29)
    s["corollary30"] = Suite("corollary30", _draw_setmap, _classify_t29, _check_c30)
    s["theorem32"] = Suite("theorem32", _draw_single, _classify_t32, _check_t32)
    both = (APPLICABLE, "stuck-only-at-solutions")
    cl, ch = _greedy_suite("start", startpoint_solve, RunStatus.STARTPOINT, start_value)
    s["theorem35"] = Suite("theorem35", _draw_greedy, cl, ch, both)
    cl, ch = _greedy_suite("end", endpoint_solve, RunStatus.ENDPOINT, end_value)
    s["corollary37"] = Suite("corollary37", _draw_greedy, cl, ch, both)
    cl, ch = _greedy_suite("sym", _solve_sym, RunStatus.FIXED, _sym_value)
    s["corollary38"] = Suite("corollary38", lambda r, n: _draw_greedy(r, n, True), cl, ch, both)
    s["lemma22"] = Suite("lemma22", _draw_any_setmap, _always, _lemma_check("start"))
    s["lemma23"] = Suite("lemma23", _draw_any_setmap, _always, _lemma_check("end"))
    # the printed pairing is reported in its own bin but every trace is tested
    both5 = (APPLICABLE, "printed-5ii-differs")
    s["remark5"] = Suite("remark5", _draw_trace, _classify_trace, _check_hierarchy, both5, counted_bins=both5)
    s["lemma8"] = Suite("lemma8", _draw_probe, _always, _check_probe)
    s["hyperspace"] = Suite("hyperspace", _draw_hyper, _always, _check_hyper, max_size=4)
    s["duality"] = Suite("duality", lambda r, n: _draw_greedy(r, n, False), _always, _check_duality)
    return s


SUITES: dict[str, Suite] = _build()


def _draw(suite: Suite, seed: int, i: int, size_bounds) -> LabInstance:
    rng = np.random.default_rng([seed, i])
    lo, hi = size_bounds
    n = int(rng.integers(lo, hi + 1))
    inst = suite.draw(rng, n)
    prov = {"suite": suite.name, "seed": seed, "draw": i, "n": n, **inst.provenance}
    return LabInstance(inst.space, inst.F, inst.f, inst.gamma, inst.psi, inst.c, inst.x0,
                       inst.trace, inst.candidate, prov)


def replay(instance: LabInstance, suite_id: str) -> str | None:
    """Re-run a suite's conclusion check on one instance."""
    return _guard(SUITES[suite_id].check)(instance)


def run_suite(
    suite_id: str,
    trials: int = 100,
    seed: int = 0,
    size_bounds: tuple[int, int] = (1, 6),
    max_draws: int | None = None,
) -> SuiteReport:
    """Draw until ``trials`` instances meet the suite's hypotheses.

    Instances in any of the suite's checked bins are tested; only those in
    its counted bins (normally just ``applicable``) count towards ``trials``.  Drawing stops after
    ``max_draws`` (default ``400 * trials``) in any case.
    """
    try:
        suite = SUITES[suite_id]
    except KeyError:
        raise ValueError(f"unknown suite {suite_id!r}; known: {sorted(SUITES)}") from None
    lo, hi = size_bounds
    if suite.max_size is not None:
        hi = min(hi, suite.max_size)
    if not 1 <= lo <= hi:
        raise ValueError(f"bad size bounds {size_bounds}")
    if max_draws is None:
        max_draws = 400 * trials
    classify = _guard(suite.classify)
    check = _guard(suite.check)

    start = time.perf_counter()
    bins: dict[str, int] = {}
    applicable = passes = draws = 0
    found = []
    while applicable < trials and draws < max_draws:
        inst = _draw(suite, seed, draws, (lo, hi))
        draws += 1
        label = classify(inst)
        if label not in (APPLICABLE, SKIPPED) and label not in suite.checked_bins:
            label = f"error: {label}"
        bins[label] = bins.get(label, 0) + 1
        if label not in suite.checked_bins:
            continue
        if label in suite.counted_bins:
            applicable += 1
        message = check(inst)
        if message is None:
            passes += 1
        else:
            small = shrink(inst, check)
            found.append(Counterexample(check(small), small, inst))
    elapsed = time.perf_counter() - start
    return SuiteReport(suite_id, seed, (lo, hi), trials, draws, applicable, passes,
                       tuple(found), tuple(sorted(bins.items())), elapsed)

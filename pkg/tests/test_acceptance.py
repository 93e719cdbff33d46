"""Acceptance criteria, one test per criterion.

Each test records a PASS/FAIL line before asserting; the lines are printed in
the terminal summary (see conftest.py) and by running this file directly.
"""

import json
import time
from fractions import Fraction

import pytest

import oracle
from quasistart.cli import main
from quasistart.fileformat import dump_instance, dumps, parse_input
from quasistart.hyperspace import hausdorff
from quasistart.lab import CORPUS_IDS, corpus, run_suite
from quasistart.multimaps import approx_value, classify_all, eps_points, value_table
from quasistart.solvers import feasibility_audit, startpoint_solve

RESULTS = []


def record(cid, ok, text):
    RESULTS.append(f"criterion {cid:<3} {'PASS' if ok else 'FAIL'}  {text}")
    return ok


def timed(fn, *args, **kwargs):
    t = time.perf_counter()
    out = fn(*args, **kwargs)
    return out, time.perf_counter() - t


def suite_line(rep, secs):
    return (f"{rep.suite_id}: {rep.applicable} applicable of {rep.draws} draws, "
            f"{len(rep.counterexamples)} counterexamples, {secs:.1f}s")


def test_c1_example27_golden_values():
    def go():
        inst = corpus("example27")
        rows = classify_all(inst.space, inst.F)
        return (
            {r.point for r in rows if r.startpoint},
            {r.point for r in rows if r.endpoint},
            approx_value(inst.space, inst.F, "start").value,
            approx_value(inst.space, inst.F, "end").value,
        )

    got, secs = timed(go)
    want = ({"0"}, set(), Fraction(0), Fraction(1))
    ok = got == want and all(isinstance(v, Fraction) for v in got[2:]) and secs < 1
    record("1", ok, f"example27 startpoints {sorted(got[0])}, endpoints {sorted(got[1])}, "
                    f"approx start {got[2]}, approx end {got[3]} ({secs:.3f}s)")
    assert ok


def test_c2_remark21_fixed_not_startpoint():
    inst = corpus("remark21")
    X = inst.space.labels
    H = hausdorff(inst.space, ["1"], X).value
    ok = H == 1 and "1" in inst.F["1"]
    record("2", ok, f"remark21 H({{1}}, X) = {H} with 1 in F1")
    assert ok


def test_c3_example36_runs(tmp_path, capsys):
    path = tmp_path / "e36.json"
    path.write_text(dump_instance(corpus("example36")))
    terminals = {}
    start = time.perf_counter()
    for x0 in ("1", "1/2", "1/3"):
        code = main(["solve", "startpoint", str(path), "--seed-point", x0, "--output", "json"])
        doc = json.loads(capsys.readouterr().out)
        terminals[x0] = (code, doc["terminal"], doc["infeasible"])
    cli_secs = time.perf_counter() - start
    ok = all(v == (0, "1/3", ["1/3"]) for v in terminals.values()) and cli_secs < 1

    family_ok = True
    worst = 0.0
    for n in range(3, 9):
        t = time.perf_counter()
        inst = corpus("example36-family", n)
        d = oracle.dist_table(inst.space.labels, inst.space.dist)
        table = {x: sorted(inst.F[x]) for x in inst.space.labels}
        last = str(Fraction(1, n))
        for x0 in inst.space.labels:
            log = startpoint_solve(inst.space, inst.F, inst.c, x0)
            traj, status = oracle.greedy_startpoint(list(inst.space.labels), d, table, inst.c, x0)
            family_ok &= log.terminal == last and tuple(traj) == log.trajectory and status == "startpoint"
        audit = feasibility_audit(inst.space, inst.F, inst.c, "start")
        family_ok &= [x for x, ys in audit.items() if not ys] == [last]
        worst = max(worst, time.perf_counter() - t)
    ok = ok and family_ok and worst < 1
    record("3", ok, f"example36 seeds -> {sorted({v[1] for v in terminals.values()})}, "
                    f"family X_3..X_8 end at 1/n with audit infeasible only at 1/n "
                    f"(cli {cli_secs:.2f}s, slowest n {worst:.3f}s)")
    assert ok


def _example28_sets(N):
    inst = corpus("example28", N)
    values = value_table(inst.space, inst.F, "start")
    probes = sorted({Fraction(1, N), Fraction(1, N + 1), Fraction(1, 2 * N), Fraction(1, N - 1),
                     Fraction(1, 2), Fraction(3, 2 * N), Fraction(2, 3)})
    return inst, {e: eps_points(inst.space, inst.F, e, values=values) for e in probes}


@pytest.mark.parametrize("N", [5, 50, 500])
def test_c4a_example28_contains_small_points(N):
    (inst, sets), secs = timed(_example28_sets, N)
    ok = secs < 1
    for eps, pts in sets.items():
        ok &= all(str(Fraction(1, k)) in pts for k in range(1, N + 1) if Fraction(1, k) < eps)
    record("4a", ok, f"X_{N}: eps_points contains every 1/k < eps ({len(sets)} thresholds, {secs:.2f}s)")
    assert ok


@pytest.mark.parametrize("N", [5, 50, 500])
def test_c4b_example28_nonempty_iff_eps_above_1_over_N(N):
    # 1/N has start value 0 on every truncation, so no threshold leaves the set empty
    (inst, sets), secs = timed(_example28_sets, N)
    bad = [e for e, pts in sets.items() if bool(pts) != (e > Fraction(1, N))]
    ok = not bad and secs < 1
    record("4b", ok, f"X_{N}: eps_points nonempty exactly when eps > 1/{N}; "
                     f"mismatch at eps in {[str(e) for e in bad]} ({secs:.2f}s)")
    assert ok


def test_c5_picard_suite():
    rep, secs = timed(run_suite, "theorem13", trials=500, seed=1, size_bounds=(1, 6))
    ok = rep.ok and rep.passes == rep.applicable == 500 and secs < 30
    record("5", ok, suite_line(rep, secs))
    assert ok


def test_c6_theorem29_suite():
    rep, secs = timed(run_suite, "theorem29", trials=500, seed=1, size_bounds=(1, 6))
    ok = rep.ok and rep.passes == rep.applicable == 500 and secs < 60
    record("6", ok, suite_line(rep, secs))
    assert ok


def test_c7_hyperspace_suite():
    rep, secs = timed(run_suite, "hyperspace", trials=100, seed=1, size_bounds=(1, 4))
    ok = rep.ok and rep.passes == 100 and secs < 30
    record("7", ok, suite_line(rep, secs))
    assert ok


def test_c8_remark5_suite():
    rep, secs = timed(run_suite, "remark5", trials=1000, seed=1, size_bounds=(1, 6))
    ok = rep.ok and rep.passes == rep.applicable == 1000 and secs < 30
    record("8", ok, suite_line(rep, secs))
    assert ok


def test_c9_duality_suite():
    rep, secs = timed(run_suite, "duality", trials=100, seed=1, size_bounds=(1, 6))
    ok = rep.ok and rep.passes == 100 and secs < 10
    record("9", ok, suite_line(rep, secs))
    assert ok


def test_c10_round_trip_and_determinism(capsys):
    trips = all(dump_instance(parse_input(dump_instance(corpus(i, 7)))) == dump_instance(corpus(i, 7))
                for i in CORPUS_IDS)
    same = all(dumps(run_suite(s, trials=40, seed=9).to_dict()) == dumps(run_suite(s, trials=40, seed=9).to_dict())
               for s in ("theorem13", "theorem29", "theorem35", "remark5"))
    outs = []
    for _ in range(2):
        main(["lab", "run", "corollary38", "--trials", "40", "--seed", "2", "--output", "json"])
        outs.append(capsys.readouterr().out)
    ok = trips and same and outs[0] == outs[1]
    record("10", ok, f"corpus round trip {'exact' if trips else 'broken'}, "
                     f"suite reports {'byte-identical' if same and outs[0] == outs[1] else 'differ'} per seed")
    assert ok


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))

from fractions import Fraction

import numpy as np
import pytest

import oracle
from quasistart.lab import CORPUS_IDS, SUITES, corpus, gen_space, replay, run_suite, shrink
from quasistart.lab.generate import chain_instance, cluster_space, enforce_t0, metric_closure
from quasistart.lab.suites import Suite
from quasistart.space import validate_space


def valid(space, t0=False):
    d = oracle.dist_table(space.labels, space.dist)
    return oracle.is_quasi_pseudometric(space.labels, d) and (not t0 or oracle.is_t0(space.labels, d))


@pytest.mark.parametrize("n", [1, 2, 5, 9])
@pytest.mark.parametrize("t0", [True, False])
def test_gen_space_is_valid_and_deterministic(n, t0):
    for seed in range(5):
        a = gen_space(seed, n, t0=t0)
        assert len(a) == n
        assert valid(a, t0)
        assert a.dist == gen_space(seed, n, t0=t0).dist
    with pytest.raises(ValueError):
        gen_space(0, 0)


def test_closure_and_t0_repair():
    big = Fraction(9)
    m = [[Fraction(0), Fraction(1), big], [big, Fraction(0), Fraction(1)], [Fraction(0), Fraction(0), Fraction(0)]]
    closed = metric_closure(m)
    assert closed[0][2] == 2 and closed[1][0] == 1
    assert validate_space(closed).ok
    repaired = enforce_t0([[Fraction(0)] * 2 for _ in range(2)])
    assert validate_space(repaired, require_t0=True).ok


def test_cluster_and_chain_generators():
    for seed in range(20):
        rng = np.random.default_rng(seed)
        space, clusters = cluster_space(rng, 6)
        assert sorted(x for c in clusters for x in c) == sorted(space.labels)
        assert valid(space, True)
        space, T, x0, c = chain_instance(rng, 5)
        assert 0 < c < 1 and x0 in space.labels
        assert valid(space)


def test_corpus_tables():
    r21 = corpus("remark21")
    assert [list(r) for r in r21.space.dist] == [[0, 0], [1, 0]]
    e27 = corpus("example27")
    assert [list(r) for r in e27.space.dist] == [[0, 0, 0], [1, 0, 1], [2, 2, 0]]
    assert e27.F["0"] == {"1", "2"}
    e36 = corpus("example36")
    assert list(e36.space.labels) == ["1", "1/2", "1/3"]
    assert e36.space.d("1", "1/3") == Fraction(2, 3) and e36.space.d("1/3", "1") == 0
    assert e36.c == Fraction(1, 2)
    e28 = corpus("example28", 4)
    assert e28.space.d("1/2", "1/4") == Fraction(1, 4)
    for name in CORPUS_IDS:
        inst = corpus(name, 5)
        assert valid(inst.space)
    with pytest.raises(ValueError):
        corpus("example28", 0)
    with pytest.raises(ValueError):
        corpus("example28")
    with pytest.raises(ValueError):
        corpus("nope")


def test_suite_runs_are_deterministic():
    a = run_suite("theorem35", trials=30, seed=3)
    b = run_suite("theorem35", trials=30, seed=3)
    assert a == b and a.to_dict() == b.to_dict() and a.ok
    assert "wall_time" not in a.to_dict() and "wall_time" in a.to_dict(include_timing=True)
    assert run_suite("theorem35", trials=30, seed=4).to_dict() != a.to_dict()


def test_run_suite_rejects_bad_arguments():
    with pytest.raises(ValueError):
        run_suite("theorem99")
    with pytest.raises(ValueError):
        run_suite("theorem35", size_bounds=(4, 2))


def test_every_registered_suite_passes_quickly():
    for name in SUITES:
        rep = run_suite(name, trials=15, seed=11)
        assert rep.counterexamples == (), (name, rep.counterexamples[0].message)
        assert rep.applicable >= 15, name


def _too_many_points(inst):
    return "too big" if len(inst.space) >= 3 else None


def test_shrink_reaches_a_minimal_failure():
    from quasistart.instance import LabInstance

    inst = LabInstance(gen_space(5, 5))
    small = shrink(inst, _too_many_points)
    assert len(small.space) == 3 and _too_many_points(small)
    # simplification keeps the T0 condition of the original space
    assert small.space.is_t0() and valid(small.space, True)
    again = shrink(small, _too_many_points)
    assert again.space.dist == small.space.dist
    with pytest.raises(ValueError):
        shrink(LabInstance(gen_space(5, 2)), _too_many_points)


def test_planted_bug_is_found_shrunk_and_replayed(monkeypatch):
    base = SUITES["lemma22"]

    def buggy(inst):
        # claims every space has at most two points
        return "planted" if len(inst.space) > 2 else None

    monkeypatch.setitem(SUITES, "planted", Suite("planted", base.draw, base.classify, buggy))
    rep = run_suite("planted", trials=20, seed=0, size_bounds=(3, 6))
    assert rep.counterexamples and not rep.ok
    for ce in rep.counterexamples:
        assert len(ce.instance.space) == 3
        assert len(ce.original.space) >= len(ce.instance.space)
        assert replay(ce.instance, "planted") == "planted"
        doc = ce.to_dict()
        assert doc["message"] == "planted"

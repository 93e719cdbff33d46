from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

import numpy as np

import oracle
from quasistart.lab import corpus, gen_space, random_set_map
from quasistart.multimaps import (
    SetValuedMap,
    SingleMap,
    approx_value,
    approx_value_single,
    classify_all,
    classify_point,
    end_value,
    eps_points,
    level_sets,
    mix_value,
    start_value,
    value_table,
)
from quasistart.space import StructuralError


@pytest.fixture
def e27():
    return corpus("example27")


@pytest.fixture
def r21():
    return corpus("remark21")


def test_empty_image_rejected():
    with pytest.raises(StructuralError, match="empty image"):
        SetValuedMap({"a": []})


def test_map_totality(e27):
    with pytest.raises(StructuralError):
        SetValuedMap({"0": ["1"]}).validate(e27.space)
    with pytest.raises(StructuralError):
        SetValuedMap({"0": ["9"], "1": ["0"], "2": ["0"]}).validate(e27.space)
    with pytest.raises(StructuralError):
        SingleMap({"0": "0", "1": "0", "2": "0"}, {("0", "0"): 1}).validate(e27.space)


def test_example27_classification(e27):
    pc = classify_point(e27.space, e27.F, "0")
    assert pc.startpoint and not pc.endpoint and not pc.fixed
    rows = classify_all(e27.space, e27.F)
    assert [r.start_value for r in rows] == [0, 1, 2]
    assert [r.end_value for r in rows] == [2, 2, 1]
    assert [r.point for r in rows if r.startpoint] == ["0"]
    assert not any(r.endpoint for r in rows)


def test_remark21_classification(r21):
    pc = classify_point(r21.space, r21.F, "1")
    assert pc.fixed and pc.start_value == 1 and not pc.startpoint
    rows = classify_all(r21.space, r21.F)
    assert [r.point for r in rows if r.startpoint] == ["0"]
    assert [r.point for r in rows if r.endpoint] == ["1"]
    assert [r.point for r in rows if r.fixed] == ["0", "1"]


def test_example36_startpoint():
    inst = corpus("example36")
    assert classify_point(inst.space, inst.F, "1/3").startpoint
    assert [start_value(inst.space, inst.F, x) for x in inst.space.labels] == [
        Fraction(2, 3), Fraction(1, 6), 0
    ]


def test_eps_points(e27):
    assert eps_points(e27.space, e27.F, Fraction(1, 2), "end") == frozenset()
    assert eps_points(e27.space, e27.F, Fraction(1, 2), "start") == {"0"}
    for bad in (0, 1, Fraction(3, 2)):
        with pytest.raises(ValueError):
            eps_points(e27.space, e27.F, bad)
    with pytest.raises(ValueError):
        eps_points(e27.space, e27.F, Fraction(1, 2), "mix")


@pytest.mark.parametrize("N", [5, 12])
def test_eps_points_harmonic(N):
    inst = corpus("example28", N)
    values = value_table(inst.space, inst.F, "start")
    for k in range(1, N + 1):
        assert values[str(Fraction(1, k))] == Fraction(1, k) - Fraction(1, N)
    for eps in (Fraction(1, 2), Fraction(1, 4), Fraction(1, N + 3)):
        E = eps_points(inst.space, inst.F, eps, values=values)
        assert E == eps_points(inst.space, inst.F, eps)
        assert all(str(Fraction(1, k)) in E for k in range(1, N + 1) if Fraction(1, k) < eps)


def test_approx_values(e27, r21):
    s = approx_value(e27.space, e27.F, "start")
    assert (s.value, s.witness, s.has_property) == (0, "0", True)
    e = approx_value(e27.space, e27.F, "end")
    assert (e.value, e.witness) == (1, "2")
    with pytest.raises(ValueError):
        approx_value(e27.space, e27.F, "other")
    ident = SetValuedMap({x: [x] for x in e27.space.labels})
    assert approx_value(e27.space, ident, "mix").value == 0


def test_mix_property_needs_one_point_not_two(r21):
    # Both one-sided properties hold, each at a different point, yet no
    # single point has mix value 0.
    space, F = r21.space, r21.F
    assert approx_value(space, F, "start").value == 0
    assert approx_value(space, F, "end").value == 0
    assert approx_value(space, F, "mix").value == 1


def test_approx_value_single(r21):
    space = r21.space
    swap = SingleMap({"0": "1", "1": "0"})
    assert approx_value_single(space, swap, "start").value == 0
    ident = SingleMap({"0": "0", "1": "1"})
    assert approx_value_single(space, ident, "start").value == 0
    assert approx_value_single(space, ident, "end").value == 0
    with pytest.raises(ValueError):
        approx_value_single(space, ident, "mix")


def test_level_sets(e27):
    lv = level_sets(e27.space, e27.F, 4)
    assert lv.core == frozenset() and lv[1] == frozenset()
    assert lv.diameters == (None,) * 4
    sink = SetValuedMap({x: ["2"] for x in e27.space.labels})
    lv2 = level_sets(e27.space, sink, 3)
    assert all("2" in lv2[n] for n in (1, 2, 3)) and lv2.core == {"2"}
    with pytest.raises(ValueError):
        level_sets(e27.space, sink, 0)


def test_single_map_helpers():
    f = SingleMap({"a": "b", "b": "b"}, {("a", "a"): 1, ("a", "b"): 0, ("b", "a"): 2, ("b", "b"): 1})
    assert f.transposed().a("a", "b") == 2
    assert SetValuedMap.from_single(f)["a"] == {"b"}


instances = st.builds(
    lambda seed, n, t0, style: _inst(seed, n, t0, style),
    st.integers(0, 10**6),
    st.integers(1, 5),
    st.booleans(),
    st.sampled_from(["uniform", "constant", "sink", "single", "clustered"]),
)


def _inst(seed, n, t0, style):
    space = gen_space(seed, n, t0=t0)
    F = random_set_map(np.random.default_rng(seed + 1), space, style)
    return space, F


@settings(max_examples=80, deadline=None)
@given(instances)
def test_values_match_oracle(inst):
    space, F = inst
    d = oracle.dist_table(space.labels, space.dist)
    table = {x: sorted(F[x]) for x in space.labels}
    for x in space.labels:
        assert start_value(space, F, x) == oracle.start_value(d, table, x)
        assert end_value(space, F, x) == oracle.end_value(d, table, x)
        assert mix_value(space, F, x) == oracle.mix_value(d, table, x)
        assert mix_value(space, F, x) == max(start_value(space, F, x), end_value(space, F, x))


@settings(max_examples=80, deadline=None)
@given(instances)
def test_lemma22_23_and_fixed_points(inst):
    space, F = inst
    for pc in classify_all(space, F):
        for side, flag in (("start", pc.startpoint), ("end", pc.endpoint)):
            thresholds = [Fraction(1, k) for k in (2, 10, 10**6)]
            inside = all(pc.point in eps_points(space, F, e, side) for e in thresholds)
            value = pc.start_value if side == "start" else pc.end_value
            if flag:
                assert inside
            else:
                # an epsilon at or below the value excludes the point
                eps = min(value, Fraction(1, 2))
                assert pc.point not in eps_points(space, F, eps, side)
        if pc.startpoint and pc.endpoint and space.is_t0():
            assert pc.fixed and F[pc.point] == {pc.point}


@settings(max_examples=80, deadline=None)
@given(instances, st.integers(1, 6))
def test_approx_and_levels(inst, n_max):
    space, F = inst
    mix = approx_value(space, F, "mix").value
    if mix == 0:
        assert approx_value(space, F, "start").value == 0
        assert approx_value(space, F, "end").value == 0
    s = approx_value(space, F, "start")
    assert all(s.value <= start_value(space, F, x) for x in space.labels)
    assert start_value(space, F, s.witness) == s.value
    lv = level_sets(space, F, n_max)
    for n in range(1, n_max):
        assert lv[n + 1] <= lv[n]
    assert lv.core <= lv[n_max]

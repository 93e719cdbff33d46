from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from quasistart.functions import HEURISTIC_RATIO, FunctionSpec, certify, certify_comparison


def harmonic_table(K=100):
    """t / (1 + t) sampled at t = 1/k, so that the iterates from 1 are 1/(n+1)."""
    pts = [(0, 0)] + [(Fraction(1, k), Fraction(1, k + 1)) for k in range(K, 0, -1)]
    return FunctionSpec.table(pts)


def test_linear_half():
    g = FunctionSpec.linear("1/2")
    cert = certify(g)
    assert cert.comparison and cert.contraction_modulus and not cert.summable_heuristic
    for n in range(6):
        assert g.iterate(3, n) == Fraction(3, 2**n)


@pytest.mark.parametrize("c", [1, Fraction(3, 2), -1])
def test_linear_out_of_range_rejected(c):
    with pytest.raises(ValueError):
        FunctionSpec.linear(c)


def test_harmonic_table_is_not_certified():
    g = harmonic_table()
    assert [g.iterate(1, n) for n in range(1, 8)] == [Fraction(1, n + 1) for n in range(1, 8)]
    cert = certify_comparison(g, sample_ts=[1], horizon=50)
    assert cert.nondecreasing and cert.summable_heuristic
    assert not cert.series_summable and not cert.comparison and not cert.comparison_heuristic
    # partial sum of 1/(n+1), n = 1..50
    (t, total), = cert.partial_sums
    assert t == 1 and total == sum(Fraction(1, n + 1) for n in range(1, 51))


def test_fast_table_passes_heuristic_only():
    g = FunctionSpec.table([(0, 0), (1, Fraction(1, 3)), (2, Fraction(1, 2))])
    cert = certify(g)
    assert cert.comparison_heuristic and not cert.comparison
    assert cert.contraction_modulus
    assert g(5) == Fraction(1, 2)  # constant after the last breakpoint
    assert g(Fraction(3, 2)) == Fraction(5, 12)


def test_table_validation():
    with pytest.raises(ValueError):
        FunctionSpec.table([(1, 0)])
    with pytest.raises(ValueError):
        FunctionSpec.table([(0, 0), (0, 1)])
    with pytest.raises(ValueError):
        FunctionSpec.table([(0, 0), (1, -1)])
    assert not certify(FunctionSpec.table([(0, 0), (1, 1)])).below_identity
    assert not certify(FunctionSpec.table([(0, 0), (1, Fraction(1, 2)), (2, Fraction(1, 4))])).nondecreasing


def test_power_kinds():
    p1 = FunctionSpec.power("1/3", 1)
    assert certify(p1).comparison
    p2 = FunctionSpec.power("1/3", 2)
    cert = certify(p2)
    assert not cert.comparison and not cert.contraction_modulus
    assert p2(3) == 3
    with pytest.raises(ValueError):
        FunctionSpec.power("1/2", Fraction(3, 2))
    with pytest.raises(ValueError):
        FunctionSpec.power(0, 1)


def test_negative_argument_and_bad_samples():
    with pytest.raises(ValueError):
        FunctionSpec.linear(0)(-1)
    with pytest.raises(ValueError):
        certify_comparison(harmonic_table(5), sample_ts=[0])


def test_heuristic_cutoff_constant():
    assert HEURISTIC_RATIO == Fraction(9, 10)


specs = st.one_of(
    st.builds(lambda n, d: FunctionSpec.linear(Fraction(n, d)), st.integers(0, 8), st.integers(9, 12)),
    st.builds(lambda n, p: FunctionSpec.power(Fraction(n, 4), p), st.integers(1, 8), st.integers(1, 3)),
    st.builds(
        lambda vals: FunctionSpec.table([(0, 0)] + [(i + 1, Fraction(v, 4)) for i, v in enumerate(vals)]),
        st.lists(st.integers(0, 12), min_size=1, max_size=4),
    ),
)


@settings(max_examples=100, deadline=None)
@given(specs, st.integers(0, 40))
def test_round_trip_and_certified_shape(spec, t4):
    assert FunctionSpec.from_dict(spec.to_dict()) == spec
    cert = certify(spec)
    t = Fraction(t4, 4)
    if cert.nondecreasing:
        assert spec(t) <= spec(t + Fraction(1, 4))
    if cert.below_identity and t > 0:
        assert spec(t) < t

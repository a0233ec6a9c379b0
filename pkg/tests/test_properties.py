"""Property-based checks of the unconditional inequalities and exact codecs."""

import json
import math
from fractions import Fraction

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from turan10.certificates import andersson_lower_check, cassels_check, ncs_check
from turan10.evaluator import partition_expansion_check, power_sums_direct
from turan10.tuples import (FloatTuple, RootTuple, normalized, to_float,
                            tuple_from_json, tuple_to_json)

SETTINGS = settings(max_examples=60, deadline=None, derandomize=True)

finite = st.floats(min_value=-3.0, max_value=3.0, allow_nan=False)
angles01 = st.floats(min_value=0.0, max_value=1.0, exclude_max=True,
                     allow_nan=False)


def unimodular(values):
    return FloatTuple(np.exp(2j * np.pi * np.array(values)))


@SETTINGS
@given(st.lists(st.tuples(finite, finite), min_size=1, max_size=12))
def test_cassels_holds_for_any_complex_tuple(pairs):
    z = np.array([complex(a, b) for a, b in pairs])
    assert cassels_check(FloatTuple(z)).passed


@SETTINGS
@given(st.lists(angles01, min_size=1, max_size=12), st.data())
def test_andersson_holds_for_unimodular(values, data):
    t = unimodular(values)
    m = data.draw(st.integers(min_value=1, max_value=t.n))
    assert andersson_lower_check(t, m).passed


@SETTINGS
@given(st.lists(angles01, min_size=1, max_size=10), st.data())
def test_ncs_holds_for_unimodular(values, data):
    t = unimodular(values)
    m = data.draw(st.integers(min_value=t.n, max_value=4 * t.n * t.n))
    assert ncs_check(t, m).passed


@SETTINGS
@given(st.lists(angles01, min_size=2, max_size=6),
       st.integers(min_value=1, max_value=9), st.integers(min_value=1, max_value=9))
def test_partition_identity_m2(values, nu1, nu2):
    ok, residual = partition_expansion_check(unimodular(values), [nu1, nu2])
    assert ok, residual


@SETTINGS
@given(st.integers(min_value=1, max_value=10 ** 6), st.data())
def test_root_tuple_json_round_trip(M, data):
    angles = data.draw(st.lists(st.integers(min_value=0, max_value=M - 1),
                                min_size=1, max_size=16))
    t = RootTuple(M=M, angles=tuple(angles))
    back = tuple_from_json(json.loads(json.dumps(tuple_to_json(t))))
    assert back.M == t.M and back.angles == t.angles


@SETTINGS
@given(st.integers(min_value=2, max_value=5000), st.data())
def test_normalized_preserves_points(M, data):
    angles = data.draw(st.lists(st.integers(min_value=0, max_value=M - 1),
                                min_size=1, max_size=8))
    t = RootTuple(M=M, angles=tuple(angles))
    nt_ = normalized(t)
    assert sorted(Fraction(c, nt_.M) for c in nt_.angles) == \
        sorted(Fraction(c, M) for c in angles)
    g = math.gcd(nt_.M, math.gcd(*nt_.angles) if nt_.angles else 0)
    assert g == 1 or all(c == 0 for c in nt_.angles)


@SETTINGS
@given(st.integers(min_value=2, max_value=500), st.data())
def test_power_sum_period(M, data):
    angles = data.draw(st.lists(st.integers(min_value=0, max_value=M - 1),
                                min_size=1, max_size=6))
    t = RootTuple(M=M, angles=tuple(angles))
    prof = power_sums_direct(t, 1, M + 3)
    for nu in (1, 2, 3):
        assert abs(prof.abs[nu - 1] - prof.abs[M + nu - 1]) <= 1e-8 * t.n


@SETTINGS
@given(st.lists(angles01, min_size=1, max_size=8))
def test_to_float_exactly_unimodular(values):
    M = 997
    t = RootTuple(M=M, angles=tuple(int(v * M) for v in values))
    z = to_float(t).values
    assert np.all(np.abs(np.abs(z) - 1.0) <= 1e-12)

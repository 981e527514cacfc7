import json
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from capstan.errors import ComplexRootError, RootOutsideIntervalError, WeightError
from capstan.weights import (
    FactoredWeight,
    RootWeight,
    log_weight,
    parse_weight_config,
    serialize_weight_config,
    to_root_form,
)

X = (0, 1)          # x
ONE_MINUS_X = (1, -1)  # 1 - x
X_ONE_MINUS_X = (0, 1, -1)  # x(1-x)

# pool of integer polynomials with all roots in [0, 1]
POOL = [X, ONE_MINUS_X, (-1, 2), (-1, 3), (-2, 3), X_ONE_MINUS_X, (1, -4, 4)]


def test_jacobi_conversion():
    fw = FactoredWeight((0.0, 1.0), ((X, 0.195), (ONE_MINUS_X, 0.195)))
    w = to_root_form(fw)
    assert w.zeros == (0.0, 1.0)
    assert w.exponents == (0.195, 0.195)
    assert w.logA == 0.0
    assert math.isclose(w.total_exponent, 0.39, abs_tol=1e-15)


def test_empty_factor_list_is_constant_weight():
    w = to_root_form(FactoredWeight((0.0, 1.0), ()))
    assert w.n_zeros == 0
    assert w.total_exponent == 0.0
    assert w.logA == 0.0


def test_quadratic_factor_splits_roots():
    fw = FactoredWeight((0.0, 1.0), ((X_ONE_MINUS_X, 0.5),))
    w = to_root_form(fw)
    assert w.zeros == (0.0, 1.0)
    assert w.exponents == (0.5, 0.5)
    assert w.logA == 0.0  # |leading coeff| = 1


def test_repeated_root_multiplicity():
    # (2x - 1)^2 carries its root at 1/2 with multiplicity two
    fw = FactoredWeight((0.0, 1.0), (((1, -4, 4), 0.3),))
    w = to_root_form(fw)
    assert w.zeros == (0.5,)
    assert math.isclose(w.exponents[0], 0.6, abs_tol=1e-12)
    assert math.isclose(w.logA, 0.3 * math.log(4), abs_tol=1e-14)


def test_log_weight_values():
    w = RootWeight((0.0, 1.0), 0.0, (0.0, 1.0), (0.195, 0.195))
    assert math.isclose(log_weight(w, 0.5), 0.39 * math.log(0.5), rel_tol=1e-14)
    assert log_weight(w, 0.0) == -math.inf
    assert log_weight(w, 1.0) == -math.inf
    w0 = RootWeight((0.0, 1.0))
    assert log_weight(w0, 0.7) == 0.0


def test_complex_root_rejected():
    with pytest.raises(ComplexRootError):
        to_root_form(FactoredWeight((0.0, 1.0), (((1, 0, 1), 1.0),)))


def test_root_outside_interval_rejected():
    with pytest.raises(RootOutsideIntervalError):
        to_root_form(FactoredWeight((0.0, 1.0), (((-2, 1), 1.0),)))


def test_invalid_weight_constructions():
    with pytest.raises(WeightError):
        FactoredWeight((1.0, 0.0), ())
    with pytest.raises(WeightError):
        FactoredWeight((0.0, 1.0), ((X, 0.0),))
    with pytest.raises(WeightError):
        FactoredWeight((0.0, 1.0), (((5,), 1.0),))  # degree 0
    with pytest.raises(WeightError):
        RootWeight((0.0, 1.0), 0.0, (0.5, 0.5), (1.0, 1.0))
    with pytest.raises(WeightError):
        RootWeight((0.0, 1.0), 0.0, (0.5,), (-1.0,))


@st.composite
def factored_weights(draw):
    count = draw(st.integers(min_value=0, max_value=3))
    factors = []
    for _ in range(count):
        poly = POOL[draw(st.integers(0, len(POOL) - 1))]
        alpha = draw(st.floats(0.05, 4.0, allow_nan=False))
        factors.append((poly, alpha))
    return FactoredWeight((0.0, 1.0), tuple(factors))


@given(factored_weights())
@settings(max_examples=60, deadline=None)
def test_exponent_sum_round_trip(fw):
    w = to_root_form(fw)
    assert abs(w.total_exponent - fw.aggregate_exponent) < 1e-12


@given(factored_weights(), st.integers(0, 2**32 - 1))
@settings(max_examples=40, deadline=None)
def test_pointwise_agreement(fw, seed):
    w = to_root_form(fw)
    rng = np.random.default_rng(seed)
    xs = rng.uniform(0.0, 1.0, size=100)
    for x in xs:
        if any(abs(x - z) < 1e-6 for z in w.zeros):
            continue
        direct = math.exp(fw.log_value(float(x)))
        via_roots = math.exp(log_weight(w, float(x)))
        assert math.isclose(direct, via_roots, rel_tol=1e-10)


@given(
    st.integers(0, len(POOL) - 1),
    st.floats(0.05, 4.0, allow_nan=False),
)
@settings(max_examples=40, deadline=None)
def test_split_factor_merges_back(idx, alpha):
    poly = POOL[idx]
    whole = to_root_form(FactoredWeight((0.0, 1.0), ((poly, alpha),)))
    halves = to_root_form(
        FactoredWeight((0.0, 1.0), ((poly, alpha / 2), (poly, alpha / 2)))
    )
    assert whole.zeros == halves.zeros
    assert np.allclose(whole.exponents, halves.exponents, atol=1e-12)
    assert abs(whole.logA - halves.logA) < 1e-12


def test_endpoint_snapping():
    # root at 1/3 on [1/3 - tiny, 1]: snaps onto the left endpoint
    a = 1.0 / 3.0 + 1e-13
    w = to_root_form(FactoredWeight((a, 1.0), (((-1, 3), 1.0),)))
    assert w.zeros == (a,)


def test_config_parse_and_round_trip():
    text = json.dumps(
        {
            "interval": [0, 1],
            "factors": [
                {"coeffs": [0, 1], "exponent": 0.195},
                {"coeffs": [1, -1], "exponent": "39/200"},
            ],
        }
    )
    fw = parse_weight_config(text)
    assert fw.factors[0][1] == Fraction(39, 200)
    assert fw.factors[0][1] == fw.factors[1][1]
    again = parse_weight_config(serialize_weight_config(fw))
    assert again == fw


def test_config_rejects_unknown_keys():
    with pytest.raises(WeightError):
        parse_weight_config('{"interval": [0, 1], "factors": [], "extra": 1}')
    with pytest.raises(WeightError):
        parse_weight_config(
            '{"interval": [0, 1], "factors": [{"coeffs": [0, 1], "exponent": 1, "x": 2}]}'
        )

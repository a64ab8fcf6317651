"""Series engine: classification, hints, tails, CSV input, null sequences.

Oracles: exact p-series behavior, sum(1/n^2) = pi^2/6, geometric sums, and
hand-built finite term streams.
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from convlab.errors import ParameterError
from convlab.series import (DEFAULT_POLICY, AnalyticHint, EnginePolicy,
                            TermSource, analyze_series, fit_exponent,
                            load_terms_csv, null_sequence_test)


def power_source(p, hint=None):
    return TermSource.from_vectorized(
        lambda ns, p=p: ns.astype(float) ** -p, hint=hint
    )


def test_policy_validation():
    with pytest.raises(ParameterError):
        EnginePolicy(n_max=0)
    with pytest.raises(ParameterError):
        EnginePolicy(exponent_margin=-1.0)
    with pytest.raises(ParameterError):
        EnginePolicy(n_max=10, dyadic_window=8)  # n_max < 2**window


def test_calibration_grid():
    # the engine's headline calibration: D / D / C / C / C
    expected = {0.8: "diverges", 1.0: "diverges", 1.1: "converges",
                1.5: "converges", 2.0: "converges"}
    for p, want in expected.items():
        v = analyze_series(power_source(p))
        assert v.klass == want, f"p={p}: got {v.klass}"


def test_basel_sum_estimate():
    v = analyze_series(power_source(2.0))
    assert v.converges
    assert abs(v.sum_estimate - math.pi ** 2 / 6.0) < 1e-6
    assert v.tail_bound < DEFAULT_POLICY.tail_tolerance


def test_harmonic_diverges_with_fitted_exponent():
    v = analyze_series(power_source(1.0))
    assert v.diverges
    assert abs(v.p_hat - 1.0) < 0.01


def test_geometric_converges():
    v = analyze_series(
        TermSource.from_vectorized(lambda ns: 0.5 ** ns.astype(float))
    )
    assert v.converges
    # oracle: sum 2^-n = 1
    assert abs(v.sum_estimate - 1.0) < 1e-9


def test_blowup_detection():
    v = analyze_series(
        TermSource.from_vectorized(lambda ns: np.full(len(ns), 10.0))
    )
    assert v.diverges
    assert v.evidence["method"] == "partial_sum_blowup"


def test_all_zero_converges():
    v = analyze_series(
        TermSource.from_vectorized(lambda ns: np.zeros(len(ns)))
    )
    assert v.converges
    assert v.sum_estimate == 0.0
    assert v.tail_bound == 0.0


def test_negative_terms_rejected():
    src = TermSource.from_vectorized(lambda ns: -np.ones(len(ns)))
    with pytest.raises(ParameterError):
        src.terms(1, 10)


def test_tiny_negative_noise_clamped():
    src = TermSource.from_vectorized(lambda ns: np.full(len(ns), -1e-14))
    assert np.all(src.terms(1, 10) == 0.0)


def test_hint_eventually_zero():
    src = TermSource.from_vectorized(
        lambda ns: (ns <= 5).astype(float),
        hint=AnalyticHint("eventually_zero", start=5),
    )
    v = analyze_series(src)
    assert v.converges
    assert v.tail_bound == 0.0
    assert abs(v.sum_estimate - 5.0) < 1e-12


def test_hint_eventually_constant_diverges():
    src = TermSource.from_vectorized(
        lambda ns: np.ones(len(ns)),
        hint=AnalyticHint("eventually_constant", level=1.0),
    )
    assert analyze_series(src).diverges


def test_hint_power_boundary():
    assert analyze_series(
        power_source(1.0, hint=AnalyticHint("power", exponent=1.0))
    ).diverges
    v = analyze_series(
        power_source(1.2, hint=AnalyticHint("power", exponent=1.2))
    )
    assert v.converges
    # oracle: zeta(1.2)
    from scipy.special import zeta

    assert abs(v.sum_estimate - zeta(1.2)) < 1e-5


def test_hint_validation():
    with pytest.raises(ParameterError):
        AnalyticHint("power")
    with pytest.raises(ParameterError):
        AnalyticHint("nope")
    with pytest.raises(ParameterError):
        AnalyticHint("eventually_constant")


@given(p=st.floats(1.3, 3.0))
@settings(max_examples=30, deadline=None)
def test_supercritical_powers_converge(p):
    assert analyze_series(power_source(p)).converges


@given(p=st.floats(0.2, 0.9))
@settings(max_examples=30, deadline=None)
def test_subcritical_powers_diverge(p):
    assert analyze_series(power_source(p)).diverges


def test_fit_exponent():
    p_hat, ci = fit_exponent(power_source(1.7))
    assert abs(p_hat - 1.7) < 1e-6
    assert ci < 1e-3


def test_sum_estimate_nondecreasing_in_horizon():
    src = power_source(2.0)
    est_small = analyze_series(src, EnginePolicy(n_max=10_000)).sum_estimate
    est_big = analyze_series(src, EnginePolicy(n_max=1_000_000)).sum_estimate
    assert est_big + 1e-12 >= est_small


def test_determinism():
    a = analyze_series(power_source(1.5)).to_dict()
    b = analyze_series(power_source(1.5)).to_dict()
    assert a == b


def test_null_sequence_basic():
    assert null_sequence_test(power_source(1.0)).tends_to_zero
    v = null_sequence_test(
        TermSource.from_vectorized(lambda ns: np.full(len(ns), 0.5))
    )
    assert v.klass == "stays_above"
    assert abs(v.level - 0.5) < 1e-12


def test_null_sequence_hints():
    assert null_sequence_test(
        power_source(0.3, hint=AnalyticHint("power", exponent=0.3))
    ).tends_to_zero
    v = null_sequence_test(
        TermSource.from_vectorized(
            lambda ns: np.ones(len(ns)),
            hint=AnalyticHint("eventually_constant", level=1.0),
        )
    )
    assert v.klass == "stays_above"


def test_from_values_and_length():
    src = TermSource.from_values([1.0, 0.5, 0.25])
    assert src.effective_n_max(DEFAULT_POLICY) == 3
    assert list(src.terms(1, 4)) == [1.0, 0.5, 0.25]
    with pytest.raises(ParameterError):
        TermSource.from_values([])


def test_load_terms_csv(tmp_path):
    path = tmp_path / "terms.csv"
    path.write_text("term\n1.0\n0.5\n\n0.25\n")
    src = load_terms_csv(path)
    assert list(src.terms(1, 4)) == [1.0, 0.5, 0.25]


def test_load_terms_csv_errors(tmp_path):
    bad_num = tmp_path / "bad.csv"
    bad_num.write_text("1.0\nnot-a-number\n")
    with pytest.raises(ParameterError, match="line 2"):
        load_terms_csv(bad_num)
    neg = tmp_path / "neg.csv"
    neg.write_text("1.0\n-0.5\n")
    with pytest.raises(ParameterError, match="negative"):
        load_terms_csv(neg)
    empty = tmp_path / "empty.csv"
    empty.write_text("header\n")
    with pytest.raises(ParameterError, match="no terms"):
        load_terms_csv(empty)


def test_harmonic_csv_roundtrip(tmp_path):
    path = tmp_path / "harmonic.csv"
    path.write_text("\n".join(repr(1.0 / n) for n in range(1, 100_001)))
    v = analyze_series(load_terms_csv(path))
    assert v.diverges
    assert abs(v.p_hat - 1.0) < 0.02


def test_dense_cap_limits_scan():
    calls = []

    def slow(n):
        calls.append(n)
        return 1.0 / n ** 2

    src = TermSource.from_scalar(slow, dense_cap=256)
    analyze_series(src)
    assert max(calls) <= 256
